// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace rns
{

/// Exact unbounded integer. Every quantity handled by the library is
/// nonnegative; functions taking a Nat reject negative arguments.
using Nat = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// Greatest common divisor; gcd(0, 0) == 0.
Nat gcd(const Nat& a, const Nat& b);

/// Smallest r with r^n >= v, found by integer bisection.
/// Throws DomainError when v == 0 or n == 0.
Nat ceil_nth_root(const Nat& v, unsigned n);

/// Inverse of a modulo m via extended Euclid, returned in [1, m).
/// Throws DomainError when m < 2 and NotInvertibleError when gcd(a mod m, m) != 1.
Nat mod_inverse(const Nat& a, const Nat& m);

/// True iff c is coprime to every element of ms (vacuously true for an empty list).
bool coprime_to_all(const Nat& c, std::span<const Nat> ms);

/// Number of binary digits of m, i.e. floor(log2 m) + 1. Throws DomainError for m == 0.
unsigned bit_length(const Nat& m);

/// ceil(num / den) for den > 0.
Nat ceil_div(const Nat& num, const Nat& den);

/// 2^bits - 1.
Nat all_ones(unsigned bits);

/// Parses an unsigned decimal literal; throws ValidationError on anything else.
Nat parse_nat(std::string_view text);

inline std::string to_string(const Nat& v) { return v.str(); }

}  // namespace rns
