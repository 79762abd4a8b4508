// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rns/numeric.hpp"

#include "rns/error.hpp"

#include <algorithm>

namespace rns
{

namespace
{
void require_nonnegative(const Nat& v, const char* what)
{
    if (v < 0)
        throw DomainError(std::string{what} + " must be nonnegative");
}

// r^n compared against v without computing the full power once it exceeds v.
int compare_power(const Nat& r, unsigned n, const Nat& v)
{
    Nat p = 1;
    for (unsigned i = 0; i < n; ++i)
    {
        p *= r;
        if (p > v)
            return 1;
    }
    return p == v ? 0 : -1;
}
}  // namespace

Nat gcd(const Nat& a, const Nat& b)
{
    require_nonnegative(a, "gcd argument");
    require_nonnegative(b, "gcd argument");
    Nat x = a;
    Nat y = b;
    while (y != 0)
    {
        Nat r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Nat ceil_nth_root(const Nat& v, unsigned n)
{
    if (n == 0)
        throw DomainError("root index must be positive");
    if (v <= 0)
        throw DomainError("radicand must be positive");
    if (n == 1)
        return v;

    // r in (lo, hi]; the invariant is lo^n < v <= hi^n.
    const unsigned bits = bit_length(v);
    Nat lo = 0;
    Nat hi = Nat{1} << ((bits + n - 1) / n);
    while (hi - lo > 1)
    {
        Nat mid = (lo + hi) >> 1;
        if (compare_power(mid, n, v) >= 0)
            hi = std::move(mid);
        else
            lo = std::move(mid);
    }
    return hi;
}

Nat mod_inverse(const Nat& a, const Nat& m)
{
    require_nonnegative(a, "mod_inverse argument");
    if (m < 2)
        throw DomainError("mod_inverse modulus must be at least 2");

    Nat old_r = a % m;
    Nat r = m;
    Nat old_s = 1;
    Nat s = 0;
    while (r != 0)
    {
        const Nat q = old_r / r;
        Nat next_r = old_r - q * r;
        old_r = std::move(r);
        r = std::move(next_r);
        Nat next_s = old_s - q * s;
        old_s = std::move(s);
        s = std::move(next_s);
    }
    if (old_r != 1)
        throw NotInvertibleError(a.str() + " has no inverse modulo " + m.str() + " (gcd " +
                                 old_r.str() + ")");
    Nat inv = old_s % m;
    if (inv < 0)
        inv += m;
    return inv;
}

bool coprime_to_all(const Nat& c, std::span<const Nat> ms)
{
    return std::all_of(ms.begin(), ms.end(), [&](const Nat& m) { return gcd(c, m) == 1; });
}

unsigned bit_length(const Nat& m)
{
    if (m <= 0)
        throw DomainError("bit_length of a non-positive value");
    return static_cast<unsigned>(boost::multiprecision::msb(m)) + 1;
}

Nat ceil_div(const Nat& num, const Nat& den)
{
    if (den <= 0)
        throw DomainError("ceil_div by a non-positive value");
    require_nonnegative(num, "ceil_div numerator");
    return (num + den - 1) / den;
}

Nat all_ones(unsigned bits)
{
    return (Nat{1} << bits) - 1;
}

Nat parse_nat(std::string_view text)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw ValidationError("not an unsigned decimal number: '" + std::string{text} + "'");
    Nat v = 0;
    for (const char ch : text)
        v = v * 10 + (ch - '0');
    return v;
}

}  // namespace rns
