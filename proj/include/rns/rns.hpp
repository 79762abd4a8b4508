// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rns/moduli.hpp"
#include "rns/numeric.hpp"

#include <span>
#include <string>
#include <vector>

namespace rns
{

/// Residue vector, index-aligned with the moduli of the context it was made in.
struct RnsNumber
{
    std::vector<Nat> residues;

    [[nodiscard]] std::string to_string(char sep = ',') const;

    friend bool operator==(const RnsNumber&, const RnsNumber&) = default;
};

/// CRT constants of one channel: cofactor = M / m_i, inverse = cofactor^-1 mod m_i,
/// weight = cofactor * inverse mod M.
struct CrtWeight
{
    Nat cofactor;
    Nat inverse;
    Nat weight;
};

/// A moduli set with precomputed reverse-conversion weights. Immutable.
class RnsContext
{
public:
    explicit RnsContext(ModuliSet set);

    [[nodiscard]] const ModuliSet& set() const noexcept { return m_set; }
    [[nodiscard]] std::span<const Nat> moduli() const noexcept { return m_set.moduli(); }
    [[nodiscard]] const Nat& dynamic_range() const noexcept { return m_set.dynamic_range(); }
    [[nodiscard]] std::size_t channels() const noexcept { return m_set.size(); }
    [[nodiscard]] std::span<const CrtWeight> weights() const noexcept { return m_weights; }

    /// Right length and every residue below its modulus.
    [[nodiscard]] bool contains(const RnsNumber& r) const;

    /// Throws ValidationError naming the first offending channel.
    void check(const RnsNumber& r) const;

private:
    ModuliSet m_set;
    std::vector<CrtWeight> m_weights;
};

/// Forward conversion of x mod M.
RnsNumber to_rns(const RnsContext& ctx, const Nat& x);

/// Reverse conversion by the weighted CRT sum; the result lies in [0, M).
Nat from_rns(const RnsContext& ctx, const RnsNumber& r);

RnsNumber rns_add(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b);
RnsNumber rns_sub(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b);
RnsNumber rns_mul(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b);

/// Channel-wise a_i^e mod m_i by square-and-multiply.
RnsNumber rns_pow(const RnsContext& ctx, const RnsNumber& a, const Nat& e);

}  // namespace rns
