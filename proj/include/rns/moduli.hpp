// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rns/error.hpp"
#include "rns/numeric.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rns
{

/// A pairwise-coprime moduli set with its cached dynamic range (the product of
/// the moduli). Order is significant and preserved as given.
class ModuliSet
{
public:
    /// Throws ValidationError if any modulus is < 2 or two moduli share a factor.
    explicit ModuliSet(std::vector<Nat> moduli);

    [[nodiscard]] std::span<const Nat> moduli() const noexcept { return m_moduli; }
    [[nodiscard]] std::size_t size() const noexcept { return m_moduli.size(); }
    [[nodiscard]] const Nat& operator[](std::size_t i) const { return m_moduli[i]; }
    [[nodiscard]] const Nat& dynamic_range() const noexcept { return m_range; }

    /// Moduli in ascending order, for order-insensitive comparison.
    [[nodiscard]] std::vector<Nat> sorted() const;

    /// Comma-joined decimal moduli, e.g. "8,9,7".
    [[nodiscard]] std::string to_string(char sep = ',') const;

    friend bool operator==(const ModuliSet& a, const ModuliSet& b) { return a.m_moduli == b.m_moduli; }

private:
    std::vector<Nat> m_moduli;
    Nat m_range;
};

/// Parses "8,9,7" (or any separator) into a list of naturals without checking set validity.
std::vector<Nat> parse_nat_list(std::string_view text, char sep = ',');

struct GenerationRequest
{
    unsigned bits = 0;         ///< Target range is [0, 2^bits - 1].
    unsigned cardinality = 0;  ///< Number of moduli, >= 3.
};

/// Intermediate values of one appended modulus beyond the central triple.
struct ExtraModulus
{
    Nat k;       ///< ceil((2^bits - 1) / product of the moduli chosen so far)
    Nat k_root;  ///< k reduced by the descending root index (k itself for the last one)
    Nat chosen;  ///< smallest value >= max(k_root, 2) coprime to all moduli so far
};

struct GenerationTrace
{
    Nat x;       ///< ceil_nth_root(2^bits - 1, cardinality)
    Nat center;  ///< even middle of the triple after any range-driven increments
    std::vector<ExtraModulus> extras;
};

struct Generated
{
    ModuliSet set;
    GenerationTrace trace;
};

enum class GenerationFailure
{
    CardinalityTooSmall,
    BitsTooSmall,
    ModulusTooSmall,
};

class GenerationError : public ValidationError
{
public:
    GenerationError(GenerationFailure kind, const std::string& what) : ValidationError(what), m_kind{kind} {}

    [[nodiscard]] GenerationFailure kind() const noexcept { return m_kind; }

private:
    GenerationFailure m_kind;
};

/// Bit-efficient moduli set generator.
///
/// The set starts with three consecutive integers {c, c+1, c-1} around an even
/// centre c close to the cardinality-th root of the range. A three-moduli
/// request grows c by 2 until the triple covers the range. Larger requests
/// append one modulus at a time: the remaining range factor k is split evenly
/// over the moduli still missing (by a descending integer root) and the
/// smallest value at or above that share which is coprime to every modulus
/// so far is taken.
Generated find_moduli(const GenerationRequest& req);

enum class Family
{
    Proposed,
    SM1,  ///< {2^n, 2^n + 1, 2^n - 1}
    SM2,  ///< {2^n, 2^n - 1, 2^(n-1) - 1}
    SM3,  ///< {2^(2n) + 1, 2^n + 1, 2^n - 1}
};

struct SchemeId
{
    Family family = Family::Proposed;
    unsigned cardinality = 3;

    static SchemeId proposed(unsigned cardinality) { return {Family::Proposed, cardinality}; }
    static SchemeId sm1() { return {Family::SM1, 3}; }
    static SchemeId sm2() { return {Family::SM2, 3}; }
    static SchemeId sm3() { return {Family::SM3, 3}; }

    /// "proposed4", "sm1", ...
    [[nodiscard]] std::string name() const;

    /// Inverse of name(); std::nullopt for anything unrecognised or a
    /// proposed cardinality below 3.
    static std::optional<SchemeId> parse(std::string_view text);

    friend bool operator==(const SchemeId&, const SchemeId&) = default;
};

/// Smallest member of a fixed three-moduli family whose range covers 2^bits - 1.
/// `family` must not be Family::Proposed. Throws ValidationError for bits < 2.
ModuliSet baseline(Family family, unsigned bits);

/// Proposed or baseline set for a scheme.
ModuliSet generate(const SchemeId& scheme, unsigned bits);

/// Sum of bit_length over the moduli.
unsigned bit_cost(const ModuliSet& set);
unsigned bit_cost(std::span<const Nat> moduli);

struct CoprimeViolation
{
    Nat a;
    Nat b;
    Nat gcd;
};

/// Outcome of checking an arbitrary list of moduli against a bit range.
struct ValidationReport
{
    std::vector<Nat> too_small;  ///< moduli < 2
    std::vector<CoprimeViolation> not_coprime;
    Nat dynamic_range;
    Nat required;   ///< 2^bits - 1
    Nat shortfall;  ///< required - dynamic_range when the range check fails, else 0

    [[nodiscard]] bool moduli_ok() const noexcept { return too_small.empty(); }
    [[nodiscard]] bool coprime_ok() const noexcept { return not_coprime.empty(); }
    [[nodiscard]] bool range_ok() const noexcept { return shortfall == 0; }
    [[nodiscard]] bool ok() const noexcept { return moduli_ok() && coprime_ok() && range_ok(); }

    /// Human-readable, one failed check per line; empty when ok().
    [[nodiscard]] std::string describe() const;
};

ValidationReport validate(std::span<const Nat> moduli, unsigned bits);
ValidationReport validate(const ModuliSet& set, unsigned bits);

}  // namespace rns
