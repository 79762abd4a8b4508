// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rns/moduli.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace rns
{

namespace
{

Nat product(std::span<const Nat> ms)
{
    Nat p = 1;
    for (const Nat& m : ms)
        p *= m;
    return p;
}

void check_structure(std::span<const Nat> ms, ValidationReport& report)
{
    for (const Nat& m : ms)
        if (m < 2)
            report.too_small.push_back(m);
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
        {
            if (ms[i] < 0 || ms[j] < 0)
                continue;
            Nat g = gcd(ms[i], ms[j]);
            if (g != 1)
                report.not_coprime.push_back({ms[i], ms[j], std::move(g)});
        }
}

}  // namespace

ModuliSet::ModuliSet(std::vector<Nat> moduli) : m_moduli{std::move(moduli)}
{
    if (m_moduli.empty())
        throw ValidationError("moduli set is empty");
    ValidationReport report;
    check_structure(m_moduli, report);
    if (!report.moduli_ok() || !report.coprime_ok())
        throw ValidationError(report.describe());
    m_range = product(m_moduli);
}

std::vector<Nat> ModuliSet::sorted() const
{
    std::vector<Nat> out = m_moduli;
    std::sort(out.begin(), out.end());
    return out;
}

std::string ModuliSet::to_string(char sep) const
{
    std::string out;
    for (std::size_t i = 0; i < m_moduli.size(); ++i)
    {
        if (i != 0)
            out += sep;
        out += m_moduli[i].str();
    }
    return out;
}

std::vector<Nat> parse_nat_list(std::string_view text, char sep)
{
    std::vector<Nat> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t end = text.find(sep, start);
        out.push_back(parse_nat(text.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

Generated find_moduli(const GenerationRequest& req)
{
    if (req.cardinality < 3)
        throw GenerationError(GenerationFailure::CardinalityTooSmall,
                              "cardinality must be at least 3, got " + std::to_string(req.cardinality));
    if (req.bits < 2)
        throw GenerationError(GenerationFailure::BitsTooSmall,
                              "bits must be at least 2, got " + std::to_string(req.bits));

    const Nat target = all_ones(req.bits);
    GenerationTrace trace;
    trace.x = ceil_nth_root(target, req.cardinality);
    trace.center = (trace.x % 2 == 0) ? trace.x : trace.x + 1;

    if (req.cardinality == 3)
        while (trace.center * (trace.center + 1) * (trace.center - 1) < target)
            trace.center += 2;

    // center >= 2 always, so only center - 1 can fall below the modulus floor.
    if (trace.center - 1 < 2)
        throw GenerationError(GenerationFailure::ModulusTooSmall,
                              "bits=" + std::to_string(req.bits) + " is too small for " +
                                  std::to_string(req.cardinality) + " moduli: the central triple would contain " +
                                  (trace.center - 1).str());

    std::vector<Nat> chosen{trace.center, trace.center + 1, trace.center - 1};
    Nat covered = chosen[0] * chosen[1] * chosen[2];

    const unsigned extra_count = req.cardinality - 3;
    for (unsigned j = 1; j <= extra_count; ++j)
    {
        ExtraModulus extra;
        extra.k = ceil_div(target, covered);
        // The remaining (extra_count - j + 1) moduli share k; the last one takes k whole.
        const unsigned remaining = extra_count - j + 1;
        extra.k_root = remaining > 1 ? ceil_nth_root(extra.k, remaining) : extra.k;

        Nat candidate = extra.k_root < 2 ? Nat{2} : extra.k_root;
        while (!coprime_to_all(candidate, chosen))
            ++candidate;
        extra.chosen = candidate;

        covered *= candidate;
        chosen.push_back(std::move(candidate));
        trace.extras.push_back(std::move(extra));
    }

    return {ModuliSet{std::move(chosen)}, std::move(trace)};
}

std::string SchemeId::name() const
{
    switch (family)
    {
    case Family::Proposed:
        return "proposed" + std::to_string(cardinality);
    case Family::SM1:
        return "sm1";
    case Family::SM2:
        return "sm2";
    case Family::SM3:
        return "sm3";
    }
    return "?";
}

std::optional<SchemeId> SchemeId::parse(std::string_view text)
{
    if (text == "sm1")
        return sm1();
    if (text == "sm2")
        return sm2();
    if (text == "sm3")
        return sm3();
    constexpr std::string_view prefix = "proposed";
    if (!text.starts_with(prefix))
        return std::nullopt;
    const std::string_view digits = text.substr(prefix.size());
    unsigned n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || n < 3)
        return std::nullopt;
    return proposed(n);
}

ModuliSet baseline(Family family, unsigned bits)
{
    if (family == Family::Proposed)
        throw ValidationError("baseline() needs one of the fixed families sm1, sm2, sm3");
    if (bits < 2)
        throw ValidationError("bits must be at least 2, got " + std::to_string(bits));

    const Nat target = all_ones(bits);
    for (unsigned n = 1;; ++n)
    {
        const Nat p = Nat{1} << n;
        std::vector<Nat> ms;
        switch (family)
        {
        case Family::SM1:
            ms = {p, p + 1, p - 1};
            break;
        case Family::SM2:
            ms = {p, p - 1, (p >> 1) - 1};
            break;
        case Family::SM3:
            ms = {p * p + 1, p + 1, p - 1};
            break;
        case Family::Proposed:
            break;
        }
        if (std::any_of(ms.begin(), ms.end(), [](const Nat& m) { return m < 2; }))
            continue;
        if (product(ms) >= target)
            return ModuliSet{std::move(ms)};
    }
}

ModuliSet generate(const SchemeId& scheme, unsigned bits)
{
    if (scheme.family == Family::Proposed)
        return find_moduli({bits, scheme.cardinality}).set;
    return baseline(scheme.family, bits);
}

unsigned bit_cost(std::span<const Nat> moduli)
{
    unsigned total = 0;
    for (const Nat& m : moduli)
        total += bit_length(m);
    return total;
}

unsigned bit_cost(const ModuliSet& set)
{
    return bit_cost(set.moduli());
}

ValidationReport validate(std::span<const Nat> moduli, unsigned bits)
{
    ValidationReport report;
    check_structure(moduli, report);
    report.dynamic_range = product(moduli);
    report.required = all_ones(bits);
    report.shortfall = report.dynamic_range >= report.required ? Nat{0} : report.required - report.dynamic_range;
    return report;
}

ValidationReport validate(const ModuliSet& set, unsigned bits)
{
    return validate(set.moduli(), bits);
}

std::string ValidationReport::describe() const
{
    std::ostringstream out;
    for (const Nat& m : too_small)
        out << "modulus " << m << " is below 2\n";
    for (const CoprimeViolation& v : not_coprime)
        out << "moduli " << v.a << " and " << v.b << " are not coprime (gcd " << v.gcd << ")\n";
    if (!range_ok())
        out << "dynamic range " << dynamic_range << " is " << shortfall << " short of " << required << "\n";
    std::string text = out.str();
    if (!text.empty())
        text.pop_back();
    return text;
}

}  // namespace rns
