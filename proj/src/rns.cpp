// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rns/rns.hpp"

#include "rns/error.hpp"

namespace rns
{

namespace
{

template <typename Op>
RnsNumber channel_wise(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b, Op op)
{
    ctx.check(a);
    ctx.check(b);
    const auto ms = ctx.moduli();
    RnsNumber out;
    out.residues.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
        out.residues.push_back(op(a.residues[i], b.residues[i], ms[i]));
    return out;
}

Nat pow_mod(Nat base, Nat e, const Nat& m)
{
    Nat result = 1 % m;
    base %= m;
    while (e != 0)
    {
        if (bit_test(e, 0))
            result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return result;
}

}  // namespace

std::string RnsNumber::to_string(char sep) const
{
    std::string out;
    for (std::size_t i = 0; i < residues.size(); ++i)
    {
        if (i != 0)
            out += sep;
        out += residues[i].str();
    }
    return out;
}

RnsContext::RnsContext(ModuliSet set) : m_set{std::move(set)}
{
    const Nat& range = m_set.dynamic_range();
    m_weights.reserve(m_set.size());
    for (const Nat& m : m_set.moduli())
    {
        CrtWeight w;
        w.cofactor = range / m;
        w.inverse = mod_inverse(w.cofactor % m, m);
        w.weight = w.cofactor * w.inverse % range;
        m_weights.push_back(std::move(w));
    }
}

bool RnsContext::contains(const RnsNumber& r) const
{
    const auto ms = moduli();
    if (r.residues.size() != ms.size())
        return false;
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (r.residues[i] < 0 || r.residues[i] >= ms[i])
            return false;
    return true;
}

void RnsContext::check(const RnsNumber& r) const
{
    const auto ms = moduli();
    if (r.residues.size() != ms.size())
        throw ValidationError("residue vector has " + std::to_string(r.residues.size()) + " channels, context has " +
                              std::to_string(ms.size()));
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (r.residues[i] < 0 || r.residues[i] >= ms[i])
            throw ValidationError("residue " + r.residues[i].str() + " out of range for modulus " + ms[i].str());
}

RnsNumber to_rns(const RnsContext& ctx, const Nat& x)
{
    if (x < 0)
        throw DomainError("cannot convert a negative value");
    const Nat reduced = x % ctx.dynamic_range();
    RnsNumber out;
    out.residues.reserve(ctx.channels());
    for (const Nat& m : ctx.moduli())
        out.residues.push_back(reduced % m);
    return out;
}

Nat from_rns(const RnsContext& ctx, const RnsNumber& r)
{
    ctx.check(r);
    Nat sum = 0;
    const auto ws = ctx.weights();
    for (std::size_t i = 0; i < ws.size(); ++i)
        sum += r.residues[i] * ws[i].weight;
    return sum % ctx.dynamic_range();
}

RnsNumber rns_add(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b)
{
    return channel_wise(ctx, a, b, [](const Nat& x, const Nat& y, const Nat& m) -> Nat { return (x + y) % m; });
}

RnsNumber rns_sub(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b)
{
    return channel_wise(ctx, a, b, [](const Nat& x, const Nat& y, const Nat& m) -> Nat { return (x + m - y) % m; });
}

RnsNumber rns_mul(const RnsContext& ctx, const RnsNumber& a, const RnsNumber& b)
{
    return channel_wise(ctx, a, b, [](const Nat& x, const Nat& y, const Nat& m) -> Nat { return x * y % m; });
}

RnsNumber rns_pow(const RnsContext& ctx, const RnsNumber& a, const Nat& e)
{
    ctx.check(a);
    if (e < 0)
        throw DomainError("negative exponent");
    const auto ms = ctx.moduli();
    RnsNumber out;
    out.residues.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
        out.residues.push_back(pow_mod(a.residues[i], e, ms[i]));
    return out;
}

}  // namespace rns
