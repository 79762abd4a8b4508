// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rns/batch.hpp"

#include "rns/error.hpp"

#include <limits>

namespace rns::batch
{

namespace
{

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add_mod(u64 a, u64 b, u64 m)
{
    return a >= m - b ? a - (m - b) : a + b;
}

inline u64 sub_mod(u64 a, u64 b, u64 m)
{
    return a >= b ? a - b : a + (m - b);
}

inline u64 mul_mod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

void check_shapes(const FastContext& ctx, const ResidueBlock& a)
{
    if (a.channels() != ctx.channels())
        throw ValidationError("residue block has " + std::to_string(a.channels()) + " channels, context has " +
                              std::to_string(ctx.channels()));
}

RnsNumber column(const ResidueBlock& block, std::size_t j)
{
    RnsNumber r;
    r.residues.reserve(block.channels());
    for (std::size_t c = 0; c < block.channels(); ++c)
        r.residues.emplace_back(block.channel(c)[j]);
    return r;
}

void store_column(ResidueBlock& block, std::size_t j, const RnsNumber& r)
{
    for (std::size_t c = 0; c < block.channels(); ++c)
        block.channel(c)[j] = r.residues[c].convert_to<u64>();
}

}  // namespace

FastContext::FastContext(const RnsContext& ctx)
{
    if (ctx.dynamic_range() > std::numeric_limits<u64>::max())
        throw DomainError("dynamic range " + ctx.dynamic_range().str() + " does not fit in 64 bits");
    m_range = ctx.dynamic_range().convert_to<u64>();
    for (const Nat& m : ctx.moduli())
        m_moduli.push_back(m.convert_to<u64>());
    for (const CrtWeight& w : ctx.weights())
        m_weights.push_back(w.weight.convert_to<u64>());
}

ResidueBlock forward(const FastContext& ctx, std::span<const u64> values)
{
    const std::size_t n = values.size();
    const std::size_t channels = ctx.channels();
    const u64 range = ctx.dynamic_range();
    ResidueBlock out(channels, n);
    for (std::size_t c = 0; c < channels; ++c)
    {
        const u64 m = ctx.moduli()[c];
        u64* row = out.channel(c).data();
        const u64* in = values.data();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
            row[j] = in[j] % range % m;
    }
    return out;
}

std::vector<u64> reverse(const FastContext& ctx, const ResidueBlock& block)
{
    check_shapes(ctx, block);
    const std::size_t n = block.count();
    const std::size_t channels = ctx.channels();
    const u64 range = ctx.dynamic_range();
    const u64* weights = ctx.weights().data();
    std::vector<u64> out(n, 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
    {
        u64 acc = 0;
        for (std::size_t c = 0; c < channels; ++c)
            acc = add_mod(acc, mul_mod(block.channel(c)[j], weights[c], range), range);
        out[j] = acc;
    }
    return out;
}

ResidueBlock combine(const FastContext& ctx, Op op, const ResidueBlock& a, const ResidueBlock& b)
{
    check_shapes(ctx, a);
    check_shapes(ctx, b);
    if (a.count() != b.count())
        throw ValidationError("residue blocks differ in length");
    const std::size_t n = a.count();
    ResidueBlock out(ctx.channels(), n);
    for (std::size_t c = 0; c < ctx.channels(); ++c)
    {
        const u64 m = ctx.moduli()[c];
        const u64* x = a.channel(c).data();
        const u64* y = b.channel(c).data();
        u64* z = out.channel(c).data();
        switch (op)
        {
        case Op::Add:
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
                z[j] = add_mod(x[j], y[j], m);
            break;
        case Op::Sub:
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
                z[j] = sub_mod(x[j], y[j], m);
            break;
        case Op::Mul:
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
                z[j] = mul_mod(x[j], y[j], m);
            break;
        }
    }
    return out;
}

namespace reference
{

ResidueBlock forward(const RnsContext& ctx, std::span<const u64> values)
{
    ResidueBlock out(ctx.channels(), values.size());
    for (std::size_t j = 0; j < values.size(); ++j)
        store_column(out, j, to_rns(ctx, Nat{values[j]}));
    return out;
}

std::vector<u64> reverse(const RnsContext& ctx, const ResidueBlock& block)
{
    std::vector<u64> out;
    out.reserve(block.count());
    for (std::size_t j = 0; j < block.count(); ++j)
        out.push_back(from_rns(ctx, column(block, j)).convert_to<u64>());
    return out;
}

ResidueBlock combine(const RnsContext& ctx, Op op, const ResidueBlock& a, const ResidueBlock& b)
{
    if (a.count() != b.count())
        throw ValidationError("residue blocks differ in length");
    ResidueBlock out(ctx.channels(), a.count());
    for (std::size_t j = 0; j < a.count(); ++j)
    {
        const RnsNumber x = column(a, j);
        const RnsNumber y = column(b, j);
        switch (op)
        {
        case Op::Add:
            store_column(out, j, rns_add(ctx, x, y));
            break;
        case Op::Sub:
            store_column(out, j, rns_sub(ctx, x, y));
            break;
        case Op::Mul:
            store_column(out, j, rns_mul(ctx, x, y));
            break;
        }
    }
    return out;
}

}  // namespace reference

}  // namespace rns::batch
