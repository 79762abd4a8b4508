// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bulk conversion and channel arithmetic over many values at once.
//
// The kernels in rns::batch work on 64-bit words and are parallelised with
// OpenMP over values. rns::batch::reference holds the serial versions built
// directly on the exact scalar API in rns.hpp; they are slow and exist so
// the kernels can be checked against them and benchmarked.

#include "rns/rns.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rns::batch
{

/// RnsContext reduced to machine words. Requires the dynamic range to fit in
/// 64 bits (DomainError otherwise).
class FastContext
{
public:
    explicit FastContext(const RnsContext& ctx);

    [[nodiscard]] std::size_t channels() const noexcept { return m_moduli.size(); }
    [[nodiscard]] std::span<const std::uint64_t> moduli() const noexcept { return m_moduli; }
    [[nodiscard]] std::span<const std::uint64_t> weights() const noexcept { return m_weights; }
    [[nodiscard]] std::uint64_t dynamic_range() const noexcept { return m_range; }

private:
    std::vector<std::uint64_t> m_moduli;
    std::vector<std::uint64_t> m_weights;
    std::uint64_t m_range;
};

/// Channel-major residue matrix: row c holds channel c of every value.
class ResidueBlock
{
public:
    ResidueBlock() = default;
    ResidueBlock(std::size_t channels, std::size_t count) : m_channels{channels}, m_count{count}, m_data(channels * count) {}

    [[nodiscard]] std::size_t channels() const noexcept { return m_channels; }
    [[nodiscard]] std::size_t count() const noexcept { return m_count; }

    [[nodiscard]] std::span<std::uint64_t> channel(std::size_t c) { return {m_data.data() + c * m_count, m_count}; }
    [[nodiscard]] std::span<const std::uint64_t> channel(std::size_t c) const
    {
        return {m_data.data() + c * m_count, m_count};
    }

    friend bool operator==(const ResidueBlock&, const ResidueBlock&) = default;

private:
    std::size_t m_channels = 0;
    std::size_t m_count = 0;
    std::vector<std::uint64_t> m_data;
};

enum class Op
{
    Add,
    Sub,
    Mul,
};

ResidueBlock forward(const FastContext& ctx, std::span<const std::uint64_t> values);
std::vector<std::uint64_t> reverse(const FastContext& ctx, const ResidueBlock& block);
ResidueBlock combine(const FastContext& ctx, Op op, const ResidueBlock& a, const ResidueBlock& b);

namespace reference
{
ResidueBlock forward(const RnsContext& ctx, std::span<const std::uint64_t> values);
std::vector<std::uint64_t> reverse(const RnsContext& ctx, const ResidueBlock& block);
ResidueBlock combine(const RnsContext& ctx, Op op, const ResidueBlock& a, const ResidueBlock& b);
}  // namespace reference

}  // namespace rns::batch
