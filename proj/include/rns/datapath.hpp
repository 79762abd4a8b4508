// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Functional model of a reconfigurable RNS datapath: two forward converters
// (IN1, IN2), an adder, a subtractor and a multiplier whose operands are
// chosen by input multiplexers, and one output multiplexer feeding the
// reverse converter. Each unit registers its result in a latch that keeps its
// value until the unit is next active. A microprogram is the ordered list of
// per-step injections and multiplexer selects.

#include "rns/rns.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rns
{

enum class Source
{
    In1,
    In2,
    Add,
    Sub,
    Mul,
    None,
};

inline constexpr std::size_t latch_count = 5;  ///< every Source except None

/// "IN1", "IN2", "ADD", "SUB", "MUL", "NONE".
std::string_view source_name(Source s);

/// Accepts the five latch names only; NONE is not a readable source.
std::optional<Source> parse_source(std::string_view token);

/// Operand pair of one functional unit. The unit is active iff both sides are set.
struct Route
{
    Source lhs = Source::None;
    Source rhs = Source::None;

    [[nodiscard]] bool active() const noexcept { return lhs != Source::None && rhs != Source::None; }

    friend bool operator==(const Route&, const Route&) = default;
};

/// `$name` reference resolved against the run's bindings.
struct Placeholder
{
    std::string name;

    friend bool operator==(const Placeholder&, const Placeholder&) = default;
};

using Operand = std::variant<Nat, Placeholder>;

struct Step
{
    std::optional<Operand> inject_a;  ///< into converter 1 (IN1)
    std::optional<Operand> inject_b;  ///< into converter 2 (IN2)
    Route add;
    Route sub;
    Route mul;
    Source emit = Source::None;

    friend bool operator==(const Step&, const Step&) = default;
};

struct Microprogram
{
    std::string name;
    std::vector<Step> steps;

    friend bool operator==(const Microprogram&, const Microprogram&) = default;
};

using Latches = std::array<std::optional<RnsNumber>, latch_count>;

struct DatapathState
{
    Latches latches;
    std::vector<Nat> outputs;

    [[nodiscard]] const std::optional<RnsNumber>& latch(Source s) const;
};

/// Executes one step. Injections must already be resolved to values.
/// `step_number` (1-based) only labels a RunFault.
DatapathState step(const RnsContext& ctx, DatapathState state, const Step& s, std::size_t step_number = 1);

using Bindings = std::map<std::string, Nat, std::less<>>;

struct RunResult
{
    std::vector<Nat> outputs;
    std::vector<Latches> trace;  ///< latches after each step; empty unless requested
};

/// Placeholder names used by the program, in first-use order.
std::vector<std::string> placeholders(const Microprogram& prog);

/// Substitutes bindings; throws UnboundPlaceholderError for a missing name.
Microprogram bind(const Microprogram& prog, const Bindings& bindings);

RunResult run(const RnsContext& ctx, const Microprogram& prog, const Bindings& bindings, bool record_trace = false);

/// (X + Y) * Z: add X and Y, inject Z and multiply it by the sum, emit the product.
Microprogram builtin_function1();

/// X^exponent by repeated multiplication, unrolled for the given exponent.
Microprogram builtin_function2(const Nat& exponent);

/// Line-oriented text form:
///
///     PROG <name>
///     STEP [a=<dec|$id>] [b=<dec|$id>] [add=<src>,<src>] [sub=<src>,<src>] [mul=<src>,<src>] [emit=<src>]
///     END
///
/// Blank lines and lines starting with '#' are ignored. Throws ParseError.
Microprogram parse_program(std::string_view text);

/// Canonical text; fields in the order a, b, add, sub, mul, emit; idle units omitted.
std::string render_program(const Microprogram& prog);

/// One line per latch, e.g. "IN1=(4,0,1) IN2=- ADD=- SUB=- MUL=-".
std::string render_latches(const Latches& latches);

}  // namespace rns
