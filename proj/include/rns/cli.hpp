// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rns/moduli.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rns::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_validation = 2,
    exit_fault = 3,
};

struct ComparisonRow
{
    unsigned bits = 0;
    SchemeId scheme;
    std::vector<Nat> moduli;
    unsigned bit_cost = 0;
    std::optional<std::string> note;

    friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// A published table cell that disagrees with what the generation rules produce.
struct Erratum
{
    unsigned bits;
    SchemeId scheme;
    std::vector<Nat> published;  ///< the set as printed in the reference tables
    std::string reason;          ///< why the computed set differs; range failures are appended at runtime
};

std::span<const Erratum> errata();

/// Deviation note for a (bits, scheme) cell, if it is one of the errata.
std::optional<std::string> deviation_note(unsigned bits, const SchemeId& scheme);

/// One row per (bits, scheme), bits-major. Rows are evaluated in parallel.
/// Throws ValidationError if any cell cannot be generated.
std::vector<ComparisonRow> compare(std::span<const unsigned> bits, std::span<const SchemeId> schemes);

inline constexpr std::string_view csv_header = "bits,scheme,cardinality,moduli,bit_cost,note";

std::string render_csv(std::span<const ComparisonRow> rows);

/// Inverse of render_csv. Throws ValidationError on malformed input.
std::vector<ComparisonRow> parse_csv(std::string_view text);

/// Grid with one line per bit width and a (moduli, #bits) column pair per scheme;
/// errata cells are starred and their notes listed underneath.
std::string render_markdown(std::span<const ComparisonRow> rows);

/// Command-line entry point; args excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rns::cli
