// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rns/cli.hpp"

#include "rns/datapath.hpp"
#include "rns/error.hpp"
#include "rns/rns.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace rns::cli
{

namespace
{

std::vector<Nat> nats(std::initializer_list<unsigned long> xs)
{
    return {xs.begin(), xs.end()};
}

std::string join(std::span<const Nat> xs, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        if (i != 0)
            out += sep;
        out += xs[i].str();
    }
    return out;
}

// --- CSV ----------------------------------------------------------------

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string{s};
    std::string out = "\"";
    for (const char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
                fields.back() += '"';
                ++i;
            }
            else if (c == '"')
                quoted = false;
            else
                fields.back() += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
            fields.emplace_back();
        else
            fields.back() += c;
    }
    if (quoted)
        throw ValidationError("csv line " + std::to_string(line_no) + ": unterminated quote");
    return fields;
}

unsigned parse_unsigned(std::string_view text, std::string_view what)
{
    const Nat v = parse_nat(text);
    if (v > std::numeric_limits<unsigned>::max())
        throw ValidationError(std::string{what} + " out of range: " + std::string{text});
    return v.convert_to<unsigned>();
}

// --- command helpers ----------------------------------------------------

struct UsageError : Error
{
    using Error::Error;
};

std::vector<unsigned> parse_bits_list(std::string_view text)
{
    if (text.empty())
        throw UsageError("--bits needs at least one value");
    std::vector<unsigned> out;
    try
    {
        for (const Nat& v : parse_nat_list(text))
        {
            if (v > 4096)
                throw UsageError("bit width " + v.str() + " is too large");
            out.push_back(v.convert_to<unsigned>());
        }
    }
    catch (const ValidationError& e)
    {
        throw UsageError(std::string{"--bits: "} + e.what());
    }
    return out;
}

std::vector<SchemeId> parse_scheme_list(std::string_view text)
{
    if (text.empty())
        throw UsageError("--schemes needs at least one value");
    std::vector<SchemeId> out;
    std::size_t start = 0;
    while (true)
    {
        const auto end = text.find(',', start);
        const std::string_view name = text.substr(start, end == std::string_view::npos ? end : end - start);
        const auto scheme = SchemeId::parse(name);
        if (!scheme)
            throw UsageError("unknown scheme '" + std::string{name} + "' (expected proposed<N> with N >= 3, sm1, sm2 or sm3)");
        out.push_back(*scheme);
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

std::vector<Nat> parse_list_or_usage(std::string_view text, std::string_view flag)
{
    try
    {
        auto xs = parse_nat_list(text);
        if (xs.empty())
            throw UsageError(std::string{flag} + " needs at least one value");
        return xs;
    }
    catch (const ValidationError& e)
    {
        throw UsageError(std::string{flag} + ": " + e.what());
    }
}

RnsContext context_from(std::string_view moduli_text)
{
    // Malformed numbers are usage errors; a well-formed but invalid set is a
    // ValidationError raised by ModuliSet.
    return RnsContext{ModuliSet{parse_list_or_usage(moduli_text, "--moduli")}};
}

Bindings parse_bindings(std::string_view text)
{
    Bindings out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true)
    {
        const auto end = text.find(',', start);
        const std::string_view item = text.substr(start, end == std::string_view::npos ? end : end - start);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw UsageError("malformed binding '" + std::string{item} + "', expected NAME=value");
        try
        {
            out[std::string{item.substr(0, eq)}] = parse_nat(item.substr(eq + 1));
        }
        catch (const ValidationError& e)
        {
            throw UsageError("binding '" + std::string{item} + "': " + e.what());
        }
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

// --- subcommands --------------------------------------------------------

struct GenArgs
{
    unsigned bits = 0;
    unsigned count = 0;
    bool trace = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out)
{
    const Generated g = find_moduli({a.bits, a.count});
    out << "moduli: " << g.set.to_string() << '\n';
    out << "bits: " << bit_cost(g.set) << '\n';
    out << "dynamic_range: " << g.set.dynamic_range() << '\n';
    if (a.trace)
    {
        out << "x: " << g.trace.x << '\n';
        out << "center: " << g.trace.center << '\n';
        for (std::size_t i = 0; i < g.trace.extras.size(); ++i)
        {
            const ExtraModulus& e = g.trace.extras[i];
            out << "k" << i + 1 << ": k=" << e.k << " k_root=" << e.k_root << " chosen=" << e.chosen << '\n';
        }
    }
    return exit_ok;
}

struct CompareArgs
{
    std::string bits;
    std::string schemes;
    std::string format = "csv";
};

int cmd_compare(const CompareArgs& a, std::ostream& out)
{
    const auto bits = parse_bits_list(a.bits);
    const auto schemes = parse_scheme_list(a.schemes);
    const auto rows = compare(bits, schemes);
    out << (a.format == "markdown" ? render_markdown(rows) : render_csv(rows));
    return exit_ok;
}

struct ConvertArgs
{
    std::string moduli;
    std::optional<std::string> value;
    std::optional<std::string> residues;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out, std::ostream& err)
{
    const RnsContext ctx = context_from(a.moduli);
    if (a.value)
    {
        Nat x;
        try
        {
            x = parse_nat(*a.value);
        }
        catch (const ValidationError& e)
        {
            throw UsageError(std::string{"--value: "} + e.what());
        }
        if (x >= ctx.dynamic_range())
            err << "warning: value " << x << " is not below the dynamic range " << ctx.dynamic_range()
                << "; converting " << x % ctx.dynamic_range() << '\n';
        out << to_rns(ctx, x).to_string() << '\n';
        return exit_ok;
    }
    RnsNumber r{parse_list_or_usage(a.residues.value_or(""), "--residues")};
    out << from_rns(ctx, r) << '\n';
    return exit_ok;
}

struct RunArgs
{
    std::string program;
    std::string builtin;
    std::string moduli;
    std::string bind;
    bool trace = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read program file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_run(const RunArgs& a, std::ostream& out)
{
    Bindings bindings = parse_bindings(a.bind);
    Microprogram prog;
    if (!a.builtin.empty())
    {
        if (a.builtin == "function1")
            prog = builtin_function1();
        else if (a.builtin == "function2")
        {
            const auto e = bindings.find("E");
            if (e == bindings.end())
                throw UnboundPlaceholderError("E");
            if (e->second > 1'000'000)
                throw UsageError("exponent E=" + e->second.str() + " exceeds the unrolling limit of 1000000");
            prog = builtin_function2(e->second);
        }
        else
            throw UsageError("unknown builtin '" + a.builtin + "' (expected function1 or function2)");
    }
    else
    {
        try
        {
            prog = parse_program(read_file(a.program));
        }
        catch (const ParseError& e)
        {
            throw UsageError(a.program + ": " + e.what());
        }
    }

    const RnsContext ctx = context_from(a.moduli);
    const RunResult result = run(ctx, prog, bindings, a.trace);
    for (std::size_t i = 0; i < result.trace.size(); ++i)
        out << "step " << i + 1 << ": " << render_latches(result.trace[i]) << '\n';
    for (const Nat& v : result.outputs)
        out << v << '\n';
    return exit_ok;
}

}  // namespace

std::span<const Erratum> errata()
{
    static const std::vector<Erratum> table{
        {32, SchemeId::proposed(5), nats({86, 87, 85, 89, 77}),
         "83 >= k_root 83 is already coprime to 86,87,85 so k1 = 83 and then k2 = 89; same bit cost"},
        {24, SchemeId::proposed(3), nats({256, 257, 255}),
         "the triple must cover 2^24-1 so the centre moves from 256 to 258"},
        {32, SchemeId::sm2(), nats({4096, 4097, 2047}),
         "4097 is not 2^n-1; the family member with n=12 is (4096,4095,2047)"},
    };
    return table;
}

std::optional<std::string> deviation_note(unsigned bits, const SchemeId& scheme)
{
    for (const Erratum& e : errata())
    {
        if (e.bits != bits || !(e.scheme == scheme))
            continue;
        std::string note = "published (" + join(e.published, ',') + ") " + std::to_string(bit_cost(e.published)) +
                           " bits differs: " + e.reason;
        const ValidationReport report = validate(e.published, bits);
        if (!report.range_ok())
            note += " (" + report.dynamic_range.str() + " is " + report.shortfall.str() + " short of " +
                    report.required.str() + ")";
        return note;
    }
    return std::nullopt;
}

std::vector<ComparisonRow> compare(std::span<const unsigned> bits, std::span<const SchemeId> schemes)
{
    const std::size_t n = bits.size() * schemes.size();
    std::vector<ComparisonRow> rows(n);
    std::vector<std::exception_ptr> failures(n);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    {
        const unsigned b = bits[static_cast<std::size_t>(i) / schemes.size()];
        const SchemeId& s = schemes[static_cast<std::size_t>(i) % schemes.size()];
        try
        {
            const ModuliSet set = generate(s, b);
            ComparisonRow& row = rows[static_cast<std::size_t>(i)];
            row.bits = b;
            row.scheme = s;
            row.moduli.assign(set.moduli().begin(), set.moduli().end());
            row.bit_cost = bit_cost(set);
            row.note = deviation_note(b, s);
        }
        catch (...)
        {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }

    for (const auto& f : failures)
        if (f)
            std::rethrow_exception(f);
    return rows;
}

std::string render_csv(std::span<const ComparisonRow> rows)
{
    std::string out{csv_header};
    out += '\n';
    for (const ComparisonRow& r : rows)
    {
        out += std::to_string(r.bits) + ',' + r.scheme.name() + ',' + std::to_string(r.moduli.size()) + ',' +
               join(r.moduli, ';') + ',' + std::to_string(r.bit_cost) + ',' + csv_field(r.note.value_or("")) + '\n';
    }
    return out;
}

std::vector<ComparisonRow> parse_csv(std::string_view text)
{
    std::vector<ComparisonRow> rows;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (pos < text.size())
    {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (!header_seen)
        {
            if (line != csv_header)
                throw ValidationError("csv line 1: unexpected header '" + std::string{line} + "'");
            header_seen = true;
            continue;
        }

        const auto f = split_csv_line(line, line_no);
        if (f.size() != 6)
            throw ValidationError("csv line " + std::to_string(line_no) + ": expected 6 fields, got " +
                                  std::to_string(f.size()));
        ComparisonRow row;
        row.bits = parse_unsigned(f[0], "bits");
        const auto scheme = SchemeId::parse(f[1]);
        if (!scheme)
            throw ValidationError("csv line " + std::to_string(line_no) + ": unknown scheme '" + f[1] + "'");
        row.scheme = *scheme;
        row.moduli = parse_nat_list(f[3], ';');
        if (parse_unsigned(f[2], "cardinality") != row.moduli.size())
            throw ValidationError("csv line " + std::to_string(line_no) + ": cardinality does not match moduli");
        row.bit_cost = parse_unsigned(f[4], "bit_cost");
        if (!f[5].empty())
            row.note = f[5];
        rows.push_back(std::move(row));
    }
    if (!header_seen)
        throw ValidationError("csv input has no header");
    return rows;
}

std::string render_markdown(std::span<const ComparisonRow> rows)
{
    std::vector<unsigned> bit_order;
    std::vector<SchemeId> scheme_order;
    std::map<std::pair<unsigned, std::string>, const ComparisonRow*> cells;
    for (const ComparisonRow& r : rows)
    {
        if (std::find(bit_order.begin(), bit_order.end(), r.bits) == bit_order.end())
            bit_order.push_back(r.bits);
        if (std::find(scheme_order.begin(), scheme_order.end(), r.scheme) == scheme_order.end())
            scheme_order.push_back(r.scheme);
        cells[{r.bits, r.scheme.name()}] = &r;
    }

    std::ostringstream out;
    out << "| N |";
    for (const SchemeId& s : scheme_order)
        out << ' ' << s.name() << " | #bits |";
    out << "\n|---|";
    for (std::size_t i = 0; i < scheme_order.size(); ++i)
        out << "---|---|";
    out << '\n';

    std::vector<const ComparisonRow*> noted;
    for (const unsigned b : bit_order)
    {
        out << "| " << b << " |";
        for (const SchemeId& s : scheme_order)
        {
            const auto it = cells.find({b, s.name()});
            if (it == cells.end())
            {
                out << " | |";
                continue;
            }
            const ComparisonRow& r = *it->second;
            out << " (" << join(r.moduli, ',') << ')' << (r.note ? "*" : "") << " | " << r.bit_cost << " |";
            if (r.note)
                noted.push_back(&r);
        }
        out << '\n';
    }
    if (!noted.empty())
    {
        out << '\n';
        for (const ComparisonRow* r : noted)
            out << "* N=" << r->bits << ' ' << r->scheme.name() << ": " << *r->note << '\n';
    }
    return out.str();
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Residue number system toolkit: moduli generation, conversion and datapath simulation", "rnskit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a bit-efficient moduli set");
    gen_cmd->add_option("--bits", gen.bits, "Bit width N of the range [0, 2^N - 1]")->required();
    gen_cmd->add_option("--count", gen.count, "Number of moduli (>= 3)")->required();
    gen_cmd->add_flag("--trace", gen.trace, "Print the generation intermediates");

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "Tabulate bit costs of several schemes");
    cmp_cmd->add_option("--bits", cmp.bits, "Comma-separated bit widths")->required();
    cmp_cmd->add_option("--schemes", cmp.schemes, "Comma-separated: proposed3..proposed6, sm1, sm2, sm3")->required();
    cmp_cmd->add_option("--format", cmp.format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));

    ConvertArgs conv;
    auto* conv_cmd = app.add_subcommand("convert", "Forward or reverse conversion");
    conv_cmd->add_option("--moduli", conv.moduli, "Comma-separated moduli")->required();
    auto* value_opt = conv_cmd->add_option("--value", conv.value, "Integer to convert to residues");
    auto* residues_opt = conv_cmd->add_option("--residues", conv.residues, "Comma-separated residues to convert back");
    value_opt->excludes(residues_opt);

    RunArgs runa;
    auto* run_cmd = app.add_subcommand("run", "Execute a datapath microprogram");
    auto* prog_opt = run_cmd->add_option("--program", runa.program, "Program text file");
    auto* builtin_opt = run_cmd->add_option("--builtin", runa.builtin, "function1 or function2");
    prog_opt->excludes(builtin_opt);
    run_cmd->add_option("--moduli", runa.moduli, "Comma-separated moduli")->required();
    run_cmd->add_option("--bind", runa.bind, "Comma-separated NAME=value bindings");
    run_cmd->add_flag("--trace", runa.trace, "Print latch contents after every step");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try
    {
        app.parse(argv);
        if (run_cmd->parsed() && prog_opt->count() + builtin_opt->count() != 1)
            throw CLI::ValidationError("run", "exactly one of --program or --builtin is required");
        if (conv_cmd->parsed() && value_opt->count() + residues_opt->count() != 1)
            throw CLI::ValidationError("convert", "exactly one of --value or --residues is required");
    }
    catch (const CLI::Error& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (gen_cmd->parsed())
            return cmd_gen(gen, out);
        if (cmp_cmd->parsed())
            return cmd_compare(cmp, out);
        if (conv_cmd->parsed())
            return cmd_convert(conv, out, err);
        return cmd_run(runa, out);
    }
    catch (const UsageError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const UnboundPlaceholderError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const RunFault& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_fault;
    }
    catch (const ValidationError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
}

}  // namespace rns::cli
