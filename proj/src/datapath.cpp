// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rns/datapath.hpp"

#include "rns/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rns
{

namespace
{

constexpr std::array<Source, latch_count> latch_sources{Source::In1, Source::In2, Source::Add, Source::Sub, Source::Mul};

std::size_t slot(Source s)
{
    return static_cast<std::size_t>(s);
}

const Nat& resolved(const Operand& op)
{
    if (const auto* p = std::get_if<Placeholder>(&op))
        throw UnboundPlaceholderError(p->name);
    return std::get<Nat>(op);
}

const RnsNumber& read(const Latches& latches, Source s, std::size_t step_number)
{
    const auto& latch = latches[slot(s)];
    if (!latch)
        throw RunFault(step_number, std::string{source_name(s)});
    return *latch;
}

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size())
    {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t')
            ++i;
        if (i > start)
            out.push_back(s.substr(start, i - start));
    }
    return out;
}

Operand parse_operand(std::string_view value, std::size_t line)
{
    if (value.starts_with('$'))
    {
        const std::string_view id = value.substr(1);
        if (!is_identifier(id))
            throw ParseError(line, "malformed placeholder '" + std::string{value} + "'");
        return Placeholder{std::string{id}};
    }
    try
    {
        return parse_nat(value);
    }
    catch (const ValidationError&)
    {
        throw ParseError(line, "malformed value '" + std::string{value} + "'");
    }
}

Source parse_src(std::string_view token, std::size_t line)
{
    const auto s = parse_source(token);
    if (!s)
        throw ParseError(line, "unknown source '" + std::string{token} + "'");
    return *s;
}

Route parse_route(std::string_view key, std::string_view value, std::size_t line)
{
    const auto comma = value.find(',');
    if (comma == std::string_view::npos || value.find(',', comma + 1) != std::string_view::npos)
        throw ParseError(line, "field '" + std::string{key} + "' needs exactly two sources, got '" +
                                   std::string{value} + "'");
    return {parse_src(value.substr(0, comma), line), parse_src(value.substr(comma + 1), line)};
}

Step parse_step(const std::vector<std::string_view>& tokens, std::size_t line)
{
    Step s;
    std::vector<std::string_view> seen;
    for (std::size_t i = 1; i < tokens.size(); ++i)
    {
        const std::string_view tok = tokens[i];
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw ParseError(line, "malformed field '" + std::string{tok} + "'");
        const std::string_view key = tok.substr(0, eq);
        const std::string_view value = tok.substr(eq + 1);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ParseError(line, "duplicate field '" + std::string{key} + "'");
        seen.push_back(key);

        if (key == "a")
            s.inject_a = parse_operand(value, line);
        else if (key == "b")
            s.inject_b = parse_operand(value, line);
        else if (key == "add")
            s.add = parse_route(key, value, line);
        else if (key == "sub")
            s.sub = parse_route(key, value, line);
        else if (key == "mul")
            s.mul = parse_route(key, value, line);
        else if (key == "emit")
            s.emit = parse_src(value, line);
        else
            throw ParseError(line, "malformed field '" + std::string{tok} + "': unknown key '" + std::string{key} + "'");
    }
    return s;
}

void render_operand(std::ostream& out, const Operand& op)
{
    if (const auto* p = std::get_if<Placeholder>(&op))
        out << '$' << p->name;
    else
        out << std::get<Nat>(op);
}

void render_route(std::ostream& out, std::string_view key, const Route& r)
{
    if (r.active())
        out << ' ' << key << '=' << source_name(r.lhs) << ',' << source_name(r.rhs);
}

void note_placeholder(const std::optional<Operand>& op, std::vector<std::string>& names)
{
    if (!op)
        return;
    if (const auto* p = std::get_if<Placeholder>(&*op))
        if (std::find(names.begin(), names.end(), p->name) == names.end())
            names.push_back(p->name);
}

}  // namespace

std::string_view source_name(Source s)
{
    switch (s)
    {
    case Source::In1:
        return "IN1";
    case Source::In2:
        return "IN2";
    case Source::Add:
        return "ADD";
    case Source::Sub:
        return "SUB";
    case Source::Mul:
        return "MUL";
    case Source::None:
        return "NONE";
    }
    return "?";
}

std::optional<Source> parse_source(std::string_view token)
{
    for (const Source s : latch_sources)
        if (source_name(s) == token)
            return s;
    return std::nullopt;
}

const std::optional<RnsNumber>& DatapathState::latch(Source s) const
{
    if (s == Source::None)
        throw DomainError("NONE has no latch");
    return latches[slot(s)];
}

DatapathState step(const RnsContext& ctx, DatapathState state, const Step& s, std::size_t step_number)
{
    if (s.inject_a)
        state.latches[slot(Source::In1)] = to_rns(ctx, resolved(*s.inject_a));
    if (s.inject_b)
        state.latches[slot(Source::In2)] = to_rns(ctx, resolved(*s.inject_b));

    // All units read the latches as they stand after injection; results are
    // written back together afterwards.
    std::optional<RnsNumber> sum;
    std::optional<RnsNumber> difference;
    std::optional<RnsNumber> product;
    if (s.add.active())
        sum = rns_add(ctx, read(state.latches, s.add.lhs, step_number), read(state.latches, s.add.rhs, step_number));
    if (s.sub.active())
        difference =
            rns_sub(ctx, read(state.latches, s.sub.lhs, step_number), read(state.latches, s.sub.rhs, step_number));
    if (s.mul.active())
        product = rns_mul(ctx, read(state.latches, s.mul.lhs, step_number), read(state.latches, s.mul.rhs, step_number));

    if (sum)
        state.latches[slot(Source::Add)] = std::move(sum);
    if (difference)
        state.latches[slot(Source::Sub)] = std::move(difference);
    if (product)
        state.latches[slot(Source::Mul)] = std::move(product);

    if (s.emit != Source::None)
        state.outputs.push_back(from_rns(ctx, read(state.latches, s.emit, step_number)));
    return state;
}

std::vector<std::string> placeholders(const Microprogram& prog)
{
    std::vector<std::string> names;
    for (const Step& s : prog.steps)
    {
        note_placeholder(s.inject_a, names);
        note_placeholder(s.inject_b, names);
    }
    return names;
}

Microprogram bind(const Microprogram& prog, const Bindings& bindings)
{
    Microprogram out = prog;
    auto substitute = [&](std::optional<Operand>& op) {
        if (!op)
            return;
        if (const auto* p = std::get_if<Placeholder>(&*op))
        {
            const auto it = bindings.find(p->name);
            if (it == bindings.end())
                throw UnboundPlaceholderError(p->name);
            op = it->second;
        }
    };
    for (Step& s : out.steps)
    {
        substitute(s.inject_a);
        substitute(s.inject_b);
    }
    return out;
}

RunResult run(const RnsContext& ctx, const Microprogram& prog, const Bindings& bindings, bool record_trace)
{
    const Microprogram bound = bind(prog, bindings);
    DatapathState state;
    RunResult result;
    if (record_trace)
        result.trace.reserve(bound.steps.size());
    for (std::size_t i = 0; i < bound.steps.size(); ++i)
    {
        state = step(ctx, std::move(state), bound.steps[i], i + 1);
        if (record_trace)
            result.trace.push_back(state.latches);
    }
    result.outputs = std::move(state.outputs);
    return result;
}

Microprogram builtin_function1()
{
    Microprogram prog{"function1", {}};

    Step sum;
    sum.inject_a = Placeholder{"X"};
    sum.inject_b = Placeholder{"Y"};
    sum.add = {Source::In1, Source::In2};
    prog.steps.push_back(sum);

    Step scale;
    scale.inject_b = Placeholder{"Z"};
    scale.mul = {Source::Add, Source::In2};
    prog.steps.push_back(scale);

    Step out;
    out.emit = Source::Mul;
    prog.steps.push_back(out);
    return prog;
}

Microprogram builtin_function2(const Nat& exponent)
{
    if (exponent < 0)
        throw DomainError("negative exponent");
    Microprogram prog{"function2", {}};

    if (exponent == 0)
    {
        Step one;
        one.inject_a = Nat{1};
        one.emit = Source::In1;
        prog.steps.push_back(one);
        return prog;
    }
    if (exponent == 1)
    {
        Step identity;
        identity.inject_a = Placeholder{"X"};
        identity.emit = Source::In1;
        prog.steps.push_back(identity);
        return prog;
    }

    Step square;
    square.inject_a = Placeholder{"X"};
    square.inject_b = Placeholder{"X"};
    square.mul = {Source::In1, Source::In2};
    prog.steps.push_back(square);

    Step again;
    again.mul = {Source::Mul, Source::In1};
    for (Nat i = 2; i < exponent; ++i)
        prog.steps.push_back(again);

    Step out;
    out.emit = Source::Mul;
    prog.steps.push_back(out);
    return prog;
}

Microprogram parse_program(std::string_view text)
{
    Microprogram prog;
    bool have_header = false;
    bool have_end = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.starts_with('#'))
            continue;
        const auto tokens = split_ws(line);

        if (have_end)
            throw ParseError(line_no, "content after END");
        if (!have_header)
        {
            if (tokens[0] != "PROG")
                throw ParseError(line_no, "missing PROG header");
            if (tokens.size() != 2 || !is_identifier(tokens[1]))
                throw ParseError(line_no, "malformed PROG header, expected 'PROG <name>'");
            prog.name = std::string{tokens[1]};
            have_header = true;
        }
        else if (tokens[0] == "END")
        {
            if (tokens.size() != 1)
                throw ParseError(line_no, "malformed END line");
            have_end = true;
        }
        else if (tokens[0] == "STEP")
            prog.steps.push_back(parse_step(tokens, line_no));
        else
            throw ParseError(line_no, "expected STEP or END, got '" + std::string{tokens[0]} + "'");
    }
    if (!have_header)
        throw ParseError(line_no, "missing PROG header");
    if (!have_end)
        throw ParseError(line_no, "missing END");
    return prog;
}

std::string render_program(const Microprogram& prog)
{
    std::ostringstream out;
    out << "PROG " << prog.name << '\n';
    for (const Step& s : prog.steps)
    {
        out << "STEP";
        if (s.inject_a)
        {
            out << " a=";
            render_operand(out, *s.inject_a);
        }
        if (s.inject_b)
        {
            out << " b=";
            render_operand(out, *s.inject_b);
        }
        render_route(out, "add", s.add);
        render_route(out, "sub", s.sub);
        render_route(out, "mul", s.mul);
        if (s.emit != Source::None)
            out << " emit=" << source_name(s.emit);
        out << '\n';
    }
    out << "END\n";
    return out.str();
}

std::string render_latches(const Latches& latches)
{
    std::string out;
    for (const Source s : latch_sources)
    {
        if (!out.empty())
            out += ' ';
        out += source_name(s);
        out += '=';
        const auto& l = latches[slot(s)];
        out += l ? "(" + l->to_string() + ")" : "-";
    }
    return out;
}

}  // namespace rns
