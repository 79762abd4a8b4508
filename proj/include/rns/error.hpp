// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rns
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on a numeric argument was violated (zero root index, zero
/// modulus, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// mod_inverse was asked to invert a value sharing a factor with the modulus.
class NotInvertibleError : public Error
{
public:
    using Error::Error;
};

/// A moduli set, generation request or residue vector failed validation.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Microprogram text could not be parsed. `line()` is 1-based.
class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), m_line{line}
    {}

    [[nodiscard]] std::size_t line() const noexcept { return m_line; }

private:
    std::size_t m_line;
};

/// A microprogram references a `$name` placeholder that has no binding.
class UnboundPlaceholderError : public Error
{
public:
    explicit UnboundPlaceholderError(std::string name)
      : Error("unbound placeholder $" + name), m_name{std::move(name)}
    {}

    [[nodiscard]] const std::string& name() const noexcept { return m_name; }

private:
    std::string m_name;
};

/// The datapath read a latch that was never written. `step()` is 1-based.
class RunFault : public Error
{
public:
    RunFault(std::size_t step, const std::string& source)
      : Error("step " + std::to_string(step) + ": read of undefined latch " + source),
        m_step{step},
        m_source{source}
    {}

    [[nodiscard]] std::size_t step() const noexcept { return m_step; }
    [[nodiscard]] const std::string& source() const noexcept { return m_source; }

private:
    std::size_t m_step;
    std::string m_source;
};

}  // namespace rns
