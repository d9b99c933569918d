#pragma once

#include <stdexcept>
#include <string>

namespace amoebascope {

// Error categories carried by every exception thrown from the library.
// The C wrapper maps these 1:1 onto status codes; the CLI maps them onto
// exit codes (validation vs numeric failure).
enum class ErrKind {
    InvalidArgument,
    Parse,
    DimensionMismatch,
    ExcludedParameter,
    NonConvergence,
    DegenerateRestriction,
    SingularPoint,
    DegeneratePolytope,
    DegenerateLinear,
    GridMismatch,
    GeneratorNotInIdeal,
    AmbiguousNormal,
    EntireFamily,
    NoPinch,
    InsufficientSamples,
    UnknownScenario,
    Io,
    Unsupported,
};

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

// Parse failures additionally carry a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(ErrKind::Parse, msg + " (line " + std::to_string(line) +
                                    ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace amoebascope
