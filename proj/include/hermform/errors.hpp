#pragma once

#include <stdexcept>
#include <string>

namespace hermform {

// User-facing failure: bad input, unknown identifiers, violated preconditions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Structure equations that do not define a bigraded differential algebra.
class ModelError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// The requested triple ABC-Massey product does not exist (a pairwise product
// is not ddbar-exact).
class MasseyUndefined : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// An internal identity that must hold by construction failed. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hermform
