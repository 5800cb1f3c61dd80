#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eppe {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name)
        : Error("unbound variable: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class NegativeExponent : public Error {
public:
    using Error::Error;
};

// Raised when an intermediate integer would exceed the configured bit budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A transformation pass was applied to a formula of the wrong shape.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace eppe
