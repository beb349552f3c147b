#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atrid {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Sequence lengths inconsistent with the declared order, or corner
/// entries requested for an order where they collide with the band.
class StructureError : public Error {
public:
    explicit StructureError(const std::string& what) : Error("structure error: " + what) {}
};

/// Malformed matrix/vector text. Carries 1-based line and field positions.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t field, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ", field " +
                std::to_string(field) + ": " + what),
          line_(line),
          field_(field) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::size_t field_;
};

/// A pivot of an unpivoted recursion vanished (or fell below the breakdown
/// threshold). Distinct from genuine singularity of the input matrix.
class BreakdownError : public Error {
public:
    BreakdownError(std::size_t index, const std::string& what)
        : Error("breakdown at index " + std::to_string(index) + ": " + what), index_(index) {}

    /// 1-based index of the failing pivot.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The matrix is singular for the requested operation.
class SingularError : public Error {
public:
    explicit SingularError(const std::string& what) : Error("singular: " + what) {}
};

/// An intermediate quantity left the representable range.
class OverflowError : public Error {
public:
    OverflowError(std::size_t index, const std::string& what)
        : Error("overflow at index " + std::to_string(index) + ": " + what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Operand shapes do not conform.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error("shape error: " + what) {}
};

}  // namespace atrid
