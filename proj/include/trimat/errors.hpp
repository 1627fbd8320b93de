#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimat {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands belong to different fields (kind or parameters differ).
class FieldMismatch : public Error {
public:
    using Error::Error;
};

// Inversion of a zero element (or, on the float field, of an element
// indistinguishable from zero at the field's tolerance).
class DivisionByZero : public Error {
public:
    using Error::Error;
};

// A field spec that violates its own invariants (non-prime modulus,
// negative tolerance, modulus out of range).
class InvalidFieldSpec : public Error {
public:
    using Error::Error;
};

// A field literal that does not belong to the field's textual syntax.
class FieldLiteralError : public Error {
public:
    using Error::Error;
};

// Incompatible matrix shapes for the requested operation.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// Square-only operation applied to a rectangular layer.
class NotSquare : public Error {
public:
    using Error::Error;
};

// Multi-scalar depth does not match the matrix depth.
class DepthMismatch : public Error {
public:
    using Error::Error;
};

// 1-based index outside the valid range.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// Inversion of a matrix with at least one zero layer determinant.
// `layers()` lists every offending layer index k (1-based); empty for
// plain 2D matrices.
class Singular : public Error {
public:
    explicit Singular(std::vector<std::size_t> layers = {})
        : Error(format_message(layers)), layers_(std::move(layers)) {}

    const std::vector<std::size_t>& layers() const { return layers_; }

private:
    static std::string format_message(const std::vector<std::size_t>& layers);
    std::vector<std::size_t> layers_;
};

// Hat of a multi-scalar with a zero component; `component()` is the first
// offending index k (1-based).
class NotAbsolutelyNonzero : public Error {
public:
    explicit NotAbsolutelyNonzero(std::size_t component)
        : Error("multi-scalar is not absolutely nonzero: component " +
                std::to_string(component) + " is zero"),
          component_(component) {}

    std::size_t component() const { return component_; }

private:
    std::size_t component_;
};

// Rejection sampling failed to find a nonsingular layer within the redraw
// budget.
class SamplingExhausted : public Error {
public:
    using Error::Error;
};

// Census would enumerate more matrices than the configured cap.
class EnumerationTooLarge : public Error {
public:
    using Error::Error;
};

// Any failure while parsing a document; carries the source position.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

class DuplicateLayer : public ParseError {
public:
    using ParseError::ParseError;
};

class MissingLayer : public ParseError {
public:
    using ParseError::ParseError;
};

// Row length, row count, layer count or element count disagrees with the
// declared dimensions.
class ShapeError : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace trimat
