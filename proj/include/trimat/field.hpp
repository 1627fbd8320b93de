#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "trimat/errors.hpp"

namespace trimat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind { Rational, Prime, Float };

class FieldElement;

// Runtime description of the ground field: exact rationals, a prime field
// GF(q), or doubles compared at a tolerance. Every element carries its spec
// so mixed-field arithmetic fails fast.
class FieldSpec {
public:
    static constexpr double kDefaultTolerance = 1e-9;

    static FieldSpec rationals();
    // Prime moduli are capped below 2^31 so products fit 64-bit intermediates.
    static FieldSpec gf(std::uint32_t modulus);
    static FieldSpec floating(double tolerance = kDefaultTolerance);

    FieldKind kind() const { return kind_; }
    std::uint32_t modulus() const { return modulus_; }
    double tolerance() const { return tolerance_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long value) const;
    // Float field only.
    FieldElement from_double(double value) const;
    // Parses one element literal: `n` or `n/d` for rationals, a decimal
    // residue for GF(q), a decimal literal with optional exponent for floats.
    // Throws FieldLiteralError on anything else.
    FieldElement parse(std::string_view literal) const;

    bool operator==(const FieldSpec& other) const;
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }

    // "rational", "gf 7", "float 1e-09" -- the header syntax of the file format.
    std::string str() const;

private:
    FieldSpec(FieldKind kind, std::uint32_t modulus, double tolerance)
        : kind_(kind), modulus_(modulus), tolerance_(tolerance) {}

    FieldKind kind_;
    std::uint32_t modulus_;
    double tolerance_;
};

// Accepts the header syntax plus the compact CLI forms "gf7" / "float:1e-6".
FieldSpec parse_field_spec(std::string_view text);

// Immutable value of one field element. All operations are pure; values are
// safe to share across threads.
class FieldElement {
public:
    const FieldSpec& spec() const { return spec_; }

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator-(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    FieldElement operator-() const;

    // Multiplicative inverse; DivisionByZero on zero (for floats: on any
    // value within tolerance of zero).
    FieldElement inv() const;

    bool is_zero() const;
    bool is_one() const;

    // Field equality: canonical-form equality for exact fields,
    // |a-b| <= tol*max(1,|a|,|b|) for floats.
    bool operator==(const FieldElement& other) const;
    bool operator!=(const FieldElement& other) const { return !(*this == other); }

    // Canonical literal, parseable by FieldSpec::parse.
    std::string str() const;

    const Rational& as_rational() const { return std::get<Rational>(rep_); }
    std::int64_t as_residue() const { return std::get<std::int64_t>(rep_); }
    double as_double() const { return std::get<double>(rep_); }

private:
    friend class FieldSpec;
    friend bool identical(const FieldElement& a, const FieldElement& b);

    using Rep = std::variant<Rational, std::int64_t, double>;

    FieldElement(const FieldSpec& spec, Rep rep) : spec_(spec), rep_(std::move(rep)) {}

    FieldSpec spec_;
    Rep rep_;
};

// Representation equality: bit-exact, never tolerance-based. This is what
// "bitwise identical to sequential evaluation" means for parallel kernels.
bool identical(const FieldElement& a, const FieldElement& b);

// Shortest round-tripping decimal form of a double.
std::string format_double(double value);

}  // namespace trimat
