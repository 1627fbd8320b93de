#include "trimat/field.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace trimat {

namespace {

bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (std::uint32_t d = 3; d <= q / d; d += 2) {
        if (q % d == 0) return false;
    }
    return true;
}

// Extended Euclid; requires 0 < a < q with gcd(a, q) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t q) {
    std::int64_t old_r = a, r = q;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::int64_t tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    return ((old_s % q) + q) % q;
}

void check_same_spec(const FieldSpec& a, const FieldSpec& b) {
    if (a != b) {
        throw FieldMismatch("cannot combine elements of " + a.str() + " and " + b.str());
    }
}

bool parse_double_strict(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

FieldSpec FieldSpec::rationals() {
    return FieldSpec(FieldKind::Rational, 0, 0.0);
}

FieldSpec FieldSpec::gf(std::uint32_t modulus) {
    if (modulus >= (1u << 31)) {
        throw InvalidFieldSpec("modulus " + std::to_string(modulus) + " exceeds 2^31 - 1");
    }
    if (!is_prime(modulus)) {
        throw InvalidFieldSpec("modulus " + std::to_string(modulus) + " is not prime");
    }
    return FieldSpec(FieldKind::Prime, modulus, 0.0);
}

FieldSpec FieldSpec::floating(double tolerance) {
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
        throw InvalidFieldSpec("tolerance must be a finite nonnegative real");
    }
    return FieldSpec(FieldKind::Float, 0, tolerance);
}

bool FieldSpec::operator==(const FieldSpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case FieldKind::Rational: return true;
        case FieldKind::Prime: return modulus_ == other.modulus_;
        case FieldKind::Float: return tolerance_ == other.tolerance_;
    }
    return false;
}

std::string FieldSpec::str() const {
    switch (kind_) {
        case FieldKind::Rational: return "rational";
        case FieldKind::Prime: return "gf " + std::to_string(modulus_);
        case FieldKind::Float: return "float " + format_double(tolerance_);
    }
    return {};
}

FieldElement FieldSpec::zero() const {
    switch (kind_) {
        case FieldKind::Rational: return FieldElement(*this, Rational(0));
        case FieldKind::Prime: return FieldElement(*this, std::int64_t{0});
        case FieldKind::Float: return FieldElement(*this, 0.0);
    }
    throw Error("unreachable field kind");
}

FieldElement FieldSpec::one() const {
    switch (kind_) {
        case FieldKind::Rational: return FieldElement(*this, Rational(1));
        case FieldKind::Prime:
            return FieldElement(*this, static_cast<std::int64_t>(1 % modulus_));
        case FieldKind::Float: return FieldElement(*this, 1.0);
    }
    throw Error("unreachable field kind");
}

FieldElement FieldSpec::from_int(long long value) const {
    switch (kind_) {
        case FieldKind::Rational: return FieldElement(*this, Rational(value));
        case FieldKind::Prime: {
            std::int64_t q = modulus_;
            std::int64_t r = static_cast<std::int64_t>(value) % q;
            if (r < 0) r += q;
            return FieldElement(*this, r);
        }
        case FieldKind::Float: return FieldElement(*this, static_cast<double>(value));
    }
    throw Error("unreachable field kind");
}

FieldElement FieldSpec::from_double(double value) const {
    if (kind_ != FieldKind::Float) {
        throw FieldMismatch("from_double is only defined on the float field");
    }
    return FieldElement(*this, value);
}

FieldElement FieldSpec::parse(std::string_view literal) const {
    const std::string text(literal);
    auto bad = [&](const std::string& why) -> FieldLiteralError {
        return FieldLiteralError("field literal \"" + text + "\" is not valid for " +
                                 str() + ": " + why);
    };

    std::string_view body = literal;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    switch (kind_) {
        case FieldKind::Rational: {
            auto slash = body.find('/');
            std::string_view num = body.substr(0, slash);
            if (!all_digits(num)) throw bad("expected `n` or `n/d`");
            BigInt n{std::string(num)};
            BigInt d{1};
            if (slash != std::string_view::npos) {
                std::string_view den = body.substr(slash + 1);
                if (!all_digits(den)) throw bad("expected `n` or `n/d`");
                d = BigInt(std::string(den));
                if (d == 0) throw bad("zero denominator");
            }
            if (negative) n = -n;
            return FieldElement(*this, Rational(n, d));
        }
        case FieldKind::Prime: {
            if (!all_digits(body)) throw bad("expected a decimal residue");
            BigInt n{std::string(body)};
            if (negative) n = -n;
            BigInt r = n % modulus_;
            if (r < 0) r += modulus_;
            return FieldElement(*this, static_cast<std::int64_t>(r));
        }
        case FieldKind::Float: {
            double value = 0.0;
            if (!parse_double_strict(literal, value)) {
                throw bad("expected a finite decimal literal");
            }
            return FieldElement(*this, value);
        }
    }
    throw Error("unreachable field kind");
}

FieldSpec parse_field_spec(std::string_view text) {
    // Trim, then split into a keyword and an optional parameter. ':' and '='
    // are accepted as separators so the CLI can take e.g. --field gf:7.
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);

    std::size_t head = 0;
    while (head < text.size() && std::isalpha(static_cast<unsigned char>(text[head]))) ++head;
    std::string keyword(text.substr(0, head));
    std::string_view rest = text.substr(head);
    if (!rest.empty() && (rest.front() == ':' || rest.front() == '=')) rest.remove_prefix(1);
    while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);

    if (keyword == "rational") {
        if (!rest.empty()) throw InvalidFieldSpec("unexpected parameter after \"rational\"");
        return FieldSpec::rationals();
    }
    if (keyword == "gf") {
        if (!all_digits(rest)) {
            throw InvalidFieldSpec("expected a modulus after \"gf\"");
        }
        std::uint64_t q = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), q);
        if (ec != std::errc() || ptr != rest.data() + rest.size() || q >= (1ull << 31)) {
            throw InvalidFieldSpec("modulus out of range");
        }
        return FieldSpec::gf(static_cast<std::uint32_t>(q));
    }
    if (keyword == "float") {
        if (rest.empty()) return FieldSpec::floating();
        double tol = 0.0;
        if (!parse_double_strict(rest, tol)) {
            throw InvalidFieldSpec("expected a tolerance after \"float\"");
        }
        return FieldSpec::floating(tol);
    }
    throw InvalidFieldSpec("unknown field \"" + std::string(text) + "\"");
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
    check_same_spec(spec_, other.spec_);
    switch (spec_.kind()) {
        case FieldKind::Rational:
            return FieldElement(spec_, as_rational() + other.as_rational());
        case FieldKind::Prime: {
            std::int64_t q = spec_.modulus();
            return FieldElement(spec_, (as_residue() + other.as_residue()) % q);
        }
        case FieldKind::Float:
            return FieldElement(spec_, as_double() + other.as_double());
    }
    throw Error("unreachable field kind");
}

FieldElement FieldElement::operator-() const {
    switch (spec_.kind()) {
        case FieldKind::Rational: return FieldElement(spec_, Rational(-as_rational()));
        case FieldKind::Prime: {
            std::int64_t q = spec_.modulus();
            return FieldElement(spec_, (q - as_residue()) % q);
        }
        case FieldKind::Float: return FieldElement(spec_, -as_double());
    }
    throw Error("unreachable field kind");
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
    return *this + (-other);
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
    check_same_spec(spec_, other.spec_);
    switch (spec_.kind()) {
        case FieldKind::Rational:
            return FieldElement(spec_, as_rational() * other.as_rational());
        case FieldKind::Prime: {
            std::int64_t q = spec_.modulus();
            return FieldElement(spec_, (as_residue() * other.as_residue()) % q);
        }
        case FieldKind::Float:
            return FieldElement(spec_, as_double() * other.as_double());
    }
    throw Error("unreachable field kind");
}

FieldElement FieldElement::inv() const {
    switch (spec_.kind()) {
        case FieldKind::Rational: {
            if (as_rational() == 0) throw DivisionByZero("inverse of 0");
            return FieldElement(spec_, Rational(1) / as_rational());
        }
        case FieldKind::Prime: {
            if (as_residue() == 0) throw DivisionByZero("inverse of 0 in " + spec_.str());
            return FieldElement(spec_, mod_inverse(as_residue(), spec_.modulus()));
        }
        case FieldKind::Float: {
            if (!(std::fabs(as_double()) > spec_.tolerance())) {
                throw DivisionByZero("inverse of " + str() + " is below tolerance");
            }
            return FieldElement(spec_, 1.0 / as_double());
        }
    }
    throw Error("unreachable field kind");
}

bool FieldElement::is_zero() const {
    switch (spec_.kind()) {
        case FieldKind::Rational: return as_rational() == 0;
        case FieldKind::Prime: return as_residue() == 0;
        case FieldKind::Float: {
            double a = std::fabs(as_double());
            return a <= spec_.tolerance() * std::fmax(1.0, a);
        }
    }
    throw Error("unreachable field kind");
}

bool FieldElement::is_one() const {
    return *this == spec_.one();
}

bool FieldElement::operator==(const FieldElement& other) const {
    check_same_spec(spec_, other.spec_);
    switch (spec_.kind()) {
        case FieldKind::Rational: return as_rational() == other.as_rational();
        case FieldKind::Prime: return as_residue() == other.as_residue();
        case FieldKind::Float: {
            double a = as_double(), b = other.as_double();
            double scale = std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
            return std::fabs(a - b) <= spec_.tolerance() * scale;
        }
    }
    throw Error("unreachable field kind");
}

std::string FieldElement::str() const {
    switch (spec_.kind()) {
        case FieldKind::Rational: return as_rational().str();
        case FieldKind::Prime: return std::to_string(as_residue());
        case FieldKind::Float: return format_double(as_double());
    }
    throw Error("unreachable field kind");
}

bool identical(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ != b.spec_) return false;
    switch (a.spec_.kind()) {
        case FieldKind::Rational: return a.as_rational() == b.as_rational();
        case FieldKind::Prime: return a.as_residue() == b.as_residue();
        case FieldKind::Float:
            return std::bit_cast<std::uint64_t>(a.as_double()) ==
                   std::bit_cast<std::uint64_t>(b.as_double());
    }
    return false;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace trimat
