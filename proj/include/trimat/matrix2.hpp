#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "trimat/field.hpp"

namespace trimat {

// Dense m x n matrix over one field; one vertical layer of a 3D matrix.
// Row-major storage. The public index surface is 1-based, matching the
// subscript convention of the rest of the library; internals are 0-based.
class Matrix2 {
public:
    Matrix2(std::size_t rows, std::size_t cols, const FieldElement& fill);

    static Matrix2 zero(std::size_t rows, std::size_t cols, const FieldSpec& spec);
    static Matrix2 identity(std::size_t n, const FieldSpec& spec);
    // Convenience builder: entries given row by row as integers.
    static Matrix2 from_ints(const FieldSpec& spec,
                             std::initializer_list<std::initializer_list<long long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const FieldSpec& spec() const { return entries_.front().spec(); }

    // 1-based, bounds-checked.
    const FieldElement& entry(std::size_t i, std::size_t j) const;
    void set_entry(std::size_t i, std::size_t j, FieldElement value);

    const std::vector<FieldElement>& entries() const { return entries_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldElement> entries_;
};

Matrix2 add(const Matrix2& a, const Matrix2& b);
Matrix2 scale(const FieldElement& c, const Matrix2& a);
Matrix2 mul(const Matrix2& a, const Matrix2& b);
Matrix2 transpose(const Matrix2& a);

// Exact determinant. Cofactor expansion for n <= 3; for larger n,
// fraction-free Bareiss elimination on exact fields and partial-pivot
// elimination on the float field.
FieldElement det(const Matrix2& a);

// Algorithm-specific entry points, kept public so the routes can be checked
// against each other.
FieldElement det_cofactor(const Matrix2& a);
FieldElement det_bareiss(const Matrix2& a);
FieldElement det_partial_pivot(const Matrix2& a);

// (-1)^(i+j) * det(minor(a, i, j)); i, j are 1-based.
FieldElement cofactor(const Matrix2& a, std::size_t i, std::size_t j);
Matrix2 cofactor_matrix(const Matrix2& a);

// Transpose of the cofactor matrix; a * adjugate(a) = det(a) * I even for
// singular a.
Matrix2 adjugate(const Matrix2& a);

// Inverse as adjugate(a) scaled by 1/det(a). Throws Singular.
Matrix2 inverse_adjugate(const Matrix2& a);
// Independent Gauss-Jordan route; must agree with inverse_adjugate exactly
// on exact fields.
Matrix2 inverse_gauss(const Matrix2& a);

inline Matrix2 operator+(const Matrix2& a, const Matrix2& b) { return add(a, b); }
inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) { return mul(a, b); }

// Representation equality, entrywise; no tolerance on any field.
bool identical(const Matrix2& a, const Matrix2& b);

}  // namespace trimat
