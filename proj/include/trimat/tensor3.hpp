#pragma once

#include <cstddef>
#include <vector>

#include "trimat/matrix2.hpp"

namespace trimat {

class MultiScalar;

// An m x n x p 3D matrix: an ordered stack of p vertical layers, each an
// m x n Matrix2 over one field. Layer k = 1 is the front layer; displays
// that show layer p first are a notation choice, the index is what counts.
class Matrix3 {
public:
    static Matrix3 zero(std::size_t m, std::size_t n, std::size_t p, const FieldSpec& spec);
    static Matrix3 identity(std::size_t n, std::size_t p, const FieldSpec& spec);
    static Matrix3 from_layers(std::vector<Matrix2> layers);

    std::size_t rows() const { return layers_.front().rows(); }
    std::size_t cols() const { return layers_.front().cols(); }
    std::size_t depth() const { return layers_.size(); }
    bool has_square_layers() const { return rows() == cols(); }
    const FieldSpec& spec() const { return layers_.front().spec(); }

    // 1-based.
    const Matrix2& layer(std::size_t k) const;
    const std::vector<Matrix2>& layers() const { return layers_; }

private:
    explicit Matrix3(std::vector<Matrix2> layers) : layers_(std::move(layers)) {}
    std::vector<Matrix2> layers_;
};

// A 1 x 1 x p 3D matrix: one field element per layer. Kept as its own type
// because determinants and hat carry multi-scalar-specific contracts.
class MultiScalar {
public:
    explicit MultiScalar(std::vector<FieldElement> components);
    static MultiScalar zero(std::size_t p, const FieldSpec& spec);
    static MultiScalar ones(std::size_t p, const FieldSpec& spec);
    static MultiScalar from_matrix3(const Matrix3& m);

    std::size_t depth() const { return components_.size(); }
    const FieldSpec& spec() const { return components_.front().spec(); }

    // 1-based.
    const FieldElement& component(std::size_t k) const;
    const std::vector<FieldElement>& components() const { return components_; }

    Matrix3 to_matrix3() const;

private:
    std::vector<FieldElement> components_;
};

// Layer-parallel kernels. Built with OpenMP these split the work across
// layers; results are required to be bitwise identical to the serial
// reference implementations in trimat::serial, which the test suite checks.

Matrix3 add(const Matrix3& a, const Matrix3& b);
Matrix3 negate(const Matrix3& a);

// Layer-wise product: layer k of the result is layer(a,k) * layer(b,k).
// Both operands must have square layers of the same shape.
Matrix3 odot(const Matrix3& a, const Matrix3& b);

// Multi-scalar action: scales layer k by component k.
Matrix3 scale(const MultiScalar& s, const Matrix3& a);

// Componentwise product of two multi-scalars (the layer-wise product at n=1).
MultiScalar componentwise_mul(const MultiScalar& a, const MultiScalar& b);

// The 3D determinant: the multi-scalar of layer determinants.
MultiScalar det3(const Matrix3& a);

// True iff every component is nonzero -- the invertibility criterion.
bool absolutely_nonzero(const MultiScalar& s);

// Componentwise reciprocal; NotAbsolutelyNonzero names the first zero
// component.
MultiScalar hat(const MultiScalar& s);

// Page-by-page adjugate.
Matrix3 adjugate3(const Matrix3& a);

// hat(det3(a)) * adjugate3(a). Singular lists every layer k with zero
// determinant.
Matrix3 inverse3(const Matrix3& a);

inline Matrix3 operator+(const Matrix3& a, const Matrix3& b) { return add(a, b); }
inline Matrix3 operator*(const Matrix3& a, const Matrix3& b) { return odot(a, b); }

bool identical(const Matrix3& a, const Matrix3& b);
bool identical(const MultiScalar& a, const MultiScalar& b);

// Field equality (tolerance-aware on the float field), entrywise.
bool equal(const Matrix3& a, const Matrix3& b);
bool equal(const MultiScalar& a, const MultiScalar& b);
bool equal(const Matrix2& a, const Matrix2& b);

namespace serial {

// Plain single-threaded loops, kept as the reference the parallel kernels
// are tested and benchmarked against.
Matrix3 add(const Matrix3& a, const Matrix3& b);
Matrix3 negate(const Matrix3& a);
Matrix3 odot(const Matrix3& a, const Matrix3& b);
Matrix3 scale(const MultiScalar& s, const Matrix3& a);
MultiScalar det3(const Matrix3& a);
Matrix3 adjugate3(const Matrix3& a);
Matrix3 inverse3(const Matrix3& a);

}  // namespace serial

}  // namespace trimat
