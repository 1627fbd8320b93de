#include "trimat/tensor3.hpp"

#include <cstddef>
#include <utility>

namespace trimat {

namespace {

void check_same_shape(const Matrix3& a, const Matrix3& b) {
    if (a.spec() != b.spec()) {
        throw FieldMismatch("cannot combine 3D matrices over " + a.spec().str() +
                            " and " + b.spec().str());
    }
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.depth() != b.depth()) {
        throw ShapeMismatch("3D shapes differ: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + "x" + std::to_string(a.depth()) +
                            " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + "x" + std::to_string(b.depth()));
    }
}

void check_square_layers(const Matrix3& a) {
    if (!a.has_square_layers()) {
        throw NotSquare("operation requires square layers, got " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + "x" +
                        std::to_string(a.depth()));
    }
}

void check_depth(const MultiScalar& s, const Matrix3& a) {
    if (s.spec() != a.spec()) {
        throw FieldMismatch("multi-scalar field does not match matrix field");
    }
    if (s.depth() != a.depth()) {
        throw DepthMismatch("multi-scalar depth " + std::to_string(s.depth()) +
                            " does not match matrix depth " + std::to_string(a.depth()));
    }
}

// Applies fn(k) to every 1-based layer index, writing layer k of the result.
template <typename Fn>
Matrix3 layer_map_parallel(std::size_t p, const Matrix2& prototype, Fn&& fn) {
    std::vector<Matrix2> out(p, prototype);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(p); ++k) {
        out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k) + 1);
    }
    return Matrix3::from_layers(std::move(out));
}

template <typename Fn>
Matrix3 layer_map_serial(std::size_t p, const Matrix2& prototype, Fn&& fn) {
    std::vector<Matrix2> out(p, prototype);
    for (std::size_t k = 0; k < p; ++k) out[k] = fn(k + 1);
    return Matrix3::from_layers(std::move(out));
}

}  // namespace

Matrix3 Matrix3::zero(std::size_t m, std::size_t n, std::size_t p, const FieldSpec& spec) {
    if (p == 0) throw ShapeMismatch("matrix depth must be positive");
    return Matrix3(std::vector<Matrix2>(p, Matrix2::zero(m, n, spec)));
}

Matrix3 Matrix3::identity(std::size_t n, std::size_t p, const FieldSpec& spec) {
    if (p == 0) throw ShapeMismatch("matrix depth must be positive");
    return Matrix3(std::vector<Matrix2>(p, Matrix2::identity(n, spec)));
}

Matrix3 Matrix3::from_layers(std::vector<Matrix2> layers) {
    if (layers.empty()) throw ShapeMismatch("a 3D matrix needs at least one layer");
    const Matrix2& first = layers.front();
    for (const Matrix2& l : layers) {
        if (l.rows() != first.rows() || l.cols() != first.cols()) {
            throw ShapeMismatch("layers must share one shape");
        }
        if (l.spec() != first.spec()) {
            throw FieldMismatch("layers must share one field");
        }
    }
    return Matrix3(std::move(layers));
}

const Matrix2& Matrix3::layer(std::size_t k) const {
    if (k < 1 || k > layers_.size()) {
        throw IndexOutOfRange("layer " + std::to_string(k) + " outside 1.." +
                              std::to_string(layers_.size()));
    }
    return layers_[k - 1];
}

MultiScalar::MultiScalar(std::vector<FieldElement> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw ShapeMismatch("a multi-scalar needs at least one component");
    }
    for (const FieldElement& c : components_) {
        if (c.spec() != components_.front().spec()) {
            throw FieldMismatch("multi-scalar components must share one field");
        }
    }
}

MultiScalar MultiScalar::zero(std::size_t p, const FieldSpec& spec) {
    return MultiScalar(std::vector<FieldElement>(p, spec.zero()));
}

MultiScalar MultiScalar::ones(std::size_t p, const FieldSpec& spec) {
    return MultiScalar(std::vector<FieldElement>(p, spec.one()));
}

MultiScalar MultiScalar::from_matrix3(const Matrix3& m) {
    if (m.rows() != 1 || m.cols() != 1) {
        throw ShapeMismatch("only a 1x1xp matrix converts to a multi-scalar");
    }
    std::vector<FieldElement> comps;
    comps.reserve(m.depth());
    for (std::size_t k = 1; k <= m.depth(); ++k) comps.push_back(m.layer(k).entry(1, 1));
    return MultiScalar(std::move(comps));
}

const FieldElement& MultiScalar::component(std::size_t k) const {
    if (k < 1 || k > components_.size()) {
        throw IndexOutOfRange("component " + std::to_string(k) + " outside 1.." +
                              std::to_string(components_.size()));
    }
    return components_[k - 1];
}

Matrix3 MultiScalar::to_matrix3() const {
    std::vector<Matrix2> layers;
    layers.reserve(depth());
    for (const FieldElement& c : components_) layers.push_back(Matrix2(1, 1, c));
    return Matrix3::from_layers(std::move(layers));
}

Matrix3 add(const Matrix3& a, const Matrix3& b) {
    check_same_shape(a, b);
    return layer_map_parallel(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                              [&](std::size_t k) { return trimat::add(a.layer(k), b.layer(k)); });
}

Matrix3 negate(const Matrix3& a) {
    return layer_map_parallel(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                              [&](std::size_t k) {
                                  return scale(-a.spec().one(), a.layer(k));
                              });
}

Matrix3 odot(const Matrix3& a, const Matrix3& b) {
    check_square_layers(a);
    check_square_layers(b);
    check_same_shape(a, b);
    return layer_map_parallel(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                              [&](std::size_t k) { return mul(a.layer(k), b.layer(k)); });
}

Matrix3 scale(const MultiScalar& s, const Matrix3& a) {
    check_depth(s, a);
    return layer_map_parallel(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                              [&](std::size_t k) {
                                  return scale(s.component(k), a.layer(k));
                              });
}

MultiScalar componentwise_mul(const MultiScalar& a, const MultiScalar& b) {
    if (a.spec() != b.spec()) {
        throw FieldMismatch("cannot combine multi-scalars over " + a.spec().str() +
                            " and " + b.spec().str());
    }
    if (a.depth() != b.depth()) {
        throw DepthMismatch("multi-scalar depths differ: " + std::to_string(a.depth()) +
                            " vs " + std::to_string(b.depth()));
    }
    std::vector<FieldElement> comps;
    comps.reserve(a.depth());
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        comps.push_back(a.component(k) * b.component(k));
    }
    return MultiScalar(std::move(comps));
}

MultiScalar det3(const Matrix3& a) {
    check_square_layers(a);
    const std::size_t p = a.depth();
    std::vector<FieldElement> comps(p, a.spec().zero());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(p); ++k) {
        comps[static_cast<std::size_t>(k)] = det(a.layer(static_cast<std::size_t>(k) + 1));
    }
    return MultiScalar(std::move(comps));
}

bool absolutely_nonzero(const MultiScalar& s) {
    for (std::size_t k = 1; k <= s.depth(); ++k) {
        if (s.component(k).is_zero()) return false;
    }
    return true;
}

MultiScalar hat(const MultiScalar& s) {
    for (std::size_t k = 1; k <= s.depth(); ++k) {
        if (s.component(k).is_zero()) throw NotAbsolutelyNonzero(k);
    }
    std::vector<FieldElement> comps;
    comps.reserve(s.depth());
    for (std::size_t k = 1; k <= s.depth(); ++k) comps.push_back(s.component(k).inv());
    return MultiScalar(std::move(comps));
}

Matrix3 adjugate3(const Matrix3& a) {
    check_square_layers(a);
    return layer_map_parallel(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                              [&](std::size_t k) { return adjugate(a.layer(k)); });
}

Matrix3 inverse3(const Matrix3& a) {
    check_square_layers(a);
    MultiScalar dets = det3(a);
    std::vector<std::size_t> singular_layers;
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        if (dets.component(k).is_zero()) singular_layers.push_back(k);
    }
    if (!singular_layers.empty()) throw Singular(singular_layers);
    return scale(hat(dets), adjugate3(a));
}

bool identical(const Matrix3& a, const Matrix3& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.depth() != b.depth()) return false;
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        if (!identical(a.layer(k), b.layer(k))) return false;
    }
    return true;
}

bool identical(const MultiScalar& a, const MultiScalar& b) {
    if (a.depth() != b.depth()) return false;
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        if (!identical(a.component(k), b.component(k))) return false;
    }
    return true;
}

bool equal(const Matrix2& a, const Matrix2& b) {
    if (a.spec() != b.spec() || a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t idx = 0; idx < a.entries().size(); ++idx) {
        if (a.entries()[idx] != b.entries()[idx]) return false;
    }
    return true;
}

bool equal(const Matrix3& a, const Matrix3& b) {
    if (a.spec() != b.spec() || a.rows() != b.rows() || a.cols() != b.cols() ||
        a.depth() != b.depth()) {
        return false;
    }
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        if (!equal(a.layer(k), b.layer(k))) return false;
    }
    return true;
}

bool equal(const MultiScalar& a, const MultiScalar& b) {
    if (a.spec() != b.spec() || a.depth() != b.depth()) return false;
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        if (a.component(k) != b.component(k)) return false;
    }
    return true;
}

namespace serial {

Matrix3 add(const Matrix3& a, const Matrix3& b) {
    check_same_shape(a, b);
    return layer_map_serial(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                            [&](std::size_t k) { return trimat::add(a.layer(k), b.layer(k)); });
}

Matrix3 negate(const Matrix3& a) {
    return layer_map_serial(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                            [&](std::size_t k) {
                                return trimat::scale(-a.spec().one(), a.layer(k));
                            });
}

Matrix3 odot(const Matrix3& a, const Matrix3& b) {
    check_square_layers(a);
    check_square_layers(b);
    check_same_shape(a, b);
    return layer_map_serial(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                            [&](std::size_t k) { return mul(a.layer(k), b.layer(k)); });
}

Matrix3 scale(const MultiScalar& s, const Matrix3& a) {
    check_depth(s, a);
    return layer_map_serial(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                            [&](std::size_t k) {
                                return trimat::scale(s.component(k), a.layer(k));
                            });
}

MultiScalar det3(const Matrix3& a) {
    check_square_layers(a);
    std::vector<FieldElement> comps;
    comps.reserve(a.depth());
    for (std::size_t k = 1; k <= a.depth(); ++k) comps.push_back(det(a.layer(k)));
    return MultiScalar(std::move(comps));
}

Matrix3 adjugate3(const Matrix3& a) {
    check_square_layers(a);
    return layer_map_serial(a.depth(), Matrix2::zero(a.rows(), a.cols(), a.spec()),
                            [&](std::size_t k) { return adjugate(a.layer(k)); });
}

Matrix3 inverse3(const Matrix3& a) {
    check_square_layers(a);
    MultiScalar dets = serial::det3(a);
    std::vector<std::size_t> singular_layers;
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        if (dets.component(k).is_zero()) singular_layers.push_back(k);
    }
    if (!singular_layers.empty()) throw Singular(singular_layers);
    return serial::scale(hat(dets), serial::adjugate3(a));
}

}  // namespace serial

}  // namespace trimat
