#include "trimat/matrix2.hpp"

#include <cmath>
#include <utility>

namespace trimat {

namespace {

void check_square(const Matrix2& a) {
    if (!a.is_square()) {
        throw NotSquare("operation requires a square matrix, got " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

void check_same_spec(const Matrix2& a, const Matrix2& b) {
    if (a.spec() != b.spec()) {
        throw FieldMismatch("cannot combine matrices over " + a.spec().str() +
                            " and " + b.spec().str());
    }
}

Matrix2 minor_of(const Matrix2& a, std::size_t i, std::size_t j) {
    const std::size_t n = a.rows();
    Matrix2 m(n - 1, n - 1, a.spec().zero());
    std::size_t r = 1;
    for (std::size_t ii = 1; ii <= n; ++ii) {
        if (ii == i) continue;
        std::size_t c = 1;
        for (std::size_t jj = 1; jj <= n; ++jj) {
            if (jj == j) continue;
            m.set_entry(r, c, a.entry(ii, jj));
            ++c;
        }
        ++r;
    }
    return m;
}

}  // namespace

Matrix2::Matrix2(std::size_t rows, std::size_t cols, const FieldElement& fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
        throw ShapeMismatch("matrix dimensions must be positive");
    }
}

Matrix2 Matrix2::zero(std::size_t rows, std::size_t cols, const FieldSpec& spec) {
    return Matrix2(rows, cols, spec.zero());
}

Matrix2 Matrix2::identity(std::size_t n, const FieldSpec& spec) {
    Matrix2 m(n, n, spec.zero());
    for (std::size_t i = 1; i <= n; ++i) m.set_entry(i, i, spec.one());
    return m;
}

Matrix2 Matrix2::from_ints(const FieldSpec& spec,
                           std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.begin()->size();
    Matrix2 out(m, n, spec.zero());
    std::size_t i = 1;
    for (const auto& row : rows) {
        if (row.size() != n) throw ShapeMismatch("ragged row in matrix literal");
        std::size_t j = 1;
        for (long long v : row) out.set_entry(i, j++, spec.from_int(v));
        ++i;
    }
    return out;
}

const FieldElement& Matrix2::entry(std::size_t i, std::size_t j) const {
    if (i < 1 || i > rows_ || j < 1 || j > cols_) {
        throw IndexOutOfRange("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
    return entries_[(i - 1) * cols_ + (j - 1)];
}

void Matrix2::set_entry(std::size_t i, std::size_t j, FieldElement value) {
    if (i < 1 || i > rows_ || j < 1 || j > cols_) {
        throw IndexOutOfRange("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
    if (value.spec() != spec()) {
        throw FieldMismatch("entry field does not match matrix field");
    }
    entries_[(i - 1) * cols_ + (j - 1)] = std::move(value);
}

Matrix2 add(const Matrix2& a, const Matrix2& b) {
    check_same_spec(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch("cannot add " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
    }
    Matrix2 c(a.rows(), a.cols(), a.spec().zero());
    for (std::size_t i = 1; i <= a.rows(); ++i) {
        for (std::size_t j = 1; j <= a.cols(); ++j) {
            c.set_entry(i, j, a.entry(i, j) + b.entry(i, j));
        }
    }
    return c;
}

Matrix2 scale(const FieldElement& c, const Matrix2& a) {
    if (c.spec() != a.spec()) {
        throw FieldMismatch("scalar field does not match matrix field");
    }
    Matrix2 out(a.rows(), a.cols(), a.spec().zero());
    for (std::size_t i = 1; i <= a.rows(); ++i) {
        for (std::size_t j = 1; j <= a.cols(); ++j) {
            out.set_entry(i, j, c * a.entry(i, j));
        }
    }
    return out;
}

Matrix2 mul(const Matrix2& a, const Matrix2& b) {
    check_same_spec(a, b);
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("cannot multiply " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
    }
    Matrix2 c(a.rows(), b.cols(), a.spec().zero());
    for (std::size_t i = 1; i <= a.rows(); ++i) {
        for (std::size_t j = 1; j <= b.cols(); ++j) {
            FieldElement sum = a.spec().zero();
            for (std::size_t k = 1; k <= a.cols(); ++k) {
                sum = sum + a.entry(i, k) * b.entry(k, j);
            }
            c.set_entry(i, j, std::move(sum));
        }
    }
    return c;
}

Matrix2 transpose(const Matrix2& a) {
    Matrix2 t(a.cols(), a.rows(), a.spec().zero());
    for (std::size_t i = 1; i <= a.rows(); ++i) {
        for (std::size_t j = 1; j <= a.cols(); ++j) {
            t.set_entry(j, i, a.entry(i, j));
        }
    }
    return t;
}

FieldElement det_cofactor(const Matrix2& a) {
    check_square(a);
    const std::size_t n = a.rows();
    if (n == 1) return a.entry(1, 1);
    if (n == 2) {
        return a.entry(1, 1) * a.entry(2, 2) - a.entry(1, 2) * a.entry(2, 1);
    }
    FieldElement sum = a.spec().zero();
    FieldElement sign = a.spec().one();
    for (std::size_t j = 1; j <= n; ++j) {
        sum = sum + sign * a.entry(1, j) * det_cofactor(minor_of(a, 1, j));
        sign = -sign;
    }
    return sum;
}

FieldElement det_bareiss(const Matrix2& a) {
    check_square(a);
    const std::size_t n = a.rows();
    Matrix2 m = a;
    bool negate = false;
    FieldElement prev = a.spec().one();
    for (std::size_t k = 1; k < n; ++k) {
        if (m.entry(k, k).is_zero()) {
            std::size_t r = k + 1;
            while (r <= n && m.entry(r, k).is_zero()) ++r;
            if (r > n) return a.spec().zero();
            for (std::size_t j = 1; j <= n; ++j) {
                FieldElement tmp = m.entry(k, j);
                m.set_entry(k, j, m.entry(r, j));
                m.set_entry(r, j, std::move(tmp));
            }
            negate = !negate;
        }
        const FieldElement inv_prev = prev.inv();
        for (std::size_t i = k + 1; i <= n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                // One-step fraction-free update; the division by the previous
                // pivot is exact.
                FieldElement num =
                    m.entry(k, k) * m.entry(i, j) - m.entry(i, k) * m.entry(k, j);
                m.set_entry(i, j, num * inv_prev);
            }
            m.set_entry(i, k, a.spec().zero());
        }
        prev = m.entry(k, k);
    }
    FieldElement d = m.entry(n, n);
    return negate ? -d : d;
}

FieldElement det_partial_pivot(const Matrix2& a) {
    check_square(a);
    if (a.spec().kind() != FieldKind::Float) {
        throw FieldMismatch("partial-pivot determinant is the float-field path");
    }
    const std::size_t n = a.rows();
    const double tol = a.spec().tolerance();
    Matrix2 m = a;
    bool negate = false;
    double det_value = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        std::size_t best = k;
        double best_abs = std::fabs(m.entry(k, k).as_double());
        for (std::size_t r = k + 1; r <= n; ++r) {
            double v = std::fabs(m.entry(r, k).as_double());
            if (v > best_abs) {
                best = r;
                best_abs = v;
            }
        }
        if (best_abs <= tol) return a.spec().zero();
        if (best != k) {
            for (std::size_t j = 1; j <= n; ++j) {
                FieldElement tmp = m.entry(k, j);
                m.set_entry(k, j, m.entry(best, j));
                m.set_entry(best, j, std::move(tmp));
            }
            negate = !negate;
        }
        const double pivot = m.entry(k, k).as_double();
        det_value *= pivot;
        for (std::size_t i = k + 1; i <= n; ++i) {
            const double factor = m.entry(i, k).as_double() / pivot;
            for (std::size_t j = k; j <= n; ++j) {
                m.set_entry(i, j, a.spec().from_double(m.entry(i, j).as_double() -
                                                       factor * m.entry(k, j).as_double()));
            }
        }
    }
    return a.spec().from_double(negate ? -det_value : det_value);
}

FieldElement det(const Matrix2& a) {
    check_square(a);
    if (a.rows() <= 3) return det_cofactor(a);
    if (a.spec().kind() == FieldKind::Float) return det_partial_pivot(a);
    return det_bareiss(a);
}

FieldElement cofactor(const Matrix2& a, std::size_t i, std::size_t j) {
    check_square(a);
    const std::size_t n = a.rows();
    if (i < 1 || i > n || j < 1 || j > n) {
        throw IndexOutOfRange("cofactor index (" + std::to_string(i) + "," +
                              std::to_string(j) + ") outside " + std::to_string(n) + "x" +
                              std::to_string(n));
    }
    // The empty minor of a 1x1 matrix has determinant 1.
    if (n == 1) return a.spec().one();
    FieldElement c = det(minor_of(a, i, j));
    return ((i + j) % 2 == 0) ? c : -c;
}

Matrix2 cofactor_matrix(const Matrix2& a) {
    check_square(a);
    const std::size_t n = a.rows();
    Matrix2 out(n, n, a.spec().zero());
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            out.set_entry(i, j, cofactor(a, i, j));
        }
    }
    return out;
}

Matrix2 adjugate(const Matrix2& a) {
    return transpose(cofactor_matrix(a));
}

Matrix2 inverse_adjugate(const Matrix2& a) {
    check_square(a);
    FieldElement d = det(a);
    if (d.is_zero()) throw Singular();
    return scale(d.inv(), adjugate(a));
}

Matrix2 inverse_gauss(const Matrix2& a) {
    check_square(a);
    const std::size_t n = a.rows();
    const FieldSpec spec = a.spec();
    const bool approximate = spec.kind() == FieldKind::Float;

    // Augmented [A | I], eliminated in place.
    Matrix2 aug(n, 2 * n, spec.zero());
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) aug.set_entry(i, j, a.entry(i, j));
        aug.set_entry(i, n + i, spec.one());
    }

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        for (std::size_t j = 1; j <= 2 * n; ++j) {
            FieldElement tmp = aug.entry(r1, j);
            aug.set_entry(r1, j, aug.entry(r2, j));
            aug.set_entry(r2, j, std::move(tmp));
        }
    };

    for (std::size_t col = 1; col <= n; ++col) {
        std::size_t pivot_row = 0;
        if (approximate) {
            double best = spec.tolerance();
            for (std::size_t r = col; r <= n; ++r) {
                double v = std::fabs(aug.entry(r, col).as_double());
                if (v > best) {
                    best = v;
                    pivot_row = r;
                }
            }
        } else {
            for (std::size_t r = col; r <= n; ++r) {
                if (!aug.entry(r, col).is_zero()) {
                    pivot_row = r;
                    break;
                }
            }
        }
        if (pivot_row == 0) throw Singular();
        if (pivot_row != col) swap_rows(col, pivot_row);

        const FieldElement inv_pivot = aug.entry(col, col).inv();
        for (std::size_t j = 1; j <= 2 * n; ++j) {
            aug.set_entry(col, j, aug.entry(col, j) * inv_pivot);
        }
        for (std::size_t r = 1; r <= n; ++r) {
            if (r == col) continue;
            const FieldElement factor = aug.entry(r, col);
            if (factor.is_zero()) continue;
            for (std::size_t j = 1; j <= 2 * n; ++j) {
                aug.set_entry(r, j, aug.entry(r, j) - factor * aug.entry(col, j));
            }
        }
    }

    Matrix2 out(n, n, spec.zero());
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) out.set_entry(i, j, aug.entry(i, n + j));
    }
    return out;
}

bool identical(const Matrix2& a, const Matrix2& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t idx = 0; idx < a.entries().size(); ++idx) {
        if (!identical(a.entries()[idx], b.entries()[idx])) return false;
    }
    return true;
}

}  // namespace trimat
