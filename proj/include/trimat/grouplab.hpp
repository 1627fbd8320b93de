#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "trimat/tensor3.hpp"

namespace trimat {

// Outcome of one randomized property check. `witnesses` holds serialized
// counterexamples for the first few failing samples (in sample order), so a
// failure can be replayed by hand.
struct VerificationReport {
    static constexpr std::size_t kMaxWitnesses = 5;

    std::string property;
    std::uint64_t samples = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> witnesses;
    double elapsed_seconds = 0.0;

    bool passed() const { return failures == 0; }

    // Line-oriented block. Elapsed time is off by default so that repeated
    // runs with the same seed print identical bytes.
    std::string text(bool include_elapsed = false) const;
    nlohmann::ordered_json to_json(bool include_elapsed = false) const;
};

// Deterministic 64-bit generator (splitmix64). Self-contained so that
// sampled streams are reproducible across platforms and standard library
// versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    // Uniform draw from [0, bound) by rejection; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);
    // Uniform draw from [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

// Derives an independent per-stream seed; used to give each sample index its
// own generator so parallel and serial runs draw identical values.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Random n-by-n-by-p matrix. Finite fields draw residues uniformly;
// rationals draw numerators in [-9,9] and denominators in [1,9]; the float
// field draws small integer values, which keeps test matrices
// well-conditioned.
Matrix3 sample_matrix3(std::size_t n, std::size_t p, const FieldSpec& spec,
                       std::uint64_t seed);

// Random element of GL(n,n,p): every layer is redrawn until its determinant
// is nonzero, with at most `kRedrawBudget` redraws per layer before
// SamplingExhausted.
Matrix3 sample_gl(std::size_t n, std::size_t p, const FieldSpec& spec,
                  std::uint64_t seed);

inline constexpr std::size_t kRedrawBudget = 1000;

// Hooks for the addition laws; tests substitute a broken operation to prove
// the verifier can fail.
struct AddOps {
    std::function<Matrix3(const Matrix3&, const Matrix3&)> add =
        [](const Matrix3& a, const Matrix3& b) { return trimat::add(a, b); };
    std::function<Matrix3(const Matrix3&)> negate =
        [](const Matrix3& a) { return trimat::negate(a); };
};

// Addition on n-by-n-by-p matrices is an abelian group: associativity,
// commutativity, zero identity, additive inverse.
VerificationReport verify_abelian_group_add(std::size_t n, std::size_t p,
                                            const FieldSpec& spec,
                                            std::uint64_t samples,
                                            std::uint64_t seed,
                                            const AddOps& ops = AddOps{});

// Layer-wise multiplication on square matrices is a monoid: associativity
// and two-sided identity.
VerificationReport verify_semigroup_odot(std::size_t n, std::size_t p,
                                         const FieldSpec& spec,
                                         std::uint64_t samples,
                                         std::uint64_t seed);

// Products of invertible matrices stay invertible, and the determinant is
// multiplicative component by component.
VerificationReport verify_gl_closure(std::size_t n, std::size_t p,
                                     const FieldSpec& spec,
                                     std::uint64_t samples,
                                     std::uint64_t seed);

// Group laws in GL(n,n,p): two-sided inverses against the identity, and
// det3(inverse) equal to hat(det3).
VerificationReport verify_group_gl(std::size_t n, std::size_t p,
                                   const FieldSpec& spec,
                                   std::uint64_t samples, std::uint64_t seed);

// Exhaustive count of GL(n,n,p) over GF(q).
struct GlCensus {
    std::size_t n;
    std::size_t p;
    std::uint32_t q;
    std::uint64_t total;  // q^(n*n*p)
    std::uint64_t gl;     // matrices whose every layer is nonsingular

    std::string text() const;
    nlohmann::ordered_json to_json() const;
};

// Enumeration cap: censuses with q^(n*n*p) above this throw
// EnumerationTooLarge.
inline constexpr std::uint64_t kCensusCap = std::uint64_t{1} << 20;

// Decodes an enumeration index into a matrix: base-q digits fill entries
// layer by layer, rows within a layer, columns within a row, least
// significant digit first.
Matrix3 matrix3_from_index(std::size_t n, std::size_t p, const FieldSpec& spec,
                           std::uint64_t index);

GlCensus census_gl(std::size_t n, std::size_t p, std::uint32_t q);

namespace serial {
GlCensus census_gl(std::size_t n, std::size_t p, std::uint32_t q);
}

}  // namespace trimat
