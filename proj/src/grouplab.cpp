#include "trimat/grouplab.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <utility>

#include "trimat/errors.hpp"
#include "trimat/textio.hpp"

namespace trimat {

namespace {

std::string compact(const Matrix3& m) {
    return serialize(m, Layout::Compact);
}

FieldElement sample_element(const FieldSpec& spec, Rng& rng) {
    switch (spec.kind()) {
        case FieldKind::Rational: {
            FieldElement num = spec.from_int(rng.range(-9, 9));
            FieldElement den = spec.from_int(rng.range(1, 9));
            return num * den.inv();
        }
        case FieldKind::Prime:
            return spec.from_int(
                static_cast<long long>(rng.below(spec.modulus())));
        case FieldKind::Float:
            return spec.from_double(static_cast<double>(rng.range(-9, 9)));
    }
    throw Error("unreachable field kind");
}

Matrix2 sample_layer(std::size_t rows, std::size_t cols, const FieldSpec& spec,
                     Rng& rng) {
    Matrix2 out(rows, cols, spec.zero());
    for (std::size_t i = 1; i <= rows; ++i)
        for (std::size_t j = 1; j <= cols; ++j)
            out.set_entry(i, j, sample_element(spec, rng));
    return out;
}

// Runs `body(i, witness)` over all sample indices in parallel; body returns
// false (or throws a trimat::Error) to record a failure. Witnesses are
// merged in sample order, so output is independent of the schedule.
template <typename Body>
VerificationReport run_property(std::string property, std::uint64_t samples,
                                Body&& body) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.property = std::move(property);
    rep.samples = samples;

    std::vector<std::pair<std::uint64_t, std::string>> fails;
    const std::int64_t count = static_cast<std::int64_t>(samples);
    std::uint64_t failures = 0;
#pragma omp parallel for schedule(static) reduction(+ : failures)
    for (std::int64_t i = 0; i < count; ++i) {
        std::string witness;
        bool ok = true;
        try {
            ok = body(static_cast<std::uint64_t>(i), witness);
        } catch (const Error& e) {
            ok = false;
            witness = std::string("exception: ") + e.what();
        }
        if (!ok) {
            ++failures;
#pragma omp critical(trimat_witness_merge)
            fails.emplace_back(static_cast<std::uint64_t>(i), witness);
        }
    }
    rep.failures = failures;
    std::sort(fails.begin(), fails.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0;
         i < fails.size() && i < VerificationReport::kMaxWitnesses; ++i)
        rep.witnesses.push_back("sample " + std::to_string(fails[i].first) +
                                ": " + fails[i].second);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

}  // namespace

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::below requires a nonzero bound");
    // Rejection from the top keeps the draw exactly uniform.
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span =
        static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    Rng g(seed ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    return g.next();
}

Matrix3 sample_matrix3(std::size_t n, std::size_t p, const FieldSpec& spec,
                       std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix2> layers;
    layers.reserve(p);
    for (std::size_t k = 0; k < p; ++k)
        layers.push_back(sample_layer(n, n, spec, rng));
    return Matrix3::from_layers(std::move(layers));
}

Matrix3 sample_gl(std::size_t n, std::size_t p, const FieldSpec& spec,
                  std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix2> layers;
    layers.reserve(p);
    for (std::size_t k = 1; k <= p; ++k) {
        bool found = false;
        for (std::size_t attempt = 0; attempt <= kRedrawBudget; ++attempt) {
            Matrix2 layer = sample_layer(n, n, spec, rng);
            if (!det(layer).is_zero()) {
                layers.push_back(std::move(layer));
                found = true;
                break;
            }
        }
        if (!found)
            throw SamplingExhausted(
                "no nonsingular layer " + std::to_string(k) + " found in " +
                std::to_string(kRedrawBudget) + " redraws over " + spec.str());
    }
    return Matrix3::from_layers(std::move(layers));
}

VerificationReport verify_abelian_group_add(std::size_t n, std::size_t p,
                                            const FieldSpec& spec,
                                            std::uint64_t samples,
                                            std::uint64_t seed,
                                            const AddOps& ops) {
    return run_property("add-group", samples, [&](std::uint64_t i,
                                                  std::string& witness) {
        std::uint64_t base = mix_seed(seed, i);
        Matrix3 a = sample_matrix3(n, p, spec, mix_seed(base, 1));
        Matrix3 b = sample_matrix3(n, p, spec, mix_seed(base, 2));
        Matrix3 c = sample_matrix3(n, p, spec, mix_seed(base, 3));
        Matrix3 zero = Matrix3::zero(n, n, p, spec);
        if (!equal(ops.add(ops.add(a, b), c), ops.add(a, ops.add(b, c)))) {
            witness = "associativity: A=" + compact(a) + " B=" + compact(b) +
                      " C=" + compact(c);
            return false;
        }
        if (!equal(ops.add(a, b), ops.add(b, a))) {
            witness = "commutativity: A=" + compact(a) + " B=" + compact(b);
            return false;
        }
        if (!equal(ops.add(a, zero), a)) {
            witness = "zero identity: A=" + compact(a);
            return false;
        }
        if (!equal(ops.add(a, ops.negate(a)), zero)) {
            witness = "additive inverse: A=" + compact(a);
            return false;
        }
        return true;
    });
}

VerificationReport verify_semigroup_odot(std::size_t n, std::size_t p,
                                         const FieldSpec& spec,
                                         std::uint64_t samples,
                                         std::uint64_t seed) {
    return run_property("semigroup", samples, [&](std::uint64_t i,
                                                  std::string& witness) {
        std::uint64_t base = mix_seed(seed, i);
        Matrix3 a = sample_matrix3(n, p, spec, mix_seed(base, 1));
        Matrix3 b = sample_matrix3(n, p, spec, mix_seed(base, 2));
        Matrix3 c = sample_matrix3(n, p, spec, mix_seed(base, 3));
        Matrix3 id = Matrix3::identity(n, p, spec);
        if (!equal(odot(odot(a, b), c), odot(a, odot(b, c)))) {
            witness = "associativity: A=" + compact(a) + " B=" + compact(b) +
                      " C=" + compact(c);
            return false;
        }
        if (!equal(odot(a, id), a) || !equal(odot(id, a), a)) {
            witness = "identity: A=" + compact(a);
            return false;
        }
        return true;
    });
}

VerificationReport verify_gl_closure(std::size_t n, std::size_t p,
                                     const FieldSpec& spec,
                                     std::uint64_t samples,
                                     std::uint64_t seed) {
    return run_property("closure", samples, [&](std::uint64_t i,
                                                std::string& witness) {
        std::uint64_t base = mix_seed(seed, i);
        Matrix3 a = sample_gl(n, p, spec, mix_seed(base, 1));
        Matrix3 b = sample_gl(n, p, spec, mix_seed(base, 2));
        Matrix3 ab = odot(a, b);
        MultiScalar dab = det3(ab);
        if (!absolutely_nonzero(dab)) {
            witness = "product left the group: A=" + compact(a) +
                      " B=" + compact(b);
            return false;
        }
        if (!equal(dab, componentwise_mul(det3(a), det3(b)))) {
            witness = "determinant not multiplicative: A=" + compact(a) +
                      " B=" + compact(b);
            return false;
        }
        return true;
    });
}

VerificationReport verify_group_gl(std::size_t n, std::size_t p,
                                   const FieldSpec& spec,
                                   std::uint64_t samples, std::uint64_t seed) {
    return run_property("gl-group", samples, [&](std::uint64_t i,
                                                 std::string& witness) {
        std::uint64_t base = mix_seed(seed, i);
        Matrix3 a = sample_gl(n, p, spec, mix_seed(base, 1));
        Matrix3 inv = inverse3(a);
        Matrix3 id = Matrix3::identity(n, p, spec);
        if (!equal(odot(a, inv), id) || !equal(odot(inv, a), id)) {
            witness = "two-sided inverse: A=" + compact(a) +
                      " Ainv=" + compact(inv);
            return false;
        }
        if (!equal(det3(inv), hat(det3(a)))) {
            witness = "det3 of inverse: A=" + compact(a);
            return false;
        }
        return true;
    });
}

std::string VerificationReport::text(bool include_elapsed) const {
    std::ostringstream os;
    os << "property: " << property << '\n';
    os << "samples: " << samples << '\n';
    os << "failures: " << failures << '\n';
    for (const std::string& w : witnesses) os << "witness: " << w << '\n';
    if (include_elapsed)
        os << "elapsed: " << std::fixed << std::setprecision(3)
           << elapsed_seconds << "s\n";
    return os.str();
}

nlohmann::ordered_json VerificationReport::to_json(bool include_elapsed) const {
    nlohmann::ordered_json j;
    j["property"] = property;
    j["samples"] = samples;
    j["failures"] = failures;
    j["witnesses"] = witnesses;
    if (include_elapsed) j["elapsed_seconds"] = elapsed_seconds;
    return j;
}

Matrix3 matrix3_from_index(std::size_t n, std::size_t p, const FieldSpec& spec,
                           std::uint64_t index) {
    if (spec.kind() != FieldKind::Prime)
        throw FieldMismatch("matrix3_from_index requires a finite field");
    const std::uint64_t q = spec.modulus();
    std::vector<Matrix2> layers;
    layers.reserve(p);
    std::uint64_t rem = index;
    for (std::size_t k = 0; k < p; ++k) {
        Matrix2 layer(n, n, spec.zero());
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                layer.set_entry(i, j,
                                spec.from_int(static_cast<long long>(rem % q)));
                rem /= q;
            }
        layers.push_back(std::move(layer));
    }
    return Matrix3::from_layers(std::move(layers));
}

namespace {

GlCensus census_impl(std::size_t n, std::size_t p, std::uint32_t q,
                     bool parallel) {
    FieldSpec spec = FieldSpec::gf(q);
    const std::uint64_t cells =
        static_cast<std::uint64_t>(n) * n * static_cast<std::uint64_t>(p);
    std::uint64_t total = 1;
    for (std::uint64_t c = 0; c < cells; ++c) {
        if (total > kCensusCap / q)
            throw EnumerationTooLarge(
                "census over gf " + std::to_string(q) + " with n=" +
                std::to_string(n) + " p=" + std::to_string(p) +
                " exceeds the enumeration cap");
        total *= q;
    }

    auto is_gl = [&](std::uint64_t idx) {
        Matrix3 a = matrix3_from_index(n, p, spec, idx);
        for (std::size_t k = 1; k <= p; ++k)
            if (det(a.layer(k)).is_zero()) return false;
        return true;
    };

    std::uint64_t gl = 0;
    const std::int64_t count = static_cast<std::int64_t>(total);
    if (parallel) {
#pragma omp parallel for schedule(static) reduction(+ : gl)
        for (std::int64_t i = 0; i < count; ++i)
            gl += is_gl(static_cast<std::uint64_t>(i)) ? 1 : 0;
    } else {
        for (std::int64_t i = 0; i < count; ++i)
            gl += is_gl(static_cast<std::uint64_t>(i)) ? 1 : 0;
    }

    // |GL(n,q)|^p, a closed form the enumeration must reproduce.
    std::uint64_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    std::uint64_t gl1 = 1;
    std::uint64_t qi = 1;
    for (std::size_t i = 0; i < n; ++i) {
        gl1 *= qn - qi;
        qi *= q;
    }
    std::uint64_t expect = 1;
    for (std::size_t k = 0; k < p; ++k) expect *= gl1;
    if (gl != expect)
        throw Error("census enumeration disagrees with the order formula: " +
                    std::to_string(gl) + " vs " + std::to_string(expect));

    return GlCensus{n, p, q, total, gl};
}

}  // namespace

GlCensus census_gl(std::size_t n, std::size_t p, std::uint32_t q) {
    return census_impl(n, p, q, true);
}

namespace serial {
GlCensus census_gl(std::size_t n, std::size_t p, std::uint32_t q) {
    return census_impl(n, p, q, false);
}
}  // namespace serial

std::string GlCensus::text() const {
    return "total=" + std::to_string(total) + " gl=" + std::to_string(gl);
}

nlohmann::ordered_json GlCensus::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["p"] = p;
    j["q"] = q;
    j["total"] = total;
    j["gl"] = gl;
    return j;
}

}  // namespace trimat
