#ifdef _OPENMP
#include <omp.h>
#endif

#include <vector>

#include "doctest.h"

#include "doc_gen.hpp"
#include "trimat/grouplab.hpp"
#include "trimat/tensor3.hpp"

using namespace trimat;

namespace {

// Force more threads than cores so the parallel paths really interleave.
struct ThreadSetup {
    ThreadSetup() {
#ifdef _OPENMP
        omp_set_num_threads(4);
#endif
    }
} const thread_setup;

Matrix3 random_rect(std::size_t m, std::size_t n, std::size_t p,
                    const FieldSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix2> layers;
    for (std::size_t k = 0; k < p; ++k)
        layers.push_back(testgen::random_layer(m, n, spec, rng));
    return Matrix3::from_layers(std::move(layers));
}

}  // namespace

TEST_CASE("parallel kernels are bitwise identical to the serial reference") {
    std::vector<FieldSpec> fields = {FieldSpec::rationals(), FieldSpec::gf(7),
                                     FieldSpec::floating()};
    struct Shape { std::size_t n, p; };
    std::vector<Shape> shapes = {{1, 1}, {2, 2}, {3, 5}, {4, 1}, {2, 17}};

    for (const FieldSpec& spec : fields) {
        for (const Shape& s : shapes) {
            Matrix3 a = sample_matrix3(s.n, s.p, spec, 100 + s.n * 10 + s.p);
            Matrix3 b = sample_matrix3(s.n, s.p, spec, 200 + s.n * 10 + s.p);
            MultiScalar ms = det3(sample_gl(1, s.p, spec, 300 + s.p));

            CHECK(identical(add(a, b), serial::add(a, b)));
            CHECK(identical(negate(a), serial::negate(a)));
            CHECK(identical(odot(a, b), serial::odot(a, b)));
            CHECK(identical(scale(ms, a), serial::scale(ms, a)));
            CHECK(identical(det3(a), serial::det3(a)));
            CHECK(identical(adjugate3(a), serial::adjugate3(a)));

            Matrix3 g = sample_gl(s.n, s.p, spec, 400 + s.n * 10 + s.p);
            CHECK(identical(inverse3(g), serial::inverse3(g)));
        }
    }
}

TEST_CASE("rectangular stacks take the same parallel path") {
    for (const FieldSpec& spec : {FieldSpec::rationals(), FieldSpec::gf(5),
                                  FieldSpec::floating()}) {
        Matrix3 a = random_rect(2, 5, 7, spec, 31);
        Matrix3 b = random_rect(2, 5, 7, spec, 32);
        CHECK(identical(add(a, b), serial::add(a, b)));
        CHECK(identical(negate(a), serial::negate(a)));
        MultiScalar ms = det3(sample_gl(1, 7, spec, 33));
        CHECK(identical(scale(ms, a), serial::scale(ms, a)));
    }
}

TEST_CASE("parallel failure collection is deterministic") {
    FieldSpec q = FieldSpec::rationals();
    AddOps broken;
    broken.negate = [](const Matrix3& a) { return a; };
    VerificationReport r1 = verify_abelian_group_add(2, 3, q, 64, 17, broken);
    VerificationReport r2 = verify_abelian_group_add(2, 3, q, 64, 17, broken);
    CHECK(r1.failures == r2.failures);
    CHECK(r1.witnesses == r2.witnesses);
    CHECK(r1.text() == r2.text());

    VerificationReport ok1 = verify_group_gl(2, 2, FieldSpec::gf(7), 80, 5);
    VerificationReport ok2 = verify_group_gl(2, 2, FieldSpec::gf(7), 80, 5);
    CHECK(ok1.text() == ok2.text());
    CHECK(ok1.to_json() == ok2.to_json());
}

TEST_CASE("parallel census equals the serial census") {
    GlCensus par = census_gl(2, 2, 3);
    GlCensus ser = serial::census_gl(2, 2, 3);
    CHECK(par.total == ser.total);
    CHECK(par.gl == ser.gl);
    CHECK(par.text() == ser.text());
}

TEST_CASE("singular layers surface identically from parallel inverse") {
    FieldSpec q = FieldSpec::rationals();
    Matrix3 bad = Matrix3::from_layers({
        Matrix2::from_ints(q, {{1, 2}, {2, 4}}),
        Matrix2::identity(2, q),
        Matrix2::from_ints(q, {{0, 0}, {0, 0}}),
    });
    std::vector<std::size_t> par_layers, ser_layers;
    try {
        inverse3(bad);
    } catch (const Singular& e) {
        par_layers = e.layers();
    }
    try {
        serial::inverse3(bad);
    } catch (const Singular& e) {
        ser_layers = e.layers();
    }
    CHECK(par_layers == std::vector<std::size_t>{1, 3});
    CHECK(par_layers == ser_layers);
}
