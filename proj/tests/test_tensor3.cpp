#include <string>
#include <vector>

#include "doctest.h"

#include "trimat/grouplab.hpp"
#include "trimat/tensor3.hpp"

using namespace trimat;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

Matrix3 fixture_2x2x3() {
    return Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{1, 4}, {5, 3}}),
        Matrix2::from_ints(kQ, {{5, 0}, {9, 1}}),
        Matrix2::from_ints(kQ, {{2, 3}, {4, 5}}),
    });
}

Matrix3 fixture_3x3x2() {
    return Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{1, 2, 4}, {8, 1, 1}, {3, 1, 0}}),
        Matrix2::from_ints(kQ, {{3, 1, 5}, {0, 2, 1}, {1, 7, 4}}),
    });
}

Matrix2 mat_from_strs(const FieldSpec& spec,
                      const std::vector<std::vector<std::string>>& rows) {
    Matrix2 out(rows.size(), rows.front().size(), spec.zero());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            out.set_entry(i + 1, j + 1, spec.parse(rows[i][j]));
    return out;
}

MultiScalar ms_from_ints(const FieldSpec& spec,
                         const std::vector<long long>& vals) {
    std::vector<FieldElement> comps;
    for (long long v : vals) comps.push_back(spec.from_int(v));
    return MultiScalar(std::move(comps));
}

}  // namespace

TEST_CASE("multi-scalar action on a 2x2x3 matrix") {
    Matrix3 a = fixture_2x2x3();
    MultiScalar s = ms_from_ints(kQ, {3, 5, 2});
    Matrix3 expected = Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{3, 12}, {15, 9}}),
        Matrix2::from_ints(kQ, {{25, 0}, {45, 5}}),
        Matrix2::from_ints(kQ, {{4, 6}, {8, 10}}),
    });
    CHECK(identical(scale(s, a), expected));
    // Acting with all-ones changes nothing.
    CHECK(identical(scale(MultiScalar::ones(3, kQ), a), a));
    CHECK_THROWS_AS(scale(ms_from_ints(kQ, {3, 5}), a), DepthMismatch);
    CHECK_THROWS_AS(scale(ms_from_ints(FieldSpec::gf(7), {3, 5, 2}), a),
                    FieldMismatch);
}

TEST_CASE("det3 of the 2x2x3 fixture") {
    CHECK(identical(det3(fixture_2x2x3()), ms_from_ints(kQ, {-17, 5, -2})));
}

TEST_CASE("hat inverts componentwise") {
    MultiScalar s = ms_from_ints(kQ, {3, 5, 2});
    MultiScalar h = hat(s);
    CHECK(h.component(1).str() == "1/3");
    CHECK(h.component(2).str() == "1/5");
    CHECK(h.component(3).str() == "1/2");
    CHECK(identical(componentwise_mul(s, h), MultiScalar::ones(3, kQ)));
    CHECK(identical(hat(h), s));

    MultiScalar withzero = ms_from_ints(kQ, {3, 0, 2});
    CHECK_FALSE(absolutely_nonzero(withzero));
    CHECK(absolutely_nonzero(s));
    try {
        hat(withzero);
        FAIL("hat accepted a zero component");
    } catch (const NotAbsolutelyNonzero& e) {
        CHECK(e.component() == 2);
        CHECK(std::string(e.what()).find("component 2") != std::string::npos);
    }
}

TEST_CASE("the 3x3x2 worked example end to end") {
    Matrix3 a = fixture_3x3x2();
    CHECK(identical(det3(a), ms_from_ints(kQ, {25, -6})));

    Matrix3 cof_expected = Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{-1, 3, 5}, {4, -12, 5}, {-2, 31, -15}}),
        Matrix2::from_ints(kQ, {{1, 1, -2}, {31, 7, -20}, {-9, -3, 6}}),
    });
    Matrix3 adj = adjugate3(a);
    for (std::size_t k = 1; k <= 2; ++k)
        CHECK(identical(adj.layer(k), transpose(cof_expected.layer(k))));

    Matrix3 inv_expected = Matrix3::from_layers({
        mat_from_strs(kQ, {{"-1/25", "4/25", "-2/25"},
                           {"3/25", "-12/25", "31/25"},
                           {"1/5", "1/5", "-3/5"}}),
        mat_from_strs(kQ, {{"-1/6", "-31/6", "3/2"},
                           {"-1/6", "-7/6", "1/2"},
                           {"1/3", "10/3", "-1"}}),
    });
    Matrix3 inv = inverse3(a);
    CHECK(identical(inv, inv_expected));

    Matrix3 id = Matrix3::identity(3, 2, kQ);
    CHECK(identical(odot(a, inv), id));
    CHECK(identical(odot(inv, a), id));
    CHECK(identical(det3(inv), hat(det3(a))));
}

TEST_CASE("matrix3 shape accessors and validation") {
    Matrix3 a = fixture_3x3x2();
    CHECK(a.rows() == 3);
    CHECK(a.cols() == 3);
    CHECK(a.depth() == 2);
    CHECK(a.has_square_layers());
    CHECK(identical(a.layer(2),
                    Matrix2::from_ints(kQ, {{3, 1, 5}, {0, 2, 1}, {1, 7, 4}})));
    CHECK(identical(Matrix3::from_layers({a.layer(1), a.layer(2)}), a));
    Matrix3 single = Matrix3::from_layers({a.layer(1)});
    CHECK(single.depth() == 1);
    CHECK(identical(single.layer(1), a.layer(1)));
    CHECK_THROWS_AS(a.layer(0), IndexOutOfRange);
    CHECK_THROWS_AS(a.layer(3), IndexOutOfRange);
    CHECK_THROWS_AS(Matrix3::from_layers({}), ShapeMismatch);
    CHECK_THROWS_AS(
        Matrix3::from_layers({Matrix2::zero(2, 2, kQ), Matrix2::zero(2, 3, kQ)}),
        ShapeMismatch);
    CHECK_THROWS_AS(
        Matrix3::from_layers({Matrix2::zero(2, 2, kQ),
                              Matrix2::zero(2, 2, FieldSpec::gf(7))}),
        FieldMismatch);

    Matrix3 r = Matrix3::zero(2, 4, 3, kQ);
    CHECK_FALSE(r.has_square_layers());
    CHECK_THROWS_AS(det3(r), NotSquare);
    CHECK_THROWS_AS(odot(r, r), NotSquare);
    CHECK_THROWS_AS(adjugate3(r), NotSquare);
}

TEST_CASE("addition is entrywise across layers") {
    Matrix3 a = fixture_2x2x3();
    Matrix3 sum = add(a, a);
    Matrix3 expected = scale(ms_from_ints(kQ, {2, 2, 2}), a);
    CHECK(identical(sum, expected));
    CHECK(identical(a + negate(a), Matrix3::zero(2, 2, 3, kQ)));
    CHECK_THROWS_AS(add(a, Matrix3::zero(2, 2, 2, kQ)), ShapeMismatch);
    CHECK_THROWS_AS(add(a, Matrix3::zero(3, 2, 3, kQ)), ShapeMismatch);
}

TEST_CASE("odot multiplies layer by layer") {
    Matrix3 a = fixture_3x3x2();
    Matrix3 id = Matrix3::identity(3, 2, kQ);
    CHECK(identical(odot(a, id), a));
    CHECK(identical(odot(id, a), a));
    Matrix3 sq = odot(a, a);
    for (std::size_t k = 1; k <= 2; ++k)
        CHECK(identical(sq.layer(k), mul(a.layer(k), a.layer(k))));
    // Depth is part of the 3D shape, so a depth clash between two matrices
    // reports as a shape mismatch; DepthMismatch is for multi-scalar action.
    CHECK_THROWS_AS(odot(a, Matrix3::identity(3, 3, kQ)), ShapeMismatch);
    CHECK_THROWS_AS(odot(a, Matrix3::identity(2, 2, kQ)), ShapeMismatch);

    // det3 is multiplicative over the layer-wise product.
    CHECK(identical(det3(sq), componentwise_mul(det3(a), det3(a))));
}

TEST_CASE("inverse3 reports every singular layer") {
    Matrix3 bad = Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{1, 0}, {0, 1}}),
        Matrix2::from_ints(kQ, {{1, 2}, {2, 4}}),
        Matrix2::from_ints(kQ, {{0, 0}, {0, 0}}),
    });
    try {
        inverse3(bad);
        FAIL("inverse3 accepted a singular matrix");
    } catch (const Singular& e) {
        CHECK(e.layers() == std::vector<std::size_t>{2, 3});
        std::string msg = e.what();
        CHECK(msg.find("2, 3") != std::string::npos);
        CHECK(msg.find("layer") != std::string::npos);
    }
    CHECK_FALSE(absolutely_nonzero(det3(bad)));
}

TEST_CASE("multi-scalars convert to and from 1x1xp matrices") {
    MultiScalar s = ms_from_ints(kQ, {3, 5, 2});
    Matrix3 m = s.to_matrix3();
    CHECK(m.rows() == 1);
    CHECK(m.cols() == 1);
    CHECK(m.depth() == 3);
    CHECK(identical(MultiScalar::from_matrix3(m), s));
    CHECK_THROWS_AS(MultiScalar::from_matrix3(fixture_2x2x3()), ShapeMismatch);
    CHECK_THROWS_AS(MultiScalar(std::vector<FieldElement>{}), ShapeMismatch);
    CHECK_THROWS_AS(s.component(0), IndexOutOfRange);
    CHECK_THROWS_AS(s.component(4), IndexOutOfRange);

    // At n=1 the layer-wise product is the componentwise product.
    MultiScalar t = ms_from_ints(kQ, {7, -1, 4});
    CHECK(identical(MultiScalar::from_matrix3(odot(s.to_matrix3(), t.to_matrix3())),
                    componentwise_mul(s, t)));
    CHECK(identical(det3(s.to_matrix3()), s));
}

TEST_CASE("adjugate3 identity holds even for singular layers") {
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::gf(5), FieldSpec::gf(7)}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            Matrix3 a = sample_matrix3(3, 2, spec, 4200 + s);
            Matrix3 lhs = odot(a, adjugate3(a));
            Matrix3 rhs = scale(det3(a), Matrix3::identity(3, 2, spec));
            CHECK(identical(lhs, rhs));
        }
    }
}

TEST_CASE("zero and identity are the neutral elements") {
    FieldSpec f2 = FieldSpec::gf(2);
    Matrix3 id = Matrix3::identity(2, 2, f2);
    for (std::size_t k = 1; k <= 2; ++k)
        CHECK(identical(id.layer(k), Matrix2::identity(2, f2)));
    CHECK(identical(det3(Matrix3::identity(3, 4, kQ)), MultiScalar::ones(4, kQ)));
    CHECK(absolutely_nonzero(det3(Matrix3::identity(2, 3, FieldSpec::gf(5)))));
    CHECK(identical(det3(Matrix3::zero(2, 2, 3, kQ)), MultiScalar::zero(3, kQ)));
    CHECK(identical(inverse3(Matrix3::identity(3, 2, kQ)),
                    Matrix3::identity(3, 2, kQ)));

    // Addition and the multi-scalar action also cover rectangular layers.
    Matrix3 r = Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{1, -2, 3}, {0, 4, 7}}),
        Matrix2::from_ints(kQ, {{5, 6, 0}, {-1, 2, 9}}),
    });
    CHECK(identical(add(Matrix3::zero(2, 3, 2, kQ), r), r));
    CHECK(identical(r + negate(r), Matrix3::zero(2, 3, 2, kQ)));

    Matrix3 b = sample_matrix3(2, 2, f2, 17);
    CHECK(identical(add(b, b), Matrix3::zero(2, 2, 2, f2)));
}

TEST_CASE("scalar action is invertible for absolutely nonzero scalars") {
    Matrix3 a = fixture_2x2x3();
    MultiScalar s = ms_from_ints(kQ, {3, -5, 7});
    CHECK(identical(scale(hat(s), scale(s, a)), a));
    CHECK(identical(scale(MultiScalar::zero(3, kQ), a),
                    Matrix3::zero(2, 2, 3, kQ)));

    Matrix3 r = Matrix3::from_layers({
        Matrix2::from_ints(kQ, {{1, -2, 3}, {0, 4, 7}}),
        Matrix2::from_ints(kQ, {{5, 6, 0}, {-1, 2, 9}}),
    });
    MultiScalar t = ms_from_ints(kQ, {2, -3});
    CHECK(identical(scale(hat(t), scale(t, r)), r));
}

TEST_CASE("componentwise products of multi-scalars") {
    CHECK(identical(componentwise_mul(ms_from_ints(kQ, {-6, 25}),
                                      ms_from_ints(kQ, {25, -6})),
                    ms_from_ints(kQ, {-150, -150})));
    MultiScalar d = ms_from_ints(kQ, {-2, 5, -17});
    CHECK(identical(componentwise_mul(d, MultiScalar::ones(3, kQ)), d));
    CHECK(identical(componentwise_mul(d, MultiScalar::zero(3, kQ)),
                    MultiScalar::zero(3, kQ)));
    CHECK_FALSE(absolutely_nonzero(ms_from_ints(kQ, {2, 0, 3})));
    CHECK_FALSE(absolutely_nonzero(MultiScalar::zero(3, kQ)));
    CHECK_THROWS_AS(componentwise_mul(d, ms_from_ints(kQ, {1, 2})),
                    DepthMismatch);
}

TEST_CASE("odot on 1x1 layers is componentwise modular multiplication") {
    FieldSpec f3 = FieldSpec::gf(3);
    Matrix3 a = Matrix3::from_layers({Matrix2::from_ints(f3, {{2}}),
                                      Matrix2::from_ints(f3, {{2}})});
    Matrix3 b = Matrix3::from_layers({Matrix2::from_ints(f3, {{2}}),
                                      Matrix2::from_ints(f3, {{1}})});
    Matrix3 expected = Matrix3::from_layers({Matrix2::from_ints(f3, {{1}}),
                                             Matrix2::from_ints(f3, {{2}})});
    CHECK(identical(odot(a, b), expected));
}

TEST_CASE("adjugate3 of the identity and of 1x1 layers") {
    CHECK(identical(adjugate3(Matrix3::identity(3, 2, kQ)),
                    Matrix3::identity(3, 2, kQ)));
    Matrix3 tiny = Matrix3::from_layers({Matrix2::from_ints(kQ, {{7}}),
                                         Matrix2::from_ints(kQ, {{-2}}),
                                         Matrix2::from_ints(kQ, {{0}})});
    Matrix3 ones = Matrix3::from_layers({Matrix2::from_ints(kQ, {{1}}),
                                         Matrix2::from_ints(kQ, {{1}}),
                                         Matrix2::from_ints(kQ, {{1}})});
    CHECK(identical(adjugate3(tiny), ones));
}

TEST_CASE("inverse3 is an involution on invertible samples") {
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::gf(5), FieldSpec::gf(7)}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            Matrix3 a = sample_gl(3, 2, spec, 7000 + s);
            Matrix3 inv = inverse3(a);
            CHECK(identical(inverse3(inv), a));
            for (std::size_t k = 1; k <= a.depth(); ++k)
                CHECK(identical(inv.layer(k), inverse_gauss(a.layer(k))));
        }
    }
    FieldSpec fl = FieldSpec::floating(1e-9);
    Matrix3 a = sample_gl(2, 3, fl, 7100);
    CHECK(equal(inverse3(inverse3(a)), a));
}

TEST_CASE("odot and add factor through the layers") {
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::gf(2), FieldSpec::gf(7),
          FieldSpec::floating(1e-9)}) {
        for (std::uint64_t s = 0; s < 200; ++s) {
            Matrix3 a = sample_matrix3(3, 2, spec, mix_seed(8000 + s, 0));
            Matrix3 b = sample_matrix3(3, 2, spec, mix_seed(8000 + s, 1));
            Matrix3 prod = odot(a, b);
            Matrix3 sum = add(a, b);
            for (std::size_t k = 1; k <= 2; ++k) {
                CHECK(identical(prod.layer(k), mul(a.layer(k), b.layer(k))));
                CHECK(identical(sum.layer(k), add(a.layer(k), b.layer(k))));
            }
            MultiScalar lhs = det3(prod);
            MultiScalar rhs = componentwise_mul(det3(a), det3(b));
            if (spec.kind() == FieldKind::Float)
                CHECK(equal(lhs, rhs));
            else
                CHECK(identical(lhs, rhs));
        }
    }
}

TEST_CASE("float tensors compare at tolerance") {
    FieldSpec fl = FieldSpec::floating(1e-9);
    Matrix3 a = sample_gl(3, 2, fl, 99);
    Matrix3 inv = inverse3(a);
    Matrix3 id = Matrix3::identity(3, 2, fl);
    CHECK(equal(odot(a, inv), id));
    CHECK(equal(odot(inv, a), id));
    CHECK(equal(det3(inv), hat(det3(a))));
    // equal() tolerates representation differences that identical() rejects.
    CHECK_FALSE(equal(a, Matrix3::zero(3, 2, 2, fl)));
    CHECK_FALSE(equal(a, Matrix3::zero(3, 3, 3, fl)));
}
