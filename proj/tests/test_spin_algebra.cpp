#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/spin_algebra.hpp"
#include "support/test_states.hpp"

using namespace dicke;

TEST_CASE("build_sector dimensions and validation") {
    CHECK(build_sector(0.5).dim == 2);
    CHECK(build_sector(100.0).dim == 201);
    CHECK(build_sector(1.5).dim == 4);
    CHECK_THROWS_AS(build_sector(0.3), std::invalid_argument);
    CHECK_THROWS_AS(build_sector(0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_sector(-1.0), std::invalid_argument);
}

TEST_CASE("basis index map is a bijection") {
    const SpinSector sec = build_sector(2.5);
    for (int i = 0; i < sec.dim; ++i) {
        CHECK(sec.index_of_m(sec.m_of_index(i)) == i);
    }
    CHECK(sec.m_of_index(0) == doctest::Approx(-2.5));
    CHECK(sec.m_of_index(sec.dim - 1) == doctest::Approx(2.5));
}

TEST_CASE("spin-1/2 operators") {
    const SpinOperatorSet ops = build_operators(build_sector(0.5));
    CHECK(ops.sz(0, 0) == Complex(-0.5, 0.0));
    CHECK(ops.sz(1, 1) == Complex(0.5, 0.0));
    // single ladder entry connecting m = -1/2 to m = +1/2
    CHECK(ops.s_plus(1, 0) == Complex(1.0, 0.0));
    CHECK(ops.s_plus.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("spin-1 lowering coefficients") {
    const SpinOperatorSet ops = build_operators(build_sector(1.0));
    // S_-|S,m> = sqrt(2) |S,m-1> for m = 0, 1
    ComplexVector e_m0 = ComplexVector::Zero(3), e_m1 = ComplexVector::Zero(3);
    e_m0(1) = 1.0;
    e_m1(2) = 1.0;
    CHECK((ops.s_minus * e_m1 - std::sqrt(2.0) * e_m0).norm() < 1e-15);
    CHECK((ops.s_minus * e_m0).cwiseAbs().maxCoeff() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("operator algebra invariants across sectors") {
    for (double s : {0.5, 1.0, 1.5, 5.0, 50.0}) {
        CAPTURE(s);
        const SpinOperatorSet ops = build_operators(build_sector(s));
        const int d = ops.sector.dim;
        REQUIRE(d == static_cast<int>(2 * s) + 1);
        // Hermiticity and ladder adjoints
        CHECK((ops.sx - ops.sx.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((ops.sy - ops.sy.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((ops.sz - ops.sz.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((ops.s_plus - ops.s_minus.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        // [sx, sy] = i sz and cyclic
        CHECK((ops.sx * ops.sy - ops.sy * ops.sx - Complex(0, 1) * ops.sz).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((ops.sy * ops.sz - ops.sz * ops.sy - Complex(0, 1) * ops.sx).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((ops.sz * ops.sx - ops.sx * ops.sz - Complex(0, 1) * ops.sy).cwiseAbs().maxCoeff() <
              1e-12);
        // Casimir
        const ComplexMatrix casimir = ops.sx * ops.sx + ops.sy * ops.sy + ops.sz * ops.sz;
        CHECK((casimir - s * (s + 1.0) * ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <
              1e-10);
    }
}

TEST_CASE("ladder power coefficient basics") {
    for (double m : {-1.0, 0.0, 1.0}) CHECK(ladder_power_coefficient(1.0, m, 0) == 1.0);
    CHECK(ladder_power_coefficient(1.0, 1.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ladder_power_coefficient(1.0, 0.0, 2) == 0.0);
    CHECK(ladder_power_coefficient(0.5, 0.5, 1) == doctest::Approx(1.0));
}

TEST_CASE("ladder power coefficient equals repeated dense application") {
    for (double s : {0.5, 1.0, 2.5, 5.0}) {
        CAPTURE(s);
        const SpinSector sec = build_sector(s);
        const SpinOperatorSet ops = build_operators(sec);
        for (int col = 0; col < sec.dim; ++col) {
            ComplexVector v = ComplexVector::Zero(sec.dim);
            v(col) = 1.0;
            const double m = sec.m_of_index(col);
            for (int n = 0; n <= sec.dim; ++n) {
                const double expected = ladder_power_coefficient(s, m, n);
                CHECK(v.norm() == doctest::Approx(expected).epsilon(1e-12));
                v = ops.s_minus * v;
            }
        }
    }
}

TEST_CASE("log-space coefficients stay finite at S = 1600 for every power") {
    const double s = 1600.0;
    LogFactorialTable lf(3200);
    for (int n = 0; n <= 3200; ++n) {
        CHECK(std::isfinite(log_ladder_power_coefficient(lf, s, s, n)));
        const double m_mid = s - std::floor(n / 2.0);  // a mid-ladder column
        if (m_mid - n >= -s) {
            CHECK(std::isfinite(log_ladder_power_coefficient(lf, s, m_mid, n)));
        }
    }
    // the raw product would overflow: the log value is large
    CHECK(log_ladder_power_coefficient(lf, s, s, 3200) > 700.0);
    CHECK(ladder_power_coefficient(1600.0, -1600.0 + 2.0, 3) == 0.0);
}

TEST_CASE("banded products agree with dense operator products") {
    const SpinSector sec = build_sector(2.0);
    const LadderCoefficients lc(sec);
    const SpinOperatorSet ops = build_operators(sec);
    const ComplexMatrix x = test::random_density_matrix(sec, 7).data;
    CHECK((lower_left(lc, x) - ops.s_minus * x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((raise_left(lc, x) - ops.s_plus * x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((lower_right(lc, x) - x * ops.s_minus).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((raise_right(lc, x) - x * ops.s_plus).cwiseAbs().maxCoeff() < 1e-14);
}
