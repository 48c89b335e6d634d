#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/correlations.hpp"
#include "dicke/steady_state.hpp"
#include "support/test_states.hpp"

using namespace dicke;

TEST_CASE("all-down state reduces to a pure dd product") {
    const MomentSet ms = moments(dicke_projector(build_sector(4.0), -4.0));
    const TwoQubitState two = two_qubit_reduced(ms);
    CHECK(std::abs(two.data(3, 3) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(two.data.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::Matrix2cd one = single_qubit_reduced(ms);
    CHECK(std::abs(one(0, 0)) < 1e-12);
    CHECK(std::abs(one(1, 1) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(negativity(two) == doctest::Approx(0.0));
}

TEST_CASE("reduction rejects a single qubit") {
    const MomentSet ms = moments(maximally_mixed(build_sector(0.5)));
    CHECK_THROWS_AS(two_qubit_reduced(ms), std::invalid_argument);
}

TEST_CASE("two-qubit reduction equals the brute-force partial trace") {
    // embed the sector state into the 2^K product space and trace out K-2
    // qubits; exact for every state of the maximal-spin sector
    for (double s : {1.0, 1.5, 2.0}) {
        for (double lambda : {0.3, 1.0, 1.7}) {
            CAPTURE(s);
            CAPTURE(lambda);
            const DensityMatrix rho = steady_state_of(make_params(s, lambda));
            const TwoQubitState two = two_qubit_reduced(moments(rho));
            const ComplexMatrix brute =
                test::to_updown_convention(test::embed_and_reduce(rho, 2));
            CHECK((two.data - brute).cwiseAbs().maxCoeff() < 1e-10);
            const Eigen::Matrix2cd one = single_qubit_reduced(moments(rho));
            const ComplexMatrix brute1 =
                test::to_updown_convention(test::embed_and_reduce(rho, 1));
            CHECK((one - brute1).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("reduction of random sector states matches the oracle") {
    for (unsigned seed : {2u, 8u}) {
        const DensityMatrix rho = test::random_density_matrix(build_sector(2.0), seed);
        const TwoQubitState two = two_qubit_reduced(moments(rho));
        const ComplexMatrix brute = test::to_updown_convention(test::embed_and_reduce(rho, 2));
        CHECK((two.data - brute).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("maximally mixed sector state at K = 2") {
    // with two qubits the reduction is exact representation change
    const DensityMatrix rho = maximally_mixed(build_sector(1.0));
    const Eigen::Matrix2cd one = single_qubit_reduced(moments(rho));
    CHECK((one - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-qubit state is a symmetric density matrix") {
    for (double lambda : {0.4, 1.0, 1.6}) {
        CAPTURE(lambda);
        const TwoQubitState two =
            two_qubit_reduced(moments(steady_state_of(make_params(20.0, lambda))));
        CHECK(std::abs(two.data.trace() - Complex(1.0, 0.0)) < 1e-12);
        CHECK((two.data - two.data.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(two.data, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
        // qubit-swap symmetry
        CHECK(std::abs(two.data(1, 1) - two.data(2, 2)) < 1e-14);
        CHECK(std::abs(two.data(0, 1) - two.data(0, 2)) < 1e-14);
        CHECK(std::abs(two.data(3, 1) - two.data(3, 2)) < 1e-14);
    }
}

TEST_CASE("partial trace of the pair state matches the single-qubit state") {
    for (double lambda : {0.5, 1.2}) {
        const MomentSet ms = moments(steady_state_of(make_params(10.0, lambda)));
        const TwoQubitState two = two_qubit_reduced(ms);
        const Eigen::Matrix2cd one = single_qubit_reduced(ms);
        Eigen::Matrix2cd tr_second, tr_first;
        tr_second << two.data(0, 0) + two.data(1, 1), two.data(0, 2) + two.data(1, 3),
            two.data(2, 0) + two.data(3, 1), two.data(2, 2) + two.data(3, 3);
        tr_first << two.data(0, 0) + two.data(2, 2), two.data(0, 1) + two.data(2, 3),
            two.data(1, 0) + two.data(3, 2), two.data(1, 1) + two.data(3, 3);
        CHECK((tr_second - one).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((tr_first - one).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("negativity of a Bell state is one half") {
    Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    CHECK(negativity(bell) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("product and separable states have zero negativity") {
    // |ud><ud|
    Eigen::Matrix4cd prod = Eigen::Matrix4cd::Zero();
    prod(1, 1) = 1.0;
    CHECK(negativity(prod) == doctest::Approx(0.0));
    // classical mixture of product states
    Eigen::Matrix4cd mix = Eigen::Matrix4cd::Zero();
    mix(0, 0) = 0.3;
    mix(3, 3) = 0.7;
    CHECK(negativity(mix) == doctest::Approx(0.0));
    // uncorrelated tilted product state
    Eigen::Vector2cd a, b;
    a << Complex(0.8, 0.0), Complex(0.0, 0.6);
    b << Complex(0.6, 0.0), Complex(0.48, 0.64);
    Eigen::Vector4cd ab;
    ab << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    CHECK(negativity((ab * ab.adjoint()).eval()) < 1e-12);
}

TEST_CASE("squeezing of the coherent dark state is exactly one") {
    const MomentSet ms = moments(dicke_projector(build_sector(12.0), -12.0));
    const auto xi2 = spin_squeezing(ms, SqueezingAxis::x);
    REQUIRE(xi2.has_value());
    CHECK(*xi2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*spin_squeezing(ms, SqueezingAxis::y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("squeezing is undefined without a mean spin") {
    const MomentSet ms = moments(maximally_mixed(build_sector(3.0)));
    CHECK_FALSE(spin_squeezing(ms, SqueezingAxis::x).has_value());
}

TEST_CASE("steady-state squeezing pattern across the transition") {
    for (double s : {10.0, 40.0}) {
        double best_x = 1e30;
        for (double lambda : {0.2, 0.4, 0.6, 0.8, 0.95, 1.2, 1.6}) {
            CAPTURE(s);
            CAPTURE(lambda);
            const MomentSet ms = moments(steady_state_of(make_params(s, lambda)));
            const auto x = spin_squeezing(ms, SqueezingAxis::x);
            const auto y = spin_squeezing(ms, SqueezingAxis::y);
            const auto z = spin_squeezing(ms, SqueezingAxis::z);
            REQUIRE(x.has_value());
            CHECK(*y > 1.0);
            CHECK(*z > 1.0);
            best_x = std::min(best_x, *x);
        }
        // squeezed along x somewhere below the critical coupling
        CHECK(best_x < 1.0);
    }
}
