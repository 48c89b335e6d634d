#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/dynamics.hpp"
#include "dicke/observables.hpp"
#include "dicke/steady_state.hpp"
#include "support/test_states.hpp"

using namespace dicke;

TEST_CASE("liouvillian of the maximally mixed state") {
    // L[I/d] = -(4 kappa / S) S_z / (2S+1): the unitary part drops, and
    // [S_+, S_-] = 2 S_z drives the rest
    for (double s : {1.0, 3.5, 10.0}) {
        CAPTURE(s);
        const ModelParams p = make_params(s, 0.7, 1.3);
        const SpinSector sec = p.sector;
        const ComplexMatrix lhs = liouvillian_apply(p, maximally_mixed(sec));
        const SpinOperatorSet ops = build_operators(sec);
        const ComplexMatrix rhs = -(4.0 * p.kappa / s) * ops.sz / static_cast<double>(sec.dim);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("liouvillian is trace-free and Hermiticity-preserving") {
    const ModelParams p = make_params(2.5, 0.9);
    const DensityMatrix rho = test::random_density_matrix(p.sector, 11);
    const ComplexMatrix l = liouvillian_apply(p, rho);
    CHECK(std::abs(l.trace()) < 1e-12);
    CHECK((l - l.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("banded apply matches the dense superoperator") {
    const ModelParams p = make_params(1.5, 1.2, 0.8);
    const DensityMatrix rho = test::random_density_matrix(p.sector, 3);
    const ComplexMatrix sup = liouvillian_superoperator(p);
    const int d = p.sector.dim;
    Eigen::Map<const ComplexVector> vec_rho(rho.data.data(), d * d);
    const ComplexVector out_vec = sup * vec_rho;
    Eigen::Map<const ComplexMatrix> out(out_vec.data(), d, d);
    CHECK((liouvillian_apply(p, rho) - out).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sector mismatch is rejected") {
    const ModelParams p = make_params(2.0, 0.5);
    const DensityMatrix rho = maximally_mixed(build_sector(1.0));
    CHECK_THROWS_AS(liouvillian_apply(p, rho), std::invalid_argument);
}

TEST_CASE("steady state is a fixed point of evolve") {
    const ModelParams p = make_params(3.0, 0.8);
    const DensityMatrix ss = steady_state_of(p);
    EvolveOptions opts;
    opts.reference = &ss;
    opts.sample_stride = 100;
    const Trajectory traj = evolve(p, ss, 2.0, default_time_step(p), opts);
    for (const auto& smp : traj.samples) {
        CHECK(smp.trace_distance_to_reference < 1e-8);
    }
}

TEST_CASE("pure superradiant decay at lambda = 0") {
    const ModelParams p = make_params(4.0, 0.0);
    const DensityMatrix top = dicke_projector(p.sector, 4.0);
    EvolveOptions opts;
    opts.sample_stride = 50;
    const Trajectory traj = evolve(p, top, 12.0, 1e-3, opts);
    // <S_z> decays monotonically from +S toward -S
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        CHECK(traj.samples[i].sz <= traj.samples[i - 1].sz + 1e-12);
    }
    const DensityMatrix dark = dicke_projector(p.sector, -4.0);
    CHECK(trace_distance(traj.final_state, dark) < 1e-6);
}

TEST_CASE("random states converge to the unique steady state") {
    const ModelParams p = make_params(5.0, 0.5);
    const DensityMatrix ss = steady_state_of(p);
    for (unsigned seed : {1u, 2u}) {
        const DensityMatrix rho0 = test::random_density_matrix(p.sector, seed);
        const Trajectory traj = evolve(p, rho0, 12.0, 5e-4, {});
        CHECK(trace_distance(traj.final_state, ss) < 1e-6);
        const DensityMatrixChecks c = check_density_matrix(traj.final_state);
        CHECK(c.hermiticity_error < 1e-8);
        CHECK(c.trace_error < 1e-8);
    }
}

TEST_CASE("integrator is fourth order") {
    const ModelParams p = make_params(2.0, 0.7);
    const DensityMatrix rho0 = test::random_density_matrix(p.sector, 5);
    const double t_final = 0.5;
    const double dt = 0.02;
    auto terminal = [&](double step) {
        return evolve(p, rho0, t_final, step, {}).final_state.data;
    };
    const ComplexMatrix ref = terminal(dt / 4.0);
    const double err_full = (terminal(dt) - ref).norm();
    const double err_half = (terminal(dt / 2.0) - ref).norm();
    const double ratio = err_full / err_half;
    // fourth order: halving dt shrinks the error ~16x (reference offset skews
    // the ratio slightly)
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("trace drift aborts with a step-size diagnostic") {
    const ModelParams p = make_params(5.0, 0.5);
    const DensityMatrix rho0 = test::random_density_matrix(p.sector, 9);
    // grossly unstable step
    CHECK_THROWS_AS(evolve(p, rho0, 10.0, 0.5, {}), std::runtime_error);
}

TEST_CASE("nullspace oracle against the closed form") {
    SUBCASE("matches at spin 1/2") {
        const ModelParams p = make_params(0.5, 0.5);
        CHECK(frobenius_distance(steady_state_nullspace(p).data, steady_state_of(p).data) < 1e-10);
    }
    SUBCASE("lambda = 0 gives the dark state") {
        const ModelParams p = make_params(1.5, 0.0);
        const DensityMatrix rho = steady_state_nullspace(p);
        CHECK(std::abs(rho.data(0, 0).real() - 1.0) < 1e-10);
    }
    SUBCASE("kernel is one-dimensional at S = 2") {
        const NullspaceGap gap = nullspace_singular_values(make_params(2.0, 1.0));
        CHECK(gap.smallest < 1e-10);
        CHECK(gap.second_smallest > 1e-6);
    }
    SUBCASE("grid equivalence for S <= 2") {
        for (double s : {0.5, 1.0, 1.5, 2.0}) {
            for (double lambda : {0.3, 0.8, 1.0, 1.5}) {
                CAPTURE(s);
                CAPTURE(lambda);
                const ModelParams p = make_params(s, lambda);
                CHECK(frobenius_distance(steady_state_nullspace(p).data,
                                         steady_state_of(p).data) < 1e-8);
            }
        }
    }
    SUBCASE("guard rejects large sectors") {
        CHECK_THROWS_AS(steady_state_nullspace(make_params(10.0, 0.5)), std::invalid_argument);
    }
}

TEST_CASE("propagation contracts the trace distance between any two states") {
    // CPTP maps never increase the trace distance; the integrator must
    // respect that pairwise, not just toward the steady state
    const ModelParams p = make_params(3.0, 1.2);
    for (unsigned seed : {10u, 20u, 30u}) {
        const DensityMatrix a = test::random_density_matrix(p.sector, seed);
        const DensityMatrix b = test::random_density_matrix(p.sector, seed + 1);
        const double before = trace_distance(a, b);
        const Trajectory ta = evolve(p, a, 1.0, 5e-4, {});
        const Trajectory tb = evolve(p, b, 1.0, 5e-4, {});
        const double after = trace_distance(ta.final_state, tb.final_state);
        CHECK(after <= before + 1e-10);
    }
}

TEST_CASE("relaxation rate flags an already-converged start") {
    const ModelParams p = make_params(2.0, 0.6);
    const DensityMatrix ss = steady_state_of(p);
    const RelaxationFit fit = relaxation_rate(p, ss, 0.5, 4.0);
    CHECK(fit.status == FitStatus::already_converged);
}

TEST_CASE("relaxation rate matches the linearized decay law") {
    // decay rate of perturbations around the stable fixed point:
    // 2 kappa sqrt(1 - lambda^2) up to finite-size corrections
    const ModelParams p = make_params(30.0, 0.75);
    const DensityMatrix rho0 = test::random_density_matrix(p.sector, 21);
    const RelaxationFit fit = relaxation_rate(p, rho0, 4.0, 14.0, 2e-3);
    CHECK(fit.status == FitStatus::ok);
    const double expected = 2.0 * p.kappa * std::sqrt(1.0 - 0.75 * 0.75);
    CHECK(std::abs(fit.rate - expected) / expected < 0.2);
}
