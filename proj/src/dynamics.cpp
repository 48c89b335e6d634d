#include "dicke/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "dicke/observables.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

namespace {

// L[rho] written into out, reusing one scratch matrix.  All terms are banded
// row/column scalings and shifts.
void apply_liouvillian(const ModelParams& params, const LadderCoefficients& lc,
                       const ComplexMatrix& rho, ComplexMatrix& out, ComplexMatrix& scratch) {
    const int d = lc.sector.dim;
    const double rate = params.kappa / params.sector.spin;
    const Complex i_omega(0.0, params.omega);

    // 2 (kappa/S) S_- rho S_+
    scratch.resize(d, d);
    scratch.topRows(d - 1).noalias() = lc.raise.asDiagonal() * rho.bottomRows(d - 1);  // S_- rho
    scratch.row(d - 1).setZero();
    out.resize(d, d);
    out.leftCols(d - 1).noalias() = (2.0 * rate) * scratch.rightCols(d - 1) * lc.raise.asDiagonal();
    out.col(d - 1).setZero();

    // -(kappa/S) {S_+S_-, rho}
    out.noalias() -= rate * (lc.sp_sm_diag.asDiagonal() * rho);
    out.noalias() -= rate * (rho * lc.sp_sm_diag.asDiagonal());

    // i omega [rho, S_x],  S_x = (S_+ + S_-)/2
    // rho S_+ : shift columns; rho S_- : shift columns the other way
    scratch.setZero(d, d);
    scratch.leftCols(d - 1).noalias() = rho.rightCols(d - 1) * lc.raise.asDiagonal();   // rho S_+
    scratch.rightCols(d - 1).noalias() += rho.leftCols(d - 1) * lc.raise.asDiagonal();  // rho S_-
    scratch.topRows(d - 1).noalias() -= lc.raise.asDiagonal() * rho.bottomRows(d - 1);  // -S_- rho
    scratch.bottomRows(d - 1).noalias() -= lc.raise.asDiagonal() * rho.topRows(d - 1);  // -S_+ rho
    out.noalias() += (0.5 * i_omega) * scratch;
}

}  // namespace

ComplexMatrix liouvillian_apply(const ModelParams& params, const DensityMatrix& rho) {
    if (rho.sector.dim != params.sector.dim) {
        throw std::invalid_argument("liouvillian_apply: sector mismatch");
    }
    LadderCoefficients lc(params.sector);
    ComplexMatrix out, scratch;
    apply_liouvillian(params, lc, rho.data, out, scratch);
    return out;
}

ComplexMatrix liouvillian_superoperator(const ModelParams& params) {
    const int d = params.sector.dim;
    SpinOperatorSet ops = build_operators(params.sector);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix sp_sm = ops.s_plus * ops.s_minus;
    const double rate = params.kappa / params.sector.spin;
    const Complex i_omega(0.0, params.omega);

    auto kron = [d](const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix k(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) k.block(i * d, j * d, d, d) = a(i, j) * b;
        return k;
    };

    // vec(A rho B) = (B^T kron A) vec(rho), column-stacking
    ComplexMatrix sup = i_omega * (kron(ops.sx.transpose(), id) - kron(id, ops.sx));
    sup += rate * (2.0 * kron(ops.s_plus.transpose(), ops.s_minus) - kron(id, sp_sm) -
                   kron(sp_sm.transpose(), id));
    return sup;
}

Trajectory evolve(const ModelParams& params, const DensityMatrix& rho0, double t_final, double dt,
                  const EvolveOptions& opts) {
    if (!(dt > 0.0) || !(t_final >= dt)) {
        throw std::invalid_argument("evolve: need dt > 0 and t_final >= dt");
    }
    if (rho0.sector.dim != params.sector.dim) {
        throw std::invalid_argument("evolve: sector mismatch");
    }
    const LadderCoefficients lc(params.sector);
    const auto n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));

    Trajectory traj;
    traj.params = params;

    ComplexMatrix rho = rho0.data;
    ComplexMatrix k1, k2, k3, k4, stage, scratch;

    auto record = [&](double t) {
        DensityMatrix cur{rho, params.sector};
        MomentSet ms = moments(cur);
        TrajectorySample smp;
        smp.t = t;
        smp.sx = ms.mean_x / params.sector.spin;
        smp.sy = ms.mean_y / params.sector.spin;
        smp.sz = ms.mean_z / params.sector.spin;
        smp.trace_distance_to_reference =
            opts.reference ? trace_distance(cur, *opts.reference)
                           : std::numeric_limits<double>::quiet_NaN();
        traj.samples.push_back(smp);
        if (opts.record_states) traj.states.push_back(cur);
        const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
        if (drift > opts.trace_drift_tol) {
            throw std::runtime_error(
                "evolve: trace drift " + std::to_string(drift) + " exceeds tolerance at t = " +
                std::to_string(t) + "; reduce dt (default_time_step suggests " +
                std::to_string(default_time_step(params)) + ")");
        }
    };

    record(0.0);
    double t = 0.0;
    for (long step = 0; step < n_steps; ++step) {
        const double h = std::min(dt, t_final - t);
        apply_liouvillian(params, lc, rho, k1, scratch);
        stage = rho + (0.5 * h) * k1;
        apply_liouvillian(params, lc, stage, k2, scratch);
        stage = rho + (0.5 * h) * k2;
        apply_liouvillian(params, lc, stage, k3, scratch);
        stage = rho + h * k3;
        apply_liouvillian(params, lc, stage, k4, scratch);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (opts.rehermitize) {
            rho = 0.5 * (rho + rho.adjoint()).eval();
        }
        t += h;
        if ((step + 1) % opts.sample_stride == 0 || step + 1 == n_steps) record(t);
    }

    traj.final_state = DensityMatrix{rho, params.sector};
    return traj;
}

namespace {

Eigen::BDCSVD<ComplexMatrix> superoperator_svd(const ModelParams& params, double max_spin) {
    if (params.sector.spin > max_spin) {
        throw std::invalid_argument(
            "nullspace oracle: spin " + std::to_string(params.sector.spin) +
            " exceeds the guard " + std::to_string(max_spin) + "; the dense superoperator has " +
            std::to_string(static_cast<long>(params.sector.dim) * params.sector.dim) +
            "^2 entries");
    }
    ComplexMatrix sup = liouvillian_superoperator(params);
    return Eigen::BDCSVD<ComplexMatrix>(sup, Eigen::ComputeThinV);
}

}  // namespace

NullspaceGap nullspace_singular_values(const ModelParams& params, double max_spin) {
    auto svd = superoperator_svd(params, max_spin);
    const auto& sv = svd.singularValues();
    NullspaceGap gap;
    gap.smallest = sv(sv.size() - 1);
    gap.second_smallest = sv(sv.size() - 2);
    return gap;
}

DensityMatrix steady_state_nullspace(const ModelParams& params, double max_spin) {
    const int d = params.sector.dim;
    auto svd = superoperator_svd(params, max_spin);
    const auto& sv = svd.singularValues();
    // scale-aware degeneracy check: singular values carry units of kappa
    const double scale = std::max(sv(0), 1e-300);
    if (d > 1 && sv(sv.size() - 2) < 1e-10 * scale) {
        throw std::runtime_error("steady_state_nullspace: kernel dimension > 1 (degenerate)");
    }
    ComplexVector kernel = svd.matrixV().col(sv.size() - 1);
    Eigen::Map<const ComplexMatrix> reshaped(kernel.data(), d, d);
    ComplexMatrix rho = 0.5 * (reshaped + reshaped.adjoint());
    rho /= rho.trace();
    return DensityMatrix{rho, params.sector};
}

RelaxationFit relaxation_rate(const ModelParams& params, const DensityMatrix& rho0,
                              double window_begin, double window_end, std::optional<double> dt) {
    if (!(window_end > window_begin) || window_begin < 0.0) {
        throw std::invalid_argument("relaxation_rate: bad window");
    }
    const DensityMatrix ss = steady_state_of(params);
    const double step = dt.value_or(default_time_step(params));

    EvolveOptions opts;
    opts.reference = &ss;
    // ~200 samples across the run
    opts.sample_stride = std::max(1, static_cast<int>(window_end / step / 200.0));
    Trajectory traj = evolve(params, rho0, window_end, step, opts);

    std::vector<double> ts, logs;
    // contractivity makes the distance to the fixed point non-increasing for
    // exact evolution; the flag catches numerical floors and wrong references
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& smp : traj.samples) {
        if (smp.t < window_begin) continue;
        if (!(smp.trace_distance_to_reference > 1e-13)) continue;  // numerical floor
        if (smp.trace_distance_to_reference > prev + 1e-12) monotone = false;
        prev = smp.trace_distance_to_reference;
        ts.push_back(smp.t);
        logs.push_back(std::log(smp.trace_distance_to_reference));
    }

    RelaxationFit fit;
    if (ts.size() < 3 || std::exp(logs.front()) < 1e-12) {
        fit.status = FitStatus::already_converged;
        return fit;
    }
    // least squares slope of log distance vs t
    const double n = static_cast<double>(ts.size());
    double mt = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mt += ts[i];
        ml += logs[i];
    }
    mt /= n;
    ml /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - mt) * (logs[i] - ml);
        den += (ts[i] - mt) * (ts[i] - mt);
    }
    const double slope = num / den;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double pred = ml + slope * (ts[i] - mt);
        ss_res += (logs[i] - pred) * (logs[i] - pred);
    }
    fit.rate = -slope;
    fit.residual = std::sqrt(ss_res / n);
    fit.status = monotone ? FitStatus::ok : FitStatus::non_monotone;
    return fit;
}

}  // namespace dicke
