// Lindblad generator of the model, fixed-step RK4 propagation, the
// vectorized-superoperator null-space oracle, and relaxation-rate fits.

#pragma once

#include <optional>
#include <vector>

#include "dicke/density_matrix.hpp"
#include "dicke/model.hpp"

namespace dicke {

// L[rho] = i omega [rho, S_x] + (kappa/S)(2 S_- rho S_+ - S_+S_- rho - rho S_+S_-).
// Banded evaluation, O(dim^2); Hermitian and traceless for Hermitian rho.
ComplexMatrix liouvillian_apply(const ModelParams& params, const DensityMatrix& rho);

// dim^2 x dim^2 matrix of L on column-stacked rho: vec(A rho B) = (B^T (x) A) vec(rho).
ComplexMatrix liouvillian_superoperator(const ModelParams& params);

struct TrajectorySample {
    double t = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;  // normalized by S
    double trace_distance_to_reference = 0.0;  // NaN when no reference given
};

struct Trajectory {
    ModelParams params;
    std::vector<TrajectorySample> samples;
    std::vector<DensityMatrix> states;  // filled only when record_states
    DensityMatrix final_state;
};

struct EvolveOptions {
    int sample_stride = 1;       // record every k-th step (and the last)
    bool rehermitize = true;     // rho <- (rho + rho^dag)/2 each step
    bool record_states = false;
    double trace_drift_tol = 1e-6;  // abort threshold, checked each sample
    const DensityMatrix* reference = nullptr;  // for trace-distance recording
};

// Suggested stable step for the model's stiffest rate.
inline double default_time_step(const ModelParams& params) {
    return 0.01 / std::max(params.omega, 2.0 * params.kappa * params.sector.spin);
}

Trajectory evolve(const ModelParams& params, const DensityMatrix& rho0, double t_final, double dt,
                  const EvolveOptions& opts = {});

// Steady state from the kernel of the vectorized Liouvillian (full SVD).
// Guarded to spin <= max_spin; throws if the kernel is not one-dimensional
// within tolerance.
DensityMatrix steady_state_nullspace(const ModelParams& params, double max_spin = 6.0);

// Gap between the two smallest singular values of the superoperator, for
// uniqueness diagnostics.
struct NullspaceGap {
    double smallest = 0.0;
    double second_smallest = 0.0;
};
NullspaceGap nullspace_singular_values(const ModelParams& params, double max_spin = 6.0);

enum class FitStatus { ok, non_monotone, already_converged };

struct RelaxationFit {
    double rate = 0.0;        // decay rate of the trace distance to rho_ss
    double residual = 0.0;    // rms deviation of log-distance from the fit line
    FitStatus status = FitStatus::ok;
};

// Evolves rho0 and fits the least-squares slope of log(trace distance to the
// steady state) over t in [window_begin, window_end].
RelaxationFit relaxation_rate(const ModelParams& params, const DensityMatrix& rho0,
                              double window_begin, double window_end,
                              std::optional<double> dt = std::nullopt);

}  // namespace dicke
