// Mean-field limit of the model: spin expectations normalized by S evolve on
// the unit sphere under
//   dx/dt = 2 kappa x z
//   dy/dt = -omega z + 2 kappa y z
//   dz/dt =  omega y - 2 kappa (x^2 + y^2),
// with the canonical chart (z, phi), x = sqrt(1-z^2) cos phi,
// y = sqrt(1-z^2) sin phi:
//   dz/dt   = -2 kappa (1 - z^2) + omega sqrt(1-z^2) sin phi
//   dphi/dt = -omega z cos phi / sqrt(1-z^2).
//
// Fixed points: (0, lambda, -+sqrt(1-lambda^2)) for lambda <= 1 (lower branch
// stable), and (+-sqrt(1-1/lambda^2), 1/lambda, 0) for lambda >= 1 (purely
// imaginary eigenvalues, no limit cycles).  The linearization at the stable
// branch has the doubly degenerate eigenvalue -2 kappa sqrt(1-lambda^2).

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

struct BlochState {
    double sx = 0.0, sy = 0.0, sz = -1.0;  // normalized by S, unit length

    double z() const { return sz; }
    double phi() const;  // in [0, 2*pi)
    double norm_error() const;

    static BlochState from_cartesian(double sx, double sy, double sz);
    static BlochState from_canonical(double z, double phi);
};

enum class Stability { stable, unstable, marginal };

std::string to_string(Stability s);

struct FixedPointReport {
    BlochState location;
    Eigen::Matrix2d jacobian;                 // canonical (z, phi) chart
    std::array<std::complex<double>, 2> eigenvalues;
    Stability stability = Stability::marginal;
};

struct MeanFieldParams {
    double omega = 0.0;
    double kappa = 1.0;
    double lambda() const { return omega / (2.0 * kappa); }
};

// d/dt of (sx, sy, sz); tangent to the sphere.
Eigen::Vector3d mf_rhs(const BlochState& state, const MeanFieldParams& params);

// d/dt of (z, phi); singular at the poles z = +-1.
Eigen::Vector2d canonical_rhs(double z, double phi, const MeanFieldParams& params);

// Analytic Jacobian of canonical_rhs; at the poles falls back to the
// tangent-plane (x, y) chart, where the flow linearizes to -2 kappa I.
Eigen::Matrix2d mf_jacobian(const BlochState& point, const MeanFieldParams& params);

std::vector<FixedPointReport> mf_fixed_points(double lambda, double kappa = 1.0);

struct MeanFieldSample {
    double t = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;
};

struct MeanFieldTrajectory {
    MeanFieldParams params;
    std::vector<MeanFieldSample> samples;
    BlochState final_state;
};

// RK4 in Cartesian coordinates with per-step renormalization of the spin
// length; throws if the pre-renormalization drift exceeds 1e-6.
MeanFieldTrajectory mf_integrate(const BlochState& state0, const MeanFieldParams& params,
                                 double t_final, double dt, int sample_stride = 1);

// 1 / (2 kappa sqrt(1 - lambda^2)), the inverse decay rate of the stable
// fixed point for lambda < 1.
double mf_relaxation_timescale(double lambda, double kappa);

}  // namespace dicke
