// SU(2) coherent states |z>, z = e^{i phi} tan(theta/2), and the Husimi
// function Q(theta, phi) = <z| rho |z> on a midpoint sphere grid.
//
// Convention (matches the ladder structure of the steady state): theta = 0 is
// the all-down Dicke state |S,-S>, theta = pi is |S,+S>.  Amplitudes are
// evaluated in log space,
//   <S,m|z> = exp[ lchoose(K, S+m)/2 + (S+m) ln sin(theta/2)
//                  + (S-m) ln cos(theta/2) ] e^{i (S+m) phi},
// which is finite at both poles.

#pragma once

#include "dicke/density_matrix.hpp"

namespace dicke {

struct SphereGrid {
    Eigen::VectorXd thetas;  // midpoints of [0, pi]
    Eigen::VectorXd phis;    // midpoints of [0, 2 pi)
    double dtheta = 0.0;
    double dphi = 0.0;

    int n_theta() const { return static_cast<int>(thetas.size()); }
    int n_phi() const { return static_cast<int>(phis.size()); }
    double weight(int i) const { return std::sin(thetas[i]) * dtheta * dphi; }
    double weight_sum() const;  // ~ 4 pi, O(dtheta^2) error
};

SphereGrid make_sphere_grid(int n_theta, int n_phi);

ComplexVector spin_coherent_state(const SpinSector& sector, double theta, double phi);

struct QField {
    Eigen::ArrayXXd values;  // n_theta x n_phi
    double spin = 0.0;
};

QField husimi_q(const DensityMatrix& rho, const SphereGrid& grid);

// (2S+1)/(4 pi) * sum Q * weights; equals 1 up to quadrature error.
double q_norm_check(const QField& field, const SphereGrid& grid);

// Connected components of {Q >= level_fraction * max(Q)} with periodic phi,
// for detecting multi-peaked distributions.
int count_level_components(const QField& field, double level_fraction = 0.5);

}  // namespace dicke
