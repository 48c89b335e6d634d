// Reduced one- and two-qubit states of the symmetric K-qubit state, built
// from collective moments, plus the entanglement measures evaluated on them.
//
// Product basis order for the two-qubit state: (uu, ud, du, dd) with u the
// m = +1/2 single-qubit state.  The matrix, expressed in collective
// expectations (K = 2S qubits):
//
//        [ v+   x+*  x+*  u* ]        v_pm = [K^2-2K+4<Sz^2> +- 4<Sz>(K-1)] / 4K(K-1)
//        [ x+   w    w    x-*]        x_pm = [(K-1)<S+> +- <[S+,Sz]_+>] / 2K(K-1)
//        [ x+   w    w    x-*]        w    = [K^2 - 4<Sz^2>] / 4K(K-1)
//        [ u    x-   x-   v- ]        u    = <S+^2> / K(K-1)

#pragma once

#include <optional>

#include "dicke/observables.hpp"

namespace dicke {

struct TwoQubitState {
    Eigen::Matrix4cd data;
    double spin = 0.0;  // source sector spin, K = 2S

    int qubit_count() const { return static_cast<int>(std::lround(2.0 * spin)); }
};

// Requires K >= 2.
TwoQubitState two_qubit_reduced(const MomentSet& ms);

Eigen::Matrix2cd single_qubit_reduced(const MomentSet& ms);

// Transpose of the second qubit's indices.
Eigen::Matrix4cd partial_transpose_second(const Eigen::Matrix4cd& rho);

// N = sum_i (|mu_i| - mu_i)/2 over eigenvalues of the partial transpose.
double negativity(const TwoQubitState& state);
double negativity(const Eigen::Matrix4cd& rho);

enum class SqueezingAxis { x, y, z };

// xi^2 = 2S Var(S_n1) / (<S_n2>^2 + <S_n3>^2) with the raw (unnormalized)
// variance; nullopt when the orthogonal mean spin vanishes.
std::optional<double> spin_squeezing(const MomentSet& ms, SqueezingAxis axis);

}  // namespace dicke
