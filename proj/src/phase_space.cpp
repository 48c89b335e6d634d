#include "dicke/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dicke {

double SphereGrid::weight_sum() const {
    double s = 0.0;
    for (int i = 0; i < n_theta(); ++i) s += weight(i) * n_phi();
    return s;
}

SphereGrid make_sphere_grid(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("make_sphere_grid: empty grid");
    SphereGrid g;
    g.dtheta = std::numbers::pi / n_theta;
    g.dphi = 2.0 * std::numbers::pi / n_phi;
    g.thetas.resize(n_theta);
    g.phis.resize(n_phi);
    for (int i = 0; i < n_theta; ++i) g.thetas[i] = (i + 0.5) * g.dtheta;
    for (int j = 0; j < n_phi; ++j) g.phis[j] = (j + 0.5) * g.dphi;
    return g;
}

ComplexVector spin_coherent_state(const SpinSector& sector, double theta, double phi) {
    if (theta < 0.0 || theta > std::numbers::pi + 1e-12) {
        throw std::invalid_argument("spin_coherent_state: theta outside [0, pi]");
    }
    const int d = sector.dim;
    const int k = sector.qubit_count();
    const double sin_half = std::sin(0.5 * theta);
    const double cos_half = std::cos(0.5 * theta);
    const double log_sin = sin_half > 0.0 ? std::log(sin_half) : 0.0;
    const double log_cos = cos_half > 0.0 ? std::log(cos_half) : 0.0;

    LogFactorialTable lf(static_cast<std::size_t>(k));
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) {
        // i = S + m counts the up-spins
        if ((i > 0 && sin_half == 0.0) || (i < k && cos_half == 0.0)) {
            v[i] = 0.0;
            continue;
        }
        const double log_mag = 0.5 * lf.log_binomial(static_cast<std::size_t>(k),
                                                     static_cast<std::size_t>(i)) +
                               i * log_sin + (k - i) * log_cos;
        v[i] = std::polar(std::exp(log_mag), i * phi);
    }
    return v;
}

QField husimi_q(const DensityMatrix& rho, const SphereGrid& grid) {
    QField field;
    field.spin = rho.sector.spin;
    field.values.resize(grid.n_theta(), grid.n_phi());
    ComplexVector v, rv;
    for (int i = 0; i < grid.n_theta(); ++i) {
        for (int j = 0; j < grid.n_phi(); ++j) {
            v = spin_coherent_state(rho.sector, grid.thetas[i], grid.phis[j]);
            rv.noalias() = rho.data * v;
            field.values(i, j) = v.dot(rv).real();  // <z|rho|z>
        }
    }
    return field;
}

double q_norm_check(const QField& field, const SphereGrid& grid) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_theta(); ++i) {
        acc += field.values.row(i).sum() * grid.weight(i);
    }
    const double dim = 2.0 * field.spin + 1.0;
    return dim / (4.0 * std::numbers::pi) * acc;
}

int count_level_components(const QField& field, double level_fraction) {
    const auto& q = field.values;
    const int nt = static_cast<int>(q.rows());
    const int np = static_cast<int>(q.cols());
    const double level = level_fraction * q.maxCoeff();
    std::vector<char> in_set(static_cast<std::size_t>(nt) * np), seen(in_set.size(), 0);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) in_set[i * np + j] = q(i, j) >= level ? 1 : 0;

    int components = 0;
    std::vector<int> stack;
    for (int start = 0; start < nt * np; ++start) {
        if (!in_set[start] || seen[start]) continue;
        ++components;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            const int i = cur / np, j = cur % np;
            const int nbrs[4][2] = {
                {i - 1, j}, {i + 1, j}, {i, (j + 1) % np}, {i, (j + np - 1) % np}};
            for (const auto& nb : nbrs) {
                if (nb[0] < 0 || nb[0] >= nt) continue;
                const int idx = nb[0] * np + nb[1];
                if (in_set[idx] && !seen[idx]) {
                    seen[idx] = 1;
                    stack.push_back(idx);
                }
            }
        }
    }
    return components;
}

}  // namespace dicke
