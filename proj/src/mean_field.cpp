#include "dicke/mean_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dicke {

double BlochState::phi() const {
    double p = std::atan2(sy, sx);
    if (p < 0.0) p += 2.0 * std::numbers::pi;
    return p;
}

double BlochState::norm_error() const {
    return std::abs(sx * sx + sy * sy + sz * sz - 1.0);
}

BlochState BlochState::from_cartesian(double sx, double sy, double sz) {
    const double n = std::sqrt(sx * sx + sy * sy + sz * sz);
    if (!(n > 0.0)) throw std::invalid_argument("BlochState: zero vector");
    return BlochState{sx / n, sy / n, sz / n};
}

BlochState BlochState::from_canonical(double z, double phi) {
    if (std::abs(z) > 1.0 + 1e-12) throw std::invalid_argument("BlochState: |z| > 1");
    z = std::clamp(z, -1.0, 1.0);
    const double r = std::sqrt(1.0 - z * z);
    return BlochState{r * std::cos(phi), r * std::sin(phi), z};
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::marginal: return "marginal";
    }
    return "?";
}

Eigen::Vector3d mf_rhs(const BlochState& st, const MeanFieldParams& p) {
    return {2.0 * p.kappa * st.sx * st.sz,
            -p.omega * st.sz + 2.0 * p.kappa * st.sy * st.sz,
            p.omega * st.sy - 2.0 * p.kappa * (st.sx * st.sx + st.sy * st.sy)};
}

Eigen::Vector2d canonical_rhs(double z, double phi, const MeanFieldParams& p) {
    const double r = std::sqrt(1.0 - z * z);
    return {-2.0 * p.kappa * (1.0 - z * z) + p.omega * r * std::sin(phi),
            -p.omega * z * std::cos(phi) / r};
}

Eigen::Matrix2d mf_jacobian(const BlochState& point, const MeanFieldParams& p) {
    const Eigen::Vector3d v = mf_rhs(point, p);
    if (v.norm() > 1e-9) {
        throw std::invalid_argument("mf_jacobian: point is not a fixed point (|rhs| = " +
                                    std::to_string(v.norm()) + ")");
    }
    const double z = point.sz;
    Eigen::Matrix2d j;
    if (std::abs(z) > 1.0 - 1e-12) {
        // pole: linearize in the tangent (x, y) chart; only reached at
        // lambda = 0 where the flow is dx/dt = -2 kappa x, dy/dt = -2 kappa y
        const double sgn = z > 0.0 ? 1.0 : -1.0;
        j << 2.0 * p.kappa * sgn, 0.0, 0.0, 2.0 * p.kappa * sgn;
        return j;
    }
    const double r = std::sqrt(1.0 - z * z);
    const double sin_phi = point.sy / r;
    const double cos_phi = point.sx / r;
    j(0, 0) = 4.0 * p.kappa * z - p.omega * z * sin_phi / r;
    j(0, 1) = p.omega * r * cos_phi;
    j(1, 0) = -p.omega * cos_phi / (r * r * r);
    j(1, 1) = p.omega * z * sin_phi / r;
    return j;
}

namespace {

FixedPointReport make_report(const BlochState& loc, const MeanFieldParams& p) {
    FixedPointReport rep;
    rep.location = loc;
    rep.jacobian = mf_jacobian(loc, p);
    const Eigen::Vector2cd ev = rep.jacobian.eigenvalues();
    rep.eigenvalues = {ev(0), ev(1)};
    const double re_max = std::max(ev(0).real(), ev(1).real());
    if (re_max < -1e-9) {
        rep.stability = Stability::stable;
    } else if (re_max > 1e-9) {
        rep.stability = Stability::unstable;
    } else {
        rep.stability = Stability::marginal;
    }
    return rep;
}

}  // namespace

std::vector<FixedPointReport> mf_fixed_points(double lambda, double kappa) {
    if (lambda < 0.0) throw std::invalid_argument("mf_fixed_points: lambda must be >= 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("mf_fixed_points: kappa must be > 0");
    MeanFieldParams p{2.0 * lambda * kappa, kappa};
    std::vector<FixedPointReport> out;
    if (lambda <= 1.0) {
        const double zs = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
        out.push_back(make_report(BlochState{0.0, lambda, -zs}, p));
        out.push_back(make_report(BlochState{0.0, lambda, zs}, p));
    } else {
        const double xs = std::sqrt(1.0 - 1.0 / (lambda * lambda));
        out.push_back(make_report(BlochState{xs, 1.0 / lambda, 0.0}, p));
        out.push_back(make_report(BlochState{-xs, 1.0 / lambda, 0.0}, p));
    }
    return out;
}

MeanFieldTrajectory mf_integrate(const BlochState& state0, const MeanFieldParams& params,
                                 double t_final, double dt, int sample_stride) {
    if (!(dt > 0.0) || !(t_final >= dt)) {
        throw std::invalid_argument("mf_integrate: need dt > 0 and t_final >= dt");
    }
    const auto n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));
    MeanFieldTrajectory traj;
    traj.params = params;

    Eigen::Vector3d v(state0.sx, state0.sy, state0.sz);
    auto rhs = [&params](const Eigen::Vector3d& u) {
        return mf_rhs(BlochState{u(0), u(1), u(2)}, params);
    };
    auto record = [&](double t) {
        traj.samples.push_back({t, v(0), v(1), v(2)});
    };

    record(0.0);
    double t = 0.0;
    for (long step = 0; step < n_steps; ++step) {
        const double h = std::min(dt, t_final - t);
        const Eigen::Vector3d k1 = rhs(v);
        const Eigen::Vector3d k2 = rhs(v + 0.5 * h * k1);
        const Eigen::Vector3d k3 = rhs(v + 0.5 * h * k2);
        const Eigen::Vector3d k4 = rhs(v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double n = v.norm();
        if (std::abs(n - 1.0) > 1e-6) {
            throw std::runtime_error("mf_integrate: spin-length drift " + std::to_string(n - 1.0) +
                                     " at t = " + std::to_string(t + h) + "; reduce dt");
        }
        v /= n;
        t += h;
        if ((step + 1) % sample_stride == 0 || step + 1 == n_steps) record(t);
    }
    traj.final_state = BlochState{v(0), v(1), v(2)};
    return traj;
}

double mf_relaxation_timescale(double lambda, double kappa) {
    if (lambda >= 1.0) {
        throw std::invalid_argument(
            "mf_relaxation_timescale: no stable fixed point for lambda >= 1");
    }
    if (lambda < 0.0 || !(kappa > 0.0)) {
        throw std::invalid_argument("mf_relaxation_timescale: bad parameters");
    }
    return 1.0 / (2.0 * kappa * std::sqrt(1.0 - lambda * lambda));
}

}  // namespace dicke
