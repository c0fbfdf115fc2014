#include "ltpc/simulate.hpp"

#include "ltpc/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <stdexcept>

namespace ltpc {

namespace {

// One RK4 step of a generic vector field.
template <class F>
Eigen::VectorXd rk4_vector_step(F&& f, const Eigen::VectorXd& x, double t, double h) {
    const Eigen::VectorXd k1 = f(t, x);
    const Eigen::VectorXd k2 = f(t + 0.5 * h, (x + (0.5 * h) * k1).eval());
    const Eigen::VectorXd k3 = f(t + 0.5 * h, (x + (0.5 * h) * k2).eval());
    const Eigen::VectorXd k4 = f(t + h, (x + h * k3).eval());
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

LtvTrajectory simulate_realization(const LtpRealization& sys,
                                   const std::function<Eigen::VectorXd(double)>& input,
                                   const Eigen::VectorXd& x0, double t0, double t1, double step) {
    if (!(step > 0.0) || !(t1 > t0))
        throw std::invalid_argument("simulate_realization: bad time window or step");
    if (x0.size() != sys.n_x())
        throw std::invalid_argument("simulate_realization: initial state dimension mismatch");
    const int n_steps = static_cast<int>(std::llround((t1 - t0) / step));

    auto field = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return sys.A()(t) * x + sys.B()(t) * input(t);
    };

    LtvTrajectory traj;
    traj.time.resize(static_cast<size_t>(n_steps) + 1);
    traj.state.resize(n_steps + 1, sys.n_x());
    traj.output.resize(n_steps + 1, sys.n_y());

    Eigen::VectorXd x = x0;
    for (int k = 0; k <= n_steps; ++k) {
        const double t = t0 + k * step;
        traj.time[static_cast<size_t>(k)] = t;
        traj.state.row(k) = x.transpose();
        traj.output.row(k) = (sys.C()(t) * x + sys.D()(t) * input(t)).transpose();
        if (!x.allFinite())
            throw BlowupError("simulate_realization: non-finite state", t);
        if (k < n_steps)
            x = rk4_vector_step(field, x, t, step);
    }
    return traj;
}

SimulationResult simulate_closed_loop(const LtpSystem& plant, const StructuredController& K,
                                      const DisturbanceModel* disturbance,
                                      const Eigen::Vector3d& theta0_deg, double horizon_orbits,
                                      double step_s) {
    if (plant.n_y() != 3 || plant.n_u() != 3 || plant.n_x() != 6)
        throw std::invalid_argument("simulate_closed_loop: expects the 6-state attitude plant");
    if (K.realization.n_u() != plant.n_y() || K.realization.n_y() != plant.n_u())
        throw std::invalid_argument("simulate_closed_loop: controller dimensions mismatch");
    const double T = plant.period();
    if (!(T > 0.0))
        throw std::invalid_argument("simulate_closed_loop: plant must be periodic");
    if (!(step_s > 0.0) || !(horizon_orbits > 0.0))
        throw std::invalid_argument("simulate_closed_loop: bad step or horizon");

    const auto& ctrl = K.realization;
    const int n_p = static_cast<int>(plant.n_x());
    const int n_k = static_cast<int>(ctrl.n_x());
    const int n_steps = static_cast<int>(std::llround(horizon_orbits * T / step_s));

    auto dist_at = [&](double t) -> Eigen::Vector3d {
        return disturbance ? evaluate_disturbance(*disturbance, t) : Eigen::Vector3d::Zero();
    };
    // Coupled plant/controller field: xp' = Ap xp + Bp (Ck xk + d),
    // xk' = Ak xk - Bk Cp xp (zero reference, e = -y).
    auto field = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd dx(n_p + n_k);
        const auto xp = x.head(n_p);
        const auto xk = x.tail(n_k);
        const Eigen::Vector3d u = ctrl.C()(t) * xk;
        dx.head(n_p) = plant.A()(t) * xp + plant.B()(t) * (u + dist_at(t));
        dx.tail(n_k) = ctrl.A()(t) * xk - ctrl.B()(t) * (plant.C()(t) * xp);
        return dx;
    };

    SimulationResult res;
    res.time.resize(static_cast<size_t>(n_steps) + 1);
    res.theta_deg.resize(n_steps + 1, 3);
    res.rate_rad_s.resize(n_steps + 1, 3);
    res.torque_nm.resize(n_steps + 1, 3);
    res.controller_state.resize(n_steps + 1, n_k);

    const double deg = M_PI / 180.0;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_p + n_k);
    x(0) = theta0_deg(0) * deg;
    x(2) = theta0_deg(1) * deg;
    x(4) = theta0_deg(2) * deg;

    const double t_final_orbit = (horizon_orbits - 1.0) * T;
    std::array<double, 3> final_max{0.0, 0.0, 0.0};
    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * step_s;
        if (!x.allFinite())
            throw BlowupError("simulate_closed_loop: non-finite state", t);
        res.time[static_cast<size_t>(k)] = t;
        for (int i = 0; i < 3; ++i) {
            res.theta_deg(k, i) = x(2 * i) / deg;
            res.rate_rad_s(k, i) = x(2 * i + 1);
        }
        res.torque_nm.row(k) = (ctrl.C()(t) * x.tail(n_k)).transpose();
        res.controller_state.row(k) = x.tail(n_k).transpose();
        if (t >= t_final_orbit - 1e-9 * T)
            for (int i = 0; i < 3; ++i)
                final_max[static_cast<size_t>(i)] =
                    std::max(final_max[static_cast<size_t>(i)], std::abs(res.theta_deg(k, i)));
        if (k < n_steps)
            x = rk4_vector_step(field, x, t, step_s);
    }
    res.final_orbit_max_deg = final_max;
    return res;
}

SweepReport uncertainty_sweep(const AbacusParams& base, const StructuredController& K,
                              const DisturbanceModel* disturbance,
                              const Eigen::Vector3d& theta0_deg, double horizon_orbits,
                              double step_s, ExecutionPolicy policy) {
    static constexpr std::array<double, 3> kFactors{0.8, 1.0, 1.2};
    SweepReport report;
    report.corners.resize(27);
    std::vector<SimulationResult> results(27);

    auto run_corner = [&](int idx) {
        SweepCorner corner;
        corner.factors = {kFactors[static_cast<size_t>(idx / 9)],
                          kFactors[static_cast<size_t>((idx / 3) % 3)],
                          kFactors[static_cast<size_t>(idx % 3)]};
        AbacusParams params = base;
        params.inertia_perturbation = corner.factors;
        try {
            // Perturbation enters the plant only; the controller stays nominal.
            results[static_cast<size_t>(idx)] = simulate_closed_loop(
                build_abacus(params), K, disturbance, theta0_deg, horizon_orbits, step_s);
            corner.stable = true;
            corner.final_orbit_max_deg = results[static_cast<size_t>(idx)].final_orbit_max_deg;
        } catch (const BlowupError& e) {
            corner.stable = false;
            corner.failure_time = e.time();
        }
        report.corners[static_cast<size_t>(idx)] = corner;
    };

    if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int idx = 0; idx < 27; ++idx)
            run_corner(idx);
    } else {
        for (int idx = 0; idx < 27; ++idx)
            run_corner(idx);
    }

    report.all_stable = true;
    bool have_time = false;
    for (int idx = 0; idx < 27; ++idx) {
        const auto& corner = report.corners[static_cast<size_t>(idx)];
        if (!corner.stable) {
            report.all_stable = false;
            continue;
        }
        const auto& traj = results[static_cast<size_t>(idx)];
        if (!have_time) {
            report.time = traj.time;
            report.theta_min_deg = traj.theta_deg;
            report.theta_max_deg = traj.theta_deg;
            have_time = true;
        } else {
            report.theta_min_deg = report.theta_min_deg.cwiseMin(traj.theta_deg);
            report.theta_max_deg = report.theta_max_deg.cwiseMax(traj.theta_deg);
        }
        for (int i = 0; i < 3; ++i)
            report.worst_final_orbit_max_deg[static_cast<size_t>(i)] =
                std::max(report.worst_final_orbit_max_deg[static_cast<size_t>(i)],
                         corner.final_orbit_max_deg[static_cast<size_t>(i)]);
    }
    return report;
}

} // namespace ltpc
