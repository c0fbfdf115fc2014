#pragma once

#include "ltpc/abacus.hpp"
#include "ltpc/exec.hpp"
#include "ltpc/ltp_system.hpp"
#include "ltpc/synthesis.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace ltpc {

/// State/output history of a linear time-varying simulation on a uniform step.
struct LtvTrajectory {
    std::vector<double> time;
    Eigen::MatrixXd state;  // (n_steps+1) x n_x
    Eigen::MatrixXd output; // (n_steps+1) x n_y
};

/// RK4 integration of xdot = A(t) x + B(t) u(t), y = C(t) x + D(t) u(t).
/// Throws BlowupError when the state stops being finite.
LtvTrajectory simulate_realization(const LtpRealization& sys,
                                   const std::function<Eigen::VectorXd(double)>& input,
                                   const Eigen::VectorXd& x0, double t0, double t1, double step);

/// Closed-loop attitude simulation: plant driven by u + d at the input,
/// controller driven by e = -y (zero reference), zero controller initial
/// state, initial attitude error theta0 on the angle states.
struct SimulationResult {
    std::vector<double> time;        // s
    Eigen::MatrixXd theta_deg;       // (n_steps+1) x 3
    Eigen::MatrixXd rate_rad_s;      // (n_steps+1) x 3
    Eigen::MatrixXd torque_nm;       // (n_steps+1) x 3
    Eigen::MatrixXd controller_state; // (n_steps+1) x n_K
    std::array<double, 3> final_orbit_max_deg{0.0, 0.0, 0.0};
};

SimulationResult simulate_closed_loop(const LtpSystem& plant, const StructuredController& K,
                                      const DisturbanceModel* disturbance,
                                      const Eigen::Vector3d& theta0_deg, double horizon_orbits,
                                      double step_s);

struct SweepCorner {
    std::array<double, 3> factors{1.0, 1.0, 1.0};
    bool stable = false;
    double failure_time = 0.0; // valid when !stable
    std::array<double, 3> final_orbit_max_deg{0.0, 0.0, 0.0};
};

/// Per-axis min/max envelopes over the stable corners plus per-corner
/// summaries; corners are the 27 permutations of {0.8, 1.0, 1.2} in
/// lexicographic order (corner 13 is nominal).
struct SweepReport {
    std::vector<SweepCorner> corners;
    std::vector<double> time;
    Eigen::MatrixXd theta_min_deg; // (n_steps+1) x 3
    Eigen::MatrixXd theta_max_deg; // (n_steps+1) x 3
    std::array<double, 3> worst_final_orbit_max_deg{0.0, 0.0, 0.0};
    bool all_stable = false;
    int nominal_index = 13;
};

SweepReport uncertainty_sweep(const AbacusParams& base, const StructuredController& K,
                              const DisturbanceModel* disturbance,
                              const Eigen::Vector3d& theta0_deg, double horizon_orbits,
                              double step_s,
                              ExecutionPolicy policy = ExecutionPolicy::Parallel);

} // namespace ltpc
