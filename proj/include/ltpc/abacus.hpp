#pragma once

#include "ltpc/ltp_system.hpp"

#include <Eigen/Dense>

#include <array>

namespace ltpc {

/// Abacus solar-power satellite in geostationary orbit: orbit rate and
/// principal moments of inertia (roll, pitch, yaw), with multiplicative
/// perturbation factors for uncertainty studies.
struct AbacusParams {
    double orbit_rate = 7.292e-5;           // rad/s
    double J1 = 2.8e13, J2 = 1.8e13, J3 = 4.6e13; // kg m^2
    std::array<double, 3> inertia_perturbation{1.0, 1.0, 1.0};

    double period() const { return 2.0 * M_PI / orbit_rate; }
    std::array<double, 3> perturbed_inertias() const {
        return {J1 * inertia_perturbation[0], J2 * inertia_perturbation[1],
                J3 * inertia_perturbation[2]};
    }
    void validate() const;
};

/// Six-state attitude model about the sun-pointing reference: state
/// (th1, th1dot, th2, th2dot, th3, th3dot), torque inputs, angle outputs.
/// The gravity-gradient stiffness terms make the coefficients periodic at
/// twice the orbit rate; pitch is decoupled from roll/yaw.
LtpSystem build_abacus(const AbacusParams& params);

/// Worst-case disturbance torques (solar pressure, microwave beam reaction,
/// gravity gradient), periodic with the orbit.
struct DisturbanceModel {
    AbacusParams params;
};

Eigen::Vector3d evaluate_disturbance(const DisturbanceModel& model, double t);

} // namespace ltpc
