#include "ltpc/abacus.hpp"

#include <cmath>
#include <stdexcept>

namespace ltpc {

void AbacusParams::validate() const {
    if (!(orbit_rate > 0.0))
        throw std::invalid_argument("AbacusParams: orbit rate must be positive");
    if (!(J1 > 0.0 && J2 > 0.0 && J3 > 0.0))
        throw std::invalid_argument("AbacusParams: inertias must be positive");
    for (double f : inertia_perturbation)
        if (!(f >= 0.8 && f <= 1.2))
            throw std::invalid_argument(
                "AbacusParams: perturbation factors must lie in [0.8, 1.2]");
}

LtpSystem build_abacus(const AbacusParams& params) {
    params.validate();
    const double n = params.orbit_rate;
    const auto J = params.perturbed_inertias();
    const double k1 = 3.0 * n * n * (J[1] - J[2]) / J[0];
    const double k2 = 3.0 * n * n * (J[0] - J[2]) / J[1];
    const double k3 = 3.0 * n * n * (J[1] - J[0]) / J[2];

    // th1dd = -k1 (cos^2(nt) th1 + sin(2nt)/2 th3) + (u1+d1)/J1
    // th2dd = -k2 cos(2nt) th2                     + (u2+d2)/J2
    // th3dd = -k3 (sin^2(nt) th3 + sin(2nt)/2 th1) + (u3+d3)/J3
    // with cos^2 = (1+cos 2nt)/2 and sin^2 = (1-cos 2nt)/2.
    Eigen::MatrixXd A0 = Eigen::MatrixXd::Zero(6, 6);
    A0(0, 1) = A0(2, 3) = A0(4, 5) = 1.0;
    A0(1, 0) = -k1 / 2.0;
    A0(5, 4) = -k3 / 2.0;

    Eigen::MatrixXd Ac = Eigen::MatrixXd::Zero(6, 6);
    Ac(1, 0) = -k1 / 2.0;
    Ac(3, 2) = -k2;
    Ac(5, 4) = k3 / 2.0;

    Eigen::MatrixXd As = Eigen::MatrixXd::Zero(6, 6);
    As(1, 4) = -k1 / 2.0;
    As(5, 0) = -k3 / 2.0;

    PeriodicMatrix A =
        PeriodicMatrix::harmonic(params.period(), A0, {HarmonicTerm{2, Ac, As}});

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(6, 3);
    B(1, 0) = 1.0 / J[0];
    B(3, 1) = 1.0 / J[1];
    B(5, 2) = 1.0 / J[2];

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(3, 6);
    C(0, 0) = C(1, 2) = C(2, 4) = 1.0;

    return LtpSystem(std::move(A), PeriodicMatrix::constant(std::move(B)),
                     PeriodicMatrix::constant(std::move(C)));
}

Eigen::Vector3d evaluate_disturbance(const DisturbanceModel& model, double t) {
    const double n = model.params.orbit_rate;
    const double J1 = model.params.J1;
    const double J3 = model.params.J3;
    Eigen::Vector3d d;
    d(0) = 2400.0 - 2380.0 * std::cos(n * t);
    d(1) = 240.0 + 0.3 * n * n * (J3 - J1) * std::sin(2.0 * n * t);
    d(2) = -2380.0 * std::sin(n * t);
    return d;
}

} // namespace ltpc
