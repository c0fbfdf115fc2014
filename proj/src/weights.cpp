#include "ltpc/weights.hpp"

#include <cmath>

namespace ltpc {

FirstOrderWeight make_sensitivity_weight(double omega_bw, double epsilon) {
    if (!(omega_bw > 0.0))
        throw std::invalid_argument("make_sensitivity_weight: omega_bw must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("make_sensitivity_weight: epsilon must lie in (0, 1)");
    // (s + q) / (2s + eps*q) with q = omega_bw * sqrt(3/(1-eps^2))
    //   = 1/2 + ((2q - eps*q)/4) / (s + eps*q/2)
    const double q = omega_bw * std::sqrt(3.0 / (1.0 - epsilon * epsilon));
    FirstOrderWeight w;
    w.a = -epsilon * q / 2.0;
    w.b = 1.0;
    w.c = (2.0 * q - epsilon * q) / 4.0;
    w.d = 0.5;
    return w;
}

FirstOrderWeight make_control_weight(double omega_u) {
    if (!(omega_u > 0.0))
        throw std::invalid_argument("make_control_weight: omega_u must be positive");
    // (s + wu) / (0.01 s + wu) = 100 - 9900*wu / (s + 100*wu)
    FirstOrderWeight w;
    w.a = -100.0 * omega_u;
    w.b = 1.0;
    w.c = -9900.0 * omega_u;
    w.d = 100.0;
    return w;
}

std::complex<double> weight_response(const FirstOrderWeight& w, double omega) {
    const std::complex<double> s(0.0, omega);
    return w.c * w.b / (s - w.a) + w.d;
}

Eigen::MatrixXd WeightBank::A() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_states(), n_states());
    for (int i = 0; i < n_states(); ++i)
        M(i, i) = channels[static_cast<size_t>(i)].a;
    return M;
}

Eigen::MatrixXd WeightBank::B() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_states(), n_channels);
    for (int i = 0; i < n_states(); ++i)
        M(i, i) = channels[static_cast<size_t>(i)].b;
    return M;
}

Eigen::MatrixXd WeightBank::C() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_channels, n_states());
    for (int i = 0; i < n_states(); ++i)
        M(i, i) = channels[static_cast<size_t>(i)].c;
    return M;
}

Eigen::MatrixXd WeightBank::D() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n_channels, n_channels);
    for (int i = 0; i < n_states(); ++i)
        M(i, i) = channels[static_cast<size_t>(i)].d;
    return M;
}

ScalingSet ScalingSet::identity(int n_e, int n_u) {
    ScalingSet s;
    s.V_e = Eigen::VectorXd::Ones(n_e);
    s.V_u = Eigen::VectorXd::Ones(n_u);
    s.V_d = Eigen::VectorXd::Ones(n_u);
    return s;
}

} // namespace ltpc
