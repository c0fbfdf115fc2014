#pragma once

#include "ltpc/periodic_matrix.hpp"

#include <tuple>

namespace ltpc {

/// Strictly proper linear time-periodic system
///   xdot = A(t) x + B(t) u,   y = C(t) x
/// with all coefficients sharing one fundamental period (0 if the system is LTI).
class LtpSystem {
public:
    LtpSystem() = default;
    LtpSystem(PeriodicMatrix A, PeriodicMatrix B, PeriodicMatrix C);

    static LtpSystem lti(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C);

    Eigen::Index n_x() const { return A_.rows(); }
    Eigen::Index n_u() const { return B_.cols(); }
    Eigen::Index n_y() const { return C_.rows(); }
    double period() const { return period_; }
    bool is_lti() const { return period_ == 0.0; }

    const PeriodicMatrix& A() const { return A_; }
    const PeriodicMatrix& B() const { return B_; }
    const PeriodicMatrix& C() const { return C_; }

private:
    PeriodicMatrix A_, B_, C_;
    double period_ = 0.0;
};

/// General periodic state-space realization with feedthrough
///   xdot = A(t) x + B(t) u,   y = C(t) x + D(t) u.
/// Used for closed loops, coprime factor M, and frozen-time analysis.
class LtpRealization {
public:
    LtpRealization() = default;
    LtpRealization(PeriodicMatrix A, PeriodicMatrix B, PeriodicMatrix C, PeriodicMatrix D);
    explicit LtpRealization(const LtpSystem& sys);

    Eigen::Index n_x() const { return A_.rows(); }
    Eigen::Index n_u() const { return B_.cols(); }
    Eigen::Index n_y() const { return C_.rows(); }
    double period() const { return period_; }
    bool is_lti() const { return period_ == 0.0; }

    const PeriodicMatrix& A() const { return A_; }
    const PeriodicMatrix& B() const { return B_; }
    const PeriodicMatrix& C() const { return C_; }
    const PeriodicMatrix& D() const { return D_; }

private:
    PeriodicMatrix A_, B_, C_, D_;
    double period_ = 0.0;
};

/// Coefficient matrices at time t (wrapped into the fundamental period).
std::tuple<Eigen::MatrixXd, Eigen::MatrixXd, Eigen::MatrixXd>
evaluate_system(const LtpSystem& sys, double t);

/// Cascade sys1 -> sys2 (output of sys1 drives input of sys2). An LTI factor
/// adopts the partner's period; two genuinely periodic factors must agree.
LtpSystem series(const LtpSystem& sys1, const LtpSystem& sys2);

/// Negative-feedback closure of plant P and controller K:
///   y = P(u + d),  e = r - y,  u = K e.
/// Inputs (r, d), outputs (e, u); state is (x_P, x_K). Both systems are
/// strictly proper, so the loop is always well posed.
LtpRealization feedback(const LtpSystem& plant, const LtpSystem& controller);

} // namespace ltpc
