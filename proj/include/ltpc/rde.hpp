#pragma once

#include "ltpc/errors.hpp"
#include "ltpc/ltp_system.hpp"
#include "ltpc/periodic_matrix.hpp"
#include "ltpc/time_grid.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace ltpc {

enum class IntegrationDirection { Forward, Backward };

/// Coefficients of a symmetric matrix Riccati differential equation.
///
/// Forward:    dX/dt = drift X + X drift' - X quadratic X + constant
/// Backward:  -dX/dt = drift' X + X drift - X quadratic X + constant
///
/// quadratic and constant are symmetric (symmetrized by the builders); the
/// affine `constant` term is positive semidefinite for all problems built
/// here, while `quadratic` may be indefinite for game-type equations.
struct RdeCoefficients {
    PeriodicMatrix drift;
    PeriodicMatrix quadratic;
    PeriodicMatrix constant;
    IntegrationDirection direction = IntegrationDirection::Forward;
};

/// Gridded T-periodic RDE solution: values[k] = X(t_k) on grid.point(k),
/// symmetric PSD at every grid point, with the boundary residual that ended
/// the period iteration.
struct PeriodicRdeSolution {
    TimeGrid grid;
    std::vector<Eigen::MatrixXd> values;
    double convergence_residual = 0.0;
    int periods_iterated = 0;

    const Eigen::MatrixXd& at_index(int k) const { return values[static_cast<size_t>(k)]; }

    /// Value at arbitrary t (periodic cubic interpolation between grid points).
    Eigen::MatrixXd operator()(double t) const;

    PeriodicMatrix to_periodic_matrix() const;

    /// Largest relative symmetry defect over grid points.
    double symmetry_defect() const;
    /// Smallest eigenvalue over grid points, relative to the spectral norm.
    double min_eigenvalue_ratio() const;
};

enum class RdeStatus { Converged, NoConvergence, Blowup, NotPsd };

struct RdeSolveReport {
    RdeStatus status = RdeStatus::NoConvergence;
    std::optional<PeriodicRdeSolution> solution; // engaged iff Converged
    double residual = 0.0;
    int periods = 0;
    double failure_time = 0.0; // Blowup only
};

/// One classical RK4 step of a matrix ODE dX/dt = rhs(t, X); h < 0 steps
/// backward. The result is symmetrized as (X + X')/2 and checked finite.
template <class Rhs>
Eigen::MatrixXd rk4_matrix_step(Rhs&& rhs, const Eigen::MatrixXd& X, double t, double h) {
    const Eigen::MatrixXd k1 = rhs(t, X);
    const Eigen::MatrixXd k2 = rhs(t + 0.5 * h, (X + (0.5 * h) * k1).eval());
    const Eigen::MatrixXd k3 = rhs(t + 0.5 * h, (X + (0.5 * h) * k2).eval());
    const Eigen::MatrixXd k4 = rhs(t + h, (X + h * k3).eval());
    Eigen::MatrixXd next = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next = (0.5 * (next + next.transpose())).eval();
    if (!next.allFinite())
        throw BlowupError("rk4_matrix_step: non-finite result", t + h);
    return next;
}

/// Periodic stabilizing solution by period iteration: integrate over whole
/// periods from X0 (default zero) until the period-map residual
/// ||X(kT) - X((k-1)T)||_F / max(1, ||X(kT)||_F) drops below tol, then
/// re-integrate one period from the converged boundary value.
RdeSolveReport try_solve_periodic_rde(const RdeCoefficients& coeffs, const TimeGrid& grid,
                                      double tol, int max_periods,
                                      const Eigen::MatrixXd* X0 = nullptr);

/// Throwing wrapper around try_solve_periodic_rde.
PeriodicRdeSolution solve_periodic_rde(const RdeCoefficients& coeffs, const TimeGrid& grid,
                                       double tol, int max_periods,
                                       const Eigen::MatrixXd* X0 = nullptr);

/// Filter RDE  dY/dt = A Y + Y A' - Y C'C Y + B B'  (forward).
RdeCoefficients filter_rde_coefficients(const LtpSystem& sys, int n_samples);
PeriodicRdeSolution solve_periodic_filter_rde(const LtpSystem& sys, const TimeGrid& grid,
                                              double tol, int max_periods);

/// Full-information synthesis plant
///   xdot = A x + B1 w + B2 u,   z = C1 x + D11 w + D12 u
/// for which the feedback u = F x is sought making the induced L2 gain
/// from w to z less than gamma.
struct FullInformationPlant {
    PeriodicMatrix A, B1, B2, C1, D11, D12;
    double period = 0.0;

    Eigen::Index n_x() const { return A.rows(); }
    Eigen::Index n_w() const { return B1.cols(); }
    Eigen::Index n_u() const { return B2.cols(); }
    Eigen::Index n_z() const { return C1.rows(); }
};

/// Backward game RDE for the full-information problem at level gamma:
///  -dX/dt = Ah'X + X Ah - X (B2 Ru^-1 B2' + B1 Rw^-1 B1') X
///           + C1' (I - D12 Ru^-1 D12' - D11 Rw^-1 D11') C1
/// with Ah = A - B2 Ru^-1 D12' C1 - B1 Rw^-1 D11' C1, Ru = D12'D12 and
/// Rw = D11'D11 - gamma^2 I. Returns nullopt when Rw fails to be negative
/// definite somewhere on the grid (gamma below the feedthrough level).
std::optional<RdeCoefficients> full_information_rde_coefficients(const FullInformationPlant& plant,
                                                                 double gamma, int n_samples);

/// State-feedback gain of the full-information problem, F = -Ru^-1 (B2'X + D12'C1).
PeriodicMatrix state_feedback_gain(const FullInformationPlant& plant,
                                   const PeriodicRdeSolution& X);

/// Controller RDE of the structured synthesis: the full-information problem
/// built from the plant and its filter solution Y (disturbance channel
/// B1 = -Y C', regulated output z = (e, u)). Requires gamma > 1.
RdeSolveReport try_solve_periodic_controller_rde(const LtpSystem& sys,
                                                 const PeriodicRdeSolution& Y, double gamma,
                                                 const TimeGrid& grid, double tol, int max_periods,
                                                 const Eigen::MatrixXd* X0 = nullptr);
PeriodicRdeSolution solve_periodic_controller_rde(const LtpSystem& sys,
                                                  const PeriodicRdeSolution& Y, double gamma,
                                                  const TimeGrid& grid, double tol,
                                                  int max_periods);

/// Unweighted full-information plant underlying the controller RDE.
FullInformationPlant unweighted_full_information_plant(const LtpSystem& sys,
                                                       const PeriodicRdeSolution& Y);

} // namespace ltpc
