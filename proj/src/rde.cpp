#include "ltpc/rde.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ltpc {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& M) {
    return 0.5 * (M + M.transpose());
}

// Evaluator of the canonical forward-marching form
//   dX/ds = D(s) X + X D(s)' - X Q(s) X + R(s),  s in [0, T],
// where backward problems are expressed in reversed time s = T - t.
struct CanonicalRhs {
    const RdeCoefficients& coeffs;
    double period;

    Eigen::MatrixXd operator()(double s, const Eigen::MatrixXd& X) const {
        const bool backward = coeffs.direction == IntegrationDirection::Backward;
        const double tau = backward ? period - s : s;
        Eigen::MatrixXd D = coeffs.drift(tau);
        if (backward)
            D.transposeInPlace();
        const Eigen::MatrixXd Q = coeffs.quadratic(tau);
        const Eigen::MatrixXd R = coeffs.constant(tau);
        const Eigen::MatrixXd DX = D * X;
        Eigen::MatrixXd out = DX + DX.transpose() - X * Q * X + R;
        return symmetrized(out);
    }
};

} // namespace

Eigen::MatrixXd PeriodicRdeSolution::operator()(double t) const {
    // Same periodic cubic rule as PeriodicMatrix::sampled, applied in place.
    const int n = static_cast<int>(values.size());
    double u = std::fmod(t, grid.period_T);
    if (u < 0.0)
        u += grid.period_T;
    if (u >= grid.period_T)
        u -= grid.period_T;
    u = u / grid.period_T * n;
    int i = static_cast<int>(std::floor(u));
    if (i >= n)
        i = n - 1;
    const double x = u - i;
    if (x == 0.0)
        return values[static_cast<size_t>(i)];
    const auto& ym1 = values[static_cast<size_t>((i - 1 + n) % n)];
    const auto& y0 = values[static_cast<size_t>(i)];
    const auto& y1 = values[static_cast<size_t>((i + 1) % n)];
    const auto& y2 = values[static_cast<size_t>((i + 2) % n)];
    const double lm1 = -x * (x - 1.0) * (x - 2.0) / 6.0;
    const double l0 = (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0;
    const double l1 = -(x + 1.0) * x * (x - 2.0) / 2.0;
    const double l2 = (x + 1.0) * x * (x - 1.0) / 6.0;
    return lm1 * ym1 + l0 * y0 + l1 * y1 + l2 * y2;
}

PeriodicMatrix PeriodicRdeSolution::to_periodic_matrix() const {
    return PeriodicMatrix::sampled(grid.period_T, values);
}

double PeriodicRdeSolution::symmetry_defect() const {
    double worst = 0.0;
    for (const auto& X : values) {
        const double denom = std::max(1.0, X.norm());
        worst = std::max(worst, (X - X.transpose()).norm() / denom);
    }
    return worst;
}

double PeriodicRdeSolution::min_eigenvalue_ratio() const {
    double worst = 0.0;
    for (const auto& X : values) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = std::max(std::abs(es.eigenvalues().maxCoeff()), std::abs(lo));
        if (hi == 0.0)
            continue;
        worst = std::min(worst, lo / hi);
    }
    return worst;
}

RdeSolveReport try_solve_periodic_rde(const RdeCoefficients& coeffs, const TimeGrid& grid,
                                      double tol, int max_periods, const Eigen::MatrixXd* X0) {
    if (tol <= 0.0)
        throw std::invalid_argument("try_solve_periodic_rde: tol must be positive");
    if (max_periods < 1)
        throw std::invalid_argument("try_solve_periodic_rde: max_periods must be >= 1");
    const Eigen::Index n = coeffs.drift.rows();
    if (coeffs.drift.cols() != n || coeffs.quadratic.rows() != n || coeffs.quadratic.cols() != n ||
        coeffs.constant.rows() != n || coeffs.constant.cols() != n)
        throw std::invalid_argument("try_solve_periodic_rde: coefficient dimension mismatch");

    const CanonicalRhs rhs{coeffs, grid.period_T};
    const double h = grid.step();
    const int N = grid.n_points;

    RdeSolveReport report;
    Eigen::MatrixXd X =
        X0 ? symmetrized(*X0) : Eigen::MatrixXd::Zero(n, n).eval();

    try {
        double residual = std::numeric_limits<double>::infinity();
        int periods = 0;
        for (; periods < max_periods; ++periods) {
            const Eigen::MatrixXd X_start = X;
            for (int k = 0; k < N; ++k) {
                X = rk4_matrix_step(rhs, X, k * h, h);
                if (X.norm() > 1e200)
                    throw BlowupError("try_solve_periodic_rde: solution norm overflow", k * h);
            }
            residual = (X - X_start).norm() / std::max(1.0, X.norm());
            if (residual < tol) {
                ++periods;
                break;
            }
        }
        report.residual = residual;
        report.periods = periods;
        if (!(residual < tol)) {
            report.status = RdeStatus::NoConvergence;
            return report;
        }

        // One more pass from the converged boundary value, storing the grid.
        PeriodicRdeSolution sol;
        sol.grid = grid;
        sol.convergence_residual = residual;
        sol.periods_iterated = periods;
        std::vector<Eigen::MatrixXd> path(static_cast<size_t>(N) + 1);
        path[0] = X;
        for (int k = 0; k < N; ++k)
            path[static_cast<size_t>(k) + 1] = rk4_matrix_step(rhs, path[static_cast<size_t>(k)], k * h, h);
        sol.values.resize(static_cast<size_t>(N));
        if (coeffs.direction == IntegrationDirection::Forward) {
            for (int k = 0; k < N; ++k)
                sol.values[static_cast<size_t>(k)] = path[static_cast<size_t>(k)];
        } else {
            // s = T - t: the endpoint of the reversed march is the value at t = 0.
            sol.values[0] = path[static_cast<size_t>(N)];
            for (int k = 1; k < N; ++k)
                sol.values[static_cast<size_t>(k)] = path[static_cast<size_t>(N - k)];
        }

        if (sol.min_eigenvalue_ratio() < -1e-8) {
            report.status = RdeStatus::NotPsd;
            return report;
        }
        report.status = RdeStatus::Converged;
        report.solution = std::move(sol);
        return report;
    } catch (const BlowupError& e) {
        report.status = RdeStatus::Blowup;
        report.failure_time = e.time();
        return report;
    }
}

PeriodicRdeSolution solve_periodic_rde(const RdeCoefficients& coeffs, const TimeGrid& grid,
                                       double tol, int max_periods, const Eigen::MatrixXd* X0) {
    RdeSolveReport report = try_solve_periodic_rde(coeffs, grid, tol, max_periods, X0);
    switch (report.status) {
    case RdeStatus::Converged:
        return std::move(*report.solution);
    case RdeStatus::NoConvergence:
        throw NoConvergenceError("periodic RDE: period iteration did not converge",
                                 report.residual, report.periods);
    case RdeStatus::Blowup:
        throw BlowupError("periodic RDE: integration blew up", report.failure_time);
    case RdeStatus::NotPsd:
        throw NoConvergenceError("periodic RDE: converged solution is not PSD", report.residual,
                                 report.periods);
    }
    throw std::logic_error("solve_periodic_rde: unreachable");
}

RdeCoefficients filter_rde_coefficients(const LtpSystem& sys, int n_samples) {
    RdeCoefficients coeffs;
    coeffs.direction = IntegrationDirection::Forward;
    coeffs.drift = sys.A();
    if (sys.C().is_constant()) {
        const Eigen::MatrixXd C = sys.C()(0.0);
        coeffs.quadratic = PeriodicMatrix::constant(symmetrized(C.transpose() * C));
    } else {
        coeffs.quadratic = PeriodicMatrix::from_function(sys.period(), n_samples, [&](double t) {
            const Eigen::MatrixXd C = sys.C()(t);
            return symmetrized(C.transpose() * C).eval();
        });
    }
    if (sys.B().is_constant()) {
        const Eigen::MatrixXd B = sys.B()(0.0);
        coeffs.constant = PeriodicMatrix::constant(symmetrized(B * B.transpose()));
    } else {
        coeffs.constant = PeriodicMatrix::from_function(sys.period(), n_samples, [&](double t) {
            const Eigen::MatrixXd B = sys.B()(t);
            return symmetrized(B * B.transpose()).eval();
        });
    }
    return coeffs;
}

PeriodicRdeSolution solve_periodic_filter_rde(const LtpSystem& sys, const TimeGrid& grid,
                                              double tol, int max_periods) {
    if (sys.period() != 0.0 && std::abs(sys.period() - grid.period_T) > 1e-9 * grid.period_T)
        throw std::invalid_argument("solve_periodic_filter_rde: grid period must match system");
    return solve_periodic_rde(filter_rde_coefficients(sys, grid.n_points), grid, tol, max_periods);
}

std::optional<RdeCoefficients> full_information_rde_coefficients(const FullInformationPlant& plant,
                                                                 double gamma, int n_samples) {
    const Eigen::Index n = plant.n_x();
    const double g2 = gamma * gamma;

    bool all_constant = plant.A.is_constant() && plant.B1.is_constant() &&
                        plant.B2.is_constant() && plant.C1.is_constant() &&
                        plant.D11.is_constant() && plant.D12.is_constant();

    bool rw_ok = true;
    auto build_at = [&](double t, Eigen::MatrixXd& drift, Eigen::MatrixXd& quad,
                        Eigen::MatrixXd& cons) {
        const Eigen::MatrixXd A = plant.A(t);
        const Eigen::MatrixXd B1 = plant.B1(t);
        const Eigen::MatrixXd B2 = plant.B2(t);
        const Eigen::MatrixXd C1 = plant.C1(t);
        const Eigen::MatrixXd D11 = plant.D11(t);
        const Eigen::MatrixXd D12 = plant.D12(t);

        const Eigen::MatrixXd Rw =
            D11.transpose() * D11 - g2 * Eigen::MatrixXd::Identity(plant.n_w(), plant.n_w());
        if (Rw.rows() > 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Rw, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().maxCoeff() >= 0.0) {
                rw_ok = false;
                drift = quad = cons = Eigen::MatrixXd::Zero(n, n);
                return;
            }
        }
        const Eigen::MatrixXd Ru = D12.transpose() * D12;
        Eigen::MatrixXd RuInvB2t, RuInvD12tC1;
        if (plant.n_u() > 0) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Ru);
            if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
                throw std::invalid_argument(
                    "full_information_rde_coefficients: D12'D12 must be positive definite");
            RuInvB2t = ldlt.solve(B2.transpose());
            RuInvD12tC1 = ldlt.solve(D12.transpose() * C1);
        } else {
            RuInvB2t = Eigen::MatrixXd::Zero(0, n);
            RuInvD12tC1 = Eigen::MatrixXd::Zero(0, n);
        }
        Eigen::LDLT<Eigen::MatrixXd> rw(( -Rw ).eval()); // -Rw is PD
        const Eigen::MatrixXd RwInvB1t = -rw.solve(B1.transpose());
        const Eigen::MatrixXd RwInvD11tC1 = -rw.solve(D11.transpose() * C1);

        drift = A - B2 * RuInvD12tC1 - B1 * RwInvD11tC1;
        quad = symmetrized(B2 * RuInvB2t + B1 * RwInvB1t);
        cons = symmetrized(C1.transpose() * C1 - (D12 * RuInvD12tC1 + D11 * RwInvD11tC1).transpose() * C1);
    };

    RdeCoefficients coeffs;
    coeffs.direction = IntegrationDirection::Backward;
    if (all_constant) {
        Eigen::MatrixXd drift, quad, cons;
        build_at(0.0, drift, quad, cons);
        if (!rw_ok)
            return std::nullopt;
        coeffs.drift = PeriodicMatrix::constant(std::move(drift));
        coeffs.quadratic = PeriodicMatrix::constant(std::move(quad));
        coeffs.constant = PeriodicMatrix::constant(std::move(cons));
        return coeffs;
    }

    std::vector<Eigen::MatrixXd> drifts, quads, conses;
    drifts.reserve(static_cast<size_t>(n_samples));
    quads.reserve(static_cast<size_t>(n_samples));
    conses.reserve(static_cast<size_t>(n_samples));
    const double h = plant.period / n_samples;
    for (int k = 0; k < n_samples; ++k) {
        Eigen::MatrixXd drift, quad, cons;
        build_at(k * h, drift, quad, cons);
        if (!rw_ok)
            return std::nullopt;
        drifts.push_back(std::move(drift));
        quads.push_back(std::move(quad));
        conses.push_back(std::move(cons));
    }
    coeffs.drift = PeriodicMatrix::sampled(plant.period, std::move(drifts));
    coeffs.quadratic = PeriodicMatrix::sampled(plant.period, std::move(quads));
    coeffs.constant = PeriodicMatrix::sampled(plant.period, std::move(conses));
    return coeffs;
}

PeriodicMatrix state_feedback_gain(const FullInformationPlant& plant,
                                   const PeriodicRdeSolution& X) {
    auto gain_at = [&](double t) {
        const Eigen::MatrixXd B2 = plant.B2(t);
        const Eigen::MatrixXd C1 = plant.C1(t);
        const Eigen::MatrixXd D12 = plant.D12(t);
        Eigen::LDLT<Eigen::MatrixXd> ru((D12.transpose() * D12).eval());
        return (-ru.solve(B2.transpose() * X(t) + D12.transpose() * C1)).eval();
    };
    return PeriodicMatrix::from_function(X.grid.period_T, X.grid.n_points, gain_at);
}

FullInformationPlant unweighted_full_information_plant(const LtpSystem& sys,
                                                       const PeriodicRdeSolution& Y) {
    const Eigen::Index n = sys.n_x(), nu = sys.n_u(), ny = sys.n_y();
    FullInformationPlant plant;
    plant.period = sys.period() != 0.0 ? sys.period() : Y.grid.period_T;
    plant.A = sys.A();
    plant.B2 = sys.B();
    // Disturbance channel through the filter gain L = -Y C'.
    plant.B1 = PeriodicMatrix::from_function(Y.grid.period_T, Y.grid.n_points, [&](double t) {
        return (-Y(t) * sys.C()(t).transpose()).eval();
    });
    if (sys.C().is_constant()) {
        Eigen::MatrixXd C1 = Eigen::MatrixXd::Zero(ny + nu, n);
        C1.topRows(ny) = -sys.C()(0.0);
        plant.C1 = PeriodicMatrix::constant(std::move(C1));
    } else {
        plant.C1 = PeriodicMatrix::from_function(sys.period(), Y.grid.n_points, [&](double t) {
            Eigen::MatrixXd C1 = Eigen::MatrixXd::Zero(ny + nu, n);
            C1.topRows(ny) = -sys.C()(t);
            return C1;
        });
    }
    Eigen::MatrixXd D11 = Eigen::MatrixXd::Zero(ny + nu, ny);
    D11.topRows(ny).setIdentity();
    plant.D11 = PeriodicMatrix::constant(std::move(D11));
    Eigen::MatrixXd D12 = Eigen::MatrixXd::Zero(ny + nu, nu);
    D12.bottomRows(nu).setIdentity();
    plant.D12 = PeriodicMatrix::constant(std::move(D12));
    return plant;
}

RdeSolveReport try_solve_periodic_controller_rde(const LtpSystem& sys,
                                                 const PeriodicRdeSolution& Y, double gamma,
                                                 const TimeGrid& grid, double tol, int max_periods,
                                                 const Eigen::MatrixXd* X0) {
    if (!(gamma > 1.0))
        throw std::invalid_argument("solve_periodic_controller_rde: gamma must exceed 1");
    const FullInformationPlant plant = unweighted_full_information_plant(sys, Y);
    auto coeffs = full_information_rde_coefficients(plant, gamma, grid.n_points);
    if (!coeffs) {
        RdeSolveReport report;
        report.status = RdeStatus::NoConvergence;
        return report;
    }
    return try_solve_periodic_rde(*coeffs, grid, tol, max_periods, X0);
}

PeriodicRdeSolution solve_periodic_controller_rde(const LtpSystem& sys,
                                                  const PeriodicRdeSolution& Y, double gamma,
                                                  const TimeGrid& grid, double tol,
                                                  int max_periods) {
    RdeSolveReport report = try_solve_periodic_controller_rde(sys, Y, gamma, grid, tol, max_periods);
    switch (report.status) {
    case RdeStatus::Converged:
        return std::move(*report.solution);
    case RdeStatus::NoConvergence:
        throw NoConvergenceError("controller RDE: no periodic stabilizing solution found",
                                 report.residual, report.periods);
    case RdeStatus::Blowup:
        throw BlowupError("controller RDE: integration blew up (gamma below achievable level?)",
                          report.failure_time);
    case RdeStatus::NotPsd:
        throw NoConvergenceError("controller RDE: converged solution is not PSD", report.residual,
                                 report.periods);
    }
    throw std::logic_error("solve_periodic_controller_rde: unreachable");
}

} // namespace ltpc
