#include "ltpc/synthesis.hpp"

#include "ltpc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltpc {

void BisectionConfig::validate() const {
    if (!(gamma_lower > 1.0))
        throw std::invalid_argument("BisectionConfig: gamma_lower must exceed 1");
    if (!(gamma_lower < gamma_upper))
        throw std::invalid_argument("BisectionConfig: gamma_lower must be below gamma_upper");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("BisectionConfig: rel_tol must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("BisectionConfig: max_iter must be >= 1");
}

std::optional<PeriodicMatrix> synthesize_feedback_gain(const LtpSystem& sys,
                                                       const PeriodicRdeSolution& Y, double gamma,
                                                       const TimeGrid& grid, double rde_tol,
                                                       int max_periods) {
    RdeSolveReport report =
        try_solve_periodic_controller_rde(sys, Y, gamma, grid, rde_tol, max_periods);
    if (report.status != RdeStatus::Converged)
        return std::nullopt;
    const FullInformationPlant plant = unweighted_full_information_plant(sys, Y);
    return state_feedback_gain(plant, *report.solution);
}

namespace {

struct Probe {
    bool feasible = false;
    std::optional<PeriodicRdeSolution> solution;
};

// Feasibility probe with warm start; a failed warm-started iteration is
// retried once from zero before the level is declared infeasible.
Probe probe_level(const FullInformationPlant& plant, double gamma, const TimeGrid& grid,
                  double rde_tol, int max_periods, const Eigen::MatrixXd* warm) {
    auto coeffs = full_information_rde_coefficients(plant, gamma, grid.n_points);
    Probe probe;
    if (!coeffs)
        return probe;
    RdeSolveReport report = try_solve_periodic_rde(*coeffs, grid, rde_tol, max_periods, warm);
    if (report.status != RdeStatus::Converged && warm != nullptr)
        report = try_solve_periodic_rde(*coeffs, grid, rde_tol, max_periods, nullptr);
    if (report.status == RdeStatus::Converged) {
        probe.feasible = true;
        probe.solution = std::move(report.solution);
    }
    return probe;
}

} // namespace

BisectionResult bisect_gamma(const FullInformationPlant& plant, const TimeGrid& grid,
                             const BisectionConfig& cfg, double rde_tol, int max_periods,
                             double subopt_factor) {
    cfg.validate();
    if (!(subopt_factor >= 1.0))
        throw std::invalid_argument("bisect_gamma: subopt_factor must be >= 1");

    BisectionResult result;
    Eigen::MatrixXd warm;
    bool have_warm = false;

    auto probe = [&](double gamma) {
        Probe p = probe_level(plant, gamma, grid, rde_tol, max_periods,
                              have_warm ? &warm : nullptr);
        result.probes.emplace_back(gamma, p.feasible);
        if (p.feasible) {
            warm = p.solution->values.front();
            have_warm = true;
        }
        return p;
    };

    if (!probe(cfg.gamma_upper).feasible)
        throw UpperBoundInfeasibleError("bisect_gamma: gamma_upper is infeasible");

    if (probe(cfg.gamma_lower).feasible) {
        // Optimum at or below the window edge. The unweighted level is never
        // below 1, so a lower edge within tolerance of 1 localizes it.
        if (cfg.gamma_lower <= 1.0 + cfg.rel_tol) {
            result.gamma_optimal = cfg.gamma_lower;
        } else {
            throw NoBracketError("bisect_gamma: gamma_lower is feasible; optimum below window");
        }
    } else {
        double lo = cfg.gamma_lower; // infeasible
        double hi = cfg.gamma_upper; // feasible
        for (int iter = 0; iter < cfg.max_iter && (hi - lo) > cfg.rel_tol * lo; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (probe(mid).feasible)
                hi = mid;
            else
                lo = mid;
        }
        result.gamma_optimal = hi;
    }

    result.gamma_achieved = subopt_factor * result.gamma_optimal;
    Probe final_probe = probe_level(plant, result.gamma_achieved, grid, rde_tol, max_periods,
                                    have_warm ? &warm : nullptr);
    if (!final_probe.feasible)
        throw NoConvergenceError("bisect_gamma: re-solve at the suboptimal level failed", 0.0, 0);
    result.X = std::move(*final_probe.solution);
    result.F = state_feedback_gain(plant, result.X);
    return result;
}

BisectionResult bisect_gamma(const LtpSystem& sys, const PeriodicRdeSolution& Y,
                             const BisectionConfig& cfg, const TimeGrid& grid, double rde_tol,
                             int max_periods, double subopt_factor) {
    return bisect_gamma(unweighted_full_information_plant(sys, Y), grid, cfg, rde_tol, max_periods,
                        subopt_factor);
}

StructuredController assemble_structured_controller(const LtpSystem& sys, const PeriodicMatrix& L,
                                                    const PeriodicMatrix& F, double gamma_achieved,
                                                    double gamma_optimal) {
    if (L.rows() != sys.n_x() || L.cols() != sys.n_y())
        throw std::invalid_argument("assemble_structured_controller: L must be n_x x n_y");
    if (F.rows() != sys.n_u() || F.cols() != sys.n_x())
        throw std::invalid_argument("assemble_structured_controller: F must be n_u x n_x");

    StructuredController K;
    K.L = L;
    K.F = F;
    K.gamma_achieved = gamma_achieved;
    K.gamma_optimal = gamma_optimal;

    const double period =
        merge_periods(merge_periods(sys.period(), L.period()), F.period());
    if (period == 0.0) {
        const Eigen::MatrixXd A_K =
            sys.A()(0.0) + L(0.0) * sys.C()(0.0) + sys.B()(0.0) * F(0.0);
        K.realization = LtpSystem(PeriodicMatrix::constant(A_K), L, F);
    } else {
        const int ns = std::max({L.sample_count(), F.sample_count(), 1024});
        PeriodicMatrix A_K = PeriodicMatrix::from_function(period, ns, [&](double t) {
            return (sys.A()(t) + L(t) * sys.C()(t) + sys.B()(t) * F(t)).eval();
        });
        K.realization = LtpSystem(std::move(A_K), L, F);
    }
    return K;
}

LtpRealization transformed_openloop_realization(const LtpSystem& sys, const PeriodicMatrix& L) {
    if (L.rows() != sys.n_x() || L.cols() != sys.n_y())
        throw std::invalid_argument("transformed_openloop_realization: L must be n_x x n_y");
    const Eigen::Index n = sys.n_x(), ny = sys.n_y(), nu = sys.n_u();
    const double period = merge_periods(sys.period(), L.period());
    const int ns = std::max(L.sample_count(), 1024);

    auto build_A = [&](double t) {
        const Eigen::MatrixXd A = sys.A()(t);
        const Eigen::MatrixXd LC = L(t) * sys.C()(t);
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(3 * n, 3 * n);
        M.block(0, 0, n, n) = A + LC;
        M.block(n, n, n, n) = A;
        M.block(2 * n, 0, n, n) = LC;
        M.block(2 * n, 2 * n, n, n) = A;
        return M;
    };
    auto build_B = [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(3 * n, ny + nu);
        M.block(n, 0, n, ny) = L(t);
        M.block(2 * n, 0, n, ny) = L(t);
        M.block(2 * n, ny, n, nu) = sys.B()(t);
        return M;
    };
    auto build_C = [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ny + nu + n, 3 * n);
        M.block(0, 0, ny, n) = sys.C()(t);
        M.block(0, 2 * n, ny, n) = -sys.C()(t);
        M.block(ny + nu, 2 * n, n, n).setIdentity();
        return M;
    };
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(ny + nu + n, ny + nu);
    D.block(0, 0, ny, ny).setIdentity();
    D.block(ny, ny, nu, nu).setIdentity();

    if (period == 0.0)
        return LtpRealization(PeriodicMatrix::constant(build_A(0.0)),
                              PeriodicMatrix::constant(build_B(0.0)),
                              PeriodicMatrix::constant(build_C(0.0)),
                              PeriodicMatrix::constant(D));
    return LtpRealization(PeriodicMatrix::from_function(period, ns, build_A),
                          PeriodicMatrix::from_function(period, ns, build_B),
                          PeriodicMatrix::from_function(period, ns, build_C),
                          PeriodicMatrix::constant(D));
}

} // namespace ltpc
