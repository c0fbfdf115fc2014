#pragma once

#include "ltpc/ltp_system.hpp"
#include "ltpc/rde.hpp"
#include "ltpc/time_grid.hpp"
#include "ltpc/weights.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ltpc {

/// Output-feedback controller with imposed filter/state-feedback structure:
///   xi_dot = (A + L C) xi + L e + B u,   u = F xi,
/// realized as A_K = A + L C + B F, B_K = L, C_K = F, D_K = 0. For the
/// weighted synthesis the realization additionally carries the weight states
/// and `weighted` records the weighting data (see assemble_weighted_controller).
struct StructuredController {
    PeriodicMatrix L; // n_x x n_y filter gain
    PeriodicMatrix F; // n_u x n_xi feedback gain
    LtpSystem realization;
    double gamma_achieved = 0.0;
    double gamma_optimal = 0.0;
    std::optional<WeightedStructure> weighted;
};

struct BisectionConfig {
    double gamma_lower = 1.0 + 1e-6;
    double gamma_upper = 100.0;
    double rel_tol = 1e-3;
    int max_iter = 40;

    void validate() const;
};

/// Feedback gain at a fixed performance level: F = -B'X with X the periodic
/// stabilizing solution of the controller RDE. Returns nullopt when no such
/// solution exists (level infeasible).
std::optional<PeriodicMatrix> synthesize_feedback_gain(const LtpSystem& sys,
                                                       const PeriodicRdeSolution& Y, double gamma,
                                                       const TimeGrid& grid, double rde_tol = 1e-9,
                                                       int max_periods = 200);

struct BisectionResult {
    double gamma_optimal = 0.0;
    double gamma_achieved = 0.0; // subopt_factor * gamma_optimal, level of the returned gain
    PeriodicMatrix F;
    PeriodicRdeSolution X; // controller RDE solution at gamma_achieved
    std::vector<std::pair<double, bool>> probes; // (gamma, feasible) in probe order
};

/// Smallest feasible performance level by bisection; the returned gain is
/// synthesized at subopt_factor * gamma_optimal. Throws
/// UpperBoundInfeasibleError / NoBracketError on a bad search window.
BisectionResult bisect_gamma(const FullInformationPlant& plant, const TimeGrid& grid,
                             const BisectionConfig& cfg, double rde_tol = 1e-9,
                             int max_periods = 200, double subopt_factor = 1.1);

/// Unweighted four-block synthesis for a plant and its filter solution.
BisectionResult bisect_gamma(const LtpSystem& sys, const PeriodicRdeSolution& Y,
                             const BisectionConfig& cfg, const TimeGrid& grid,
                             double rde_tol = 1e-9, int max_periods = 200,
                             double subopt_factor = 1.1);

/// Close u = F xi inside the filter: A_K = A + L C + B F, B_K = L, C_K = F.
StructuredController assemble_structured_controller(const LtpSystem& sys, const PeriodicMatrix& L,
                                                    const PeriodicMatrix& F,
                                                    double gamma_achieved = 0.0,
                                                    double gamma_optimal = 0.0);

/// Block realization of the open two-block interconnection after the state
/// transformation eps = xi - (x + mu): states (eps, mu, xi), inputs (e_hat, u),
/// outputs (e, u, xi). The eps block is unreachable by construction. Used as a
/// validation oracle for input-output equivalence with the direct
/// plant/filter/M^-1 interconnection.
LtpRealization transformed_openloop_realization(const LtpSystem& sys, const PeriodicMatrix& L);

} // namespace ltpc
