#pragma once

#include "ltpc/ltp_system.hpp"
#include "ltpc/rde.hpp"
#include "ltpc/time_grid.hpp"

#include <vector>

namespace ltpc {

/// Normalized left coprime factorization P = M^-1 N with
///   N = (A + L C, B, C, 0),   M = (A + L C, L, C, I),   L = -Z C',
/// where Z is the periodic stabilizing solution of the filter-type Riccati
/// equation dZ/dt = A Z + Z A' - Z C'C Z + B B'.
struct CoprimeFactorization {
    PeriodicRdeSolution Z;
    PeriodicMatrix L_tilde; // -Z C', exact at grid points
    LtpSystem N;
    LtpRealization M; // identity feedthrough
    bool lti_source = false;
};

CoprimeFactorization normalized_coprime_factorization(const LtpSystem& sys, const TimeGrid& grid,
                                                      double tol = 1e-9, int max_periods = 200);

/// max over the frequency grid of || M(jw) M(jw)* + N(jw) N(jw)* - I ||_2.
/// Defined through the frozen frequency response, so only factorizations of
/// LTI systems are accepted; genuinely periodic inputs are rejected.
double coisometry_residual(const CoprimeFactorization& fact, const std::vector<double>& freqs);

} // namespace ltpc
