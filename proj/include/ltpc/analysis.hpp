#pragma once

#include "ltpc/exec.hpp"
#include "ltpc/ltp_system.hpp"
#include "ltpc/rde.hpp"
#include "ltpc/time_grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ltpc {

/// C (jwI - A)^-1 B + D. Throws SingularResolventError when jwI - A is singular.
Eigen::MatrixXcd frozen_transfer(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                 const Eigen::MatrixXd& C, const Eigen::MatrixXd& D, double omega);

/// Frequency response of the coefficients frozen at one instant.
struct FrozenResponse {
    double frozen_time = 0.0;
    std::vector<double> frequencies;
    std::vector<Eigen::MatrixXcd> response;
};

FrozenResponse frozen_frequency_response(const LtpRealization& sys, double t,
                                         const std::vector<double>& freqs,
                                         ExecutionPolicy policy = ExecutionPolicy::Serial);
FrozenResponse frozen_frequency_response(const LtpSystem& sys, double t,
                                         const std::vector<double>& freqs,
                                         ExecutionPolicy policy = ExecutionPolicy::Serial);

/// Frozen closed-loop maps of the standard loop: S = (I + PK)^-1, SP, KS, KSP.
struct ClosedLoopMaps {
    FrozenResponse S, SP, KS, KSP;
};

ClosedLoopMaps closed_loop_maps(const LtpSystem& plant, const LtpSystem& controller, double t,
                                const std::vector<double>& freqs);

/// One-loop-at-a-time margins of the loop broken at a plant input channel,
/// remaining loops closed, coefficients frozen at an orbit fraction.
/// gain_margin_db is +inf when the phase never crosses -180 deg;
/// phase_margin_deg is NaN when the gain never crosses 0 dB.
struct MarginEntry {
    double orbit_fraction = 0.0;
    int channel = 0;
    double gain_margin_db = 0.0;
    double phase_margin_deg = 0.0;
};

struct MarginReport {
    std::vector<MarginEntry> entries; // fraction-major, channel-minor order
};

/// Margins for one channel over the given orbit fractions.
MarginReport loop_margins(const LtpSystem& plant, const LtpSystem& controller,
                          const std::vector<double>& orbit_fractions, int channel,
                          const std::vector<double>& freqs,
                          ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Margins for all plant input channels.
MarginReport loop_margins_all_channels(const LtpSystem& plant, const LtpSystem& controller,
                                       const std::vector<double>& orbit_fractions,
                                       const std::vector<double>& freqs,
                                       ExecutionPolicy policy = ExecutionPolicy::Parallel);

std::vector<double> log_frequency_grid(double omega_min, double omega_max, int n_points);

enum class BrlCertificate { Certified, NotCertified };

/// Induced-L2 upper bound certificate: converges the backward bounded-real
/// RDE with periodic boundary; a bounded PSD periodic solution certifies
/// ||closed_loop|| <= gamma, divergence yields NotCertified. Feedthrough is
/// handled through gamma^2 I - D'D, reducing to
///   -Pdot = A'P + PA + gamma^-2 P B B' P + C'C
/// for strictly proper systems.
BrlCertificate brl_gamma_certificate(const LtpRealization& closed_loop, double gamma,
                                     const TimeGrid& grid, double tol, int max_periods = 200);
BrlCertificate brl_gamma_certificate(const LtpSystem& closed_loop, double gamma,
                                     const TimeGrid& grid, double tol, int max_periods = 200);

/// Peak frozen-frequency gain max_w sigma_max(G(t, jw)) at one frozen time.
double peak_frozen_gain(const LtpRealization& sys, double t, const std::vector<double>& freqs);

} // namespace ltpc
