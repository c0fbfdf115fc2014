#pragma once

#include <stdexcept>
#include <string>

namespace ltpc {

/// Integration produced non-finite values; `time` is the integration time at failure.
class BlowupError : public std::runtime_error {
public:
    BlowupError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Period iteration did not reach the requested boundary residual.
class NoConvergenceError : public std::runtime_error {
public:
    NoConvergenceError(const std::string& what, double residual, int periods)
        : std::runtime_error(what), residual_(residual), periods_(periods) {}
    double residual() const { return residual_; }
    int periods() const { return periods_; }

private:
    double residual_;
    int periods_;
};

/// jw*I - A(t) is singular at the requested frequency.
class SingularResolventError : public std::runtime_error {
public:
    SingularResolventError(const std::string& what, double omega)
        : std::runtime_error(what), omega_(omega) {}
    double omega() const { return omega_; }

private:
    double omega_;
};

/// Bisection upper bound is infeasible; no controller exists in the window.
class UpperBoundInfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection lower bound is feasible and not within tolerance of the global floor:
/// the optimum lies below the search window.
class NoBracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario configuration parse/validation failure; message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ltpc
