#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace ltpc {

/// One harmonic of a matrix trigonometric polynomial: cos_coeff*cos(k*w*t) + sin_coeff*sin(k*w*t)
/// with w = 2*pi/period.
struct HarmonicTerm {
    int k = 1;
    Eigen::MatrixXd cos_coeff;
    Eigen::MatrixXd sin_coeff;
};

/// Matrix-valued function of time with fundamental period T.
///
/// Storage is one of:
///  - constant: time-independent value, periodic with any period (period() == 0),
///  - harmonic: finite trigonometric polynomial, evaluated exactly,
///  - sampled: N equispaced samples over [0, T) with periodic cubic interpolation
///    (exact at the sample points).
///
/// Evaluation wraps t into [0, T), so the function is total on the real line.
/// Instances are immutable after construction and safe to evaluate concurrently.
class PeriodicMatrix {
public:
    PeriodicMatrix() = default;

    static PeriodicMatrix constant(Eigen::MatrixXd value);
    static PeriodicMatrix zero(Eigen::Index rows, Eigen::Index cols);
    static PeriodicMatrix identity(Eigen::Index n);
    static PeriodicMatrix harmonic(double period, Eigen::MatrixXd mean,
                                   std::vector<HarmonicTerm> terms);
    static PeriodicMatrix sampled(double period, std::vector<Eigen::MatrixXd> samples);

    /// Sample f(t) at n_samples equispaced points over [0, period).
    template <class F>
    static PeriodicMatrix from_function(double period, int n_samples, F&& f) {
        std::vector<Eigen::MatrixXd> samples;
        samples.reserve(static_cast<size_t>(n_samples));
        const double h = period / n_samples;
        for (int k = 0; k < n_samples; ++k)
            samples.push_back(f(k * h));
        return sampled(period, std::move(samples));
    }

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    bool is_sampled() const { return kind_ == Kind::Sampled; }

    /// Fundamental period; 0 for constant functions (periodic with any period).
    double period() const { return period_; }

    /// Value at time t (t wrapped into the fundamental period).
    Eigen::MatrixXd operator()(double t) const;

    /// Number of stored samples (sampled kind only, else 0).
    int sample_count() const {
        return kind_ == Kind::Sampled ? static_cast<int>(samples_.size()) : 0;
    }
    const std::vector<Eigen::MatrixXd>& samples() const { return samples_; }

    PeriodicMatrix transpose() const;

private:
    enum class Kind { Constant, Harmonic, Sampled };

    Kind kind_ = Kind::Constant;
    double period_ = 0.0;
    Eigen::Index rows_ = 0, cols_ = 0;
    Eigen::MatrixXd mean_;                // Constant value or harmonic mean
    std::vector<HarmonicTerm> terms_;     // Harmonic only
    std::vector<Eigen::MatrixXd> samples_; // Sampled only

    double wrap(double t) const;
};

/// Resolve the common period of two periodic objects: a constant (period 0)
/// adopts the partner's period; two genuinely periodic factors must agree.
/// Throws std::invalid_argument on mismatch.
double merge_periods(double p1, double p2);

} // namespace ltpc
