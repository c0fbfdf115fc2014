#include "ltpc/periodic_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace ltpc {

PeriodicMatrix PeriodicMatrix::constant(Eigen::MatrixXd value) {
    PeriodicMatrix m;
    m.kind_ = Kind::Constant;
    m.period_ = 0.0;
    m.rows_ = value.rows();
    m.cols_ = value.cols();
    m.mean_ = std::move(value);
    return m;
}

PeriodicMatrix PeriodicMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
    return constant(Eigen::MatrixXd::Zero(rows, cols));
}

PeriodicMatrix PeriodicMatrix::identity(Eigen::Index n) {
    return constant(Eigen::MatrixXd::Identity(n, n));
}

PeriodicMatrix PeriodicMatrix::harmonic(double period, Eigen::MatrixXd mean,
                                        std::vector<HarmonicTerm> terms) {
    if (!(period > 0.0))
        throw std::invalid_argument("PeriodicMatrix::harmonic: period must be positive");
    for (const auto& term : terms) {
        if (term.k < 1)
            throw std::invalid_argument("PeriodicMatrix::harmonic: harmonic index must be >= 1");
        if (term.cos_coeff.rows() != mean.rows() || term.cos_coeff.cols() != mean.cols() ||
            term.sin_coeff.rows() != mean.rows() || term.sin_coeff.cols() != mean.cols())
            throw std::invalid_argument("PeriodicMatrix::harmonic: coefficient size mismatch");
    }
    PeriodicMatrix m;
    m.kind_ = Kind::Harmonic;
    m.period_ = period;
    m.rows_ = mean.rows();
    m.cols_ = mean.cols();
    m.mean_ = std::move(mean);
    m.terms_ = std::move(terms);
    return m;
}

PeriodicMatrix PeriodicMatrix::sampled(double period, std::vector<Eigen::MatrixXd> samples) {
    if (!(period > 0.0))
        throw std::invalid_argument("PeriodicMatrix::sampled: period must be positive");
    if (samples.size() < 2)
        throw std::invalid_argument("PeriodicMatrix::sampled: need at least 2 samples");
    const Eigen::Index r = samples.front().rows();
    const Eigen::Index c = samples.front().cols();
    for (const auto& s : samples)
        if (s.rows() != r || s.cols() != c)
            throw std::invalid_argument("PeriodicMatrix::sampled: inconsistent sample sizes");
    PeriodicMatrix m;
    m.kind_ = Kind::Sampled;
    m.period_ = period;
    m.rows_ = r;
    m.cols_ = c;
    m.samples_ = std::move(samples);
    return m;
}

double PeriodicMatrix::wrap(double t) const {
    double u = std::fmod(t, period_);
    if (u < 0.0)
        u += period_;
    if (u >= period_) // fmod can return period_ after the negative fixup
        u -= period_;
    return u;
}

Eigen::MatrixXd PeriodicMatrix::operator()(double t) const {
    switch (kind_) {
    case Kind::Constant:
        return mean_;
    case Kind::Harmonic: {
        const double w = 2.0 * M_PI / period_ * wrap(t);
        Eigen::MatrixXd value = mean_;
        for (const auto& term : terms_)
            value += std::cos(term.k * w) * term.cos_coeff + std::sin(term.k * w) * term.sin_coeff;
        return value;
    }
    case Kind::Sampled: {
        const int n = static_cast<int>(samples_.size());
        const double u = wrap(t) / period_ * n;
        int i = static_cast<int>(std::floor(u));
        if (i >= n)
            i = n - 1;
        const double x = u - i;
        if (x == 0.0)
            return samples_[static_cast<size_t>(i)];
        // Cubic Lagrange through the four samples bracketing the interval.
        const auto& ym1 = samples_[static_cast<size_t>((i - 1 + n) % n)];
        const auto& y0 = samples_[static_cast<size_t>(i)];
        const auto& y1 = samples_[static_cast<size_t>((i + 1) % n)];
        const auto& y2 = samples_[static_cast<size_t>((i + 2) % n)];
        const double lm1 = -x * (x - 1.0) * (x - 2.0) / 6.0;
        const double l0 = (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0;
        const double l1 = -(x + 1.0) * x * (x - 2.0) / 2.0;
        const double l2 = (x + 1.0) * x * (x - 1.0) / 6.0;
        return lm1 * ym1 + l0 * y0 + l1 * y1 + l2 * y2;
    }
    }
    throw std::logic_error("PeriodicMatrix: invalid kind");
}

PeriodicMatrix PeriodicMatrix::transpose() const {
    PeriodicMatrix m;
    m.kind_ = kind_;
    m.period_ = period_;
    m.rows_ = cols_;
    m.cols_ = rows_;
    m.mean_ = mean_.transpose();
    m.terms_.reserve(terms_.size());
    for (const auto& term : terms_)
        m.terms_.push_back({term.k, term.cos_coeff.transpose(), term.sin_coeff.transpose()});
    m.samples_.reserve(samples_.size());
    for (const auto& s : samples_)
        m.samples_.push_back(s.transpose());
    return m;
}

double merge_periods(double p1, double p2) {
    if (p1 == 0.0)
        return p2;
    if (p2 == 0.0)
        return p1;
    if (std::abs(p1 - p2) > 1e-12 * std::max(p1, p2))
        throw std::invalid_argument("period mismatch between periodic factors");
    return p1;
}

} // namespace ltpc
