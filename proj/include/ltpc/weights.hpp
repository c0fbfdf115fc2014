#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace ltpc {

/// First-order SISO realization xdot = a x + b u, y = c x + d u.
struct FirstOrderWeight {
    double a = 0.0, b = 0.0, c = 0.0, d = 1.0;
};

/// Sensitivity weight (s + wb*sqrt(3/(1-eps^2))) / (2s + eps*wb*sqrt(3/(1-eps^2))):
/// integral behavior up to the bandwidth, DC gain 1/eps, high-frequency gain 1/2.
FirstOrderWeight make_sensitivity_weight(double omega_bw, double epsilon);

/// Control weight (s + wu) / (0.01 s + wu): unit gain up to the roll-off
/// frequency, differentiating behavior above it, high-frequency gain 100.
FirstOrderWeight make_control_weight(double omega_u);

std::complex<double> weight_response(const FirstOrderWeight& w, double omega);

/// Diagonal bank of per-channel first-order weights. An empty `channels`
/// vector denotes the identity weight (no states, unit feedthrough), used to
/// reduce the weighted problem to the unweighted one.
struct WeightBank {
    int n_channels = 0;
    std::vector<FirstOrderWeight> channels;

    static WeightBank identity(int n) { return WeightBank{n, {}}; }
    static WeightBank uniform(int n, const FirstOrderWeight& w) {
        return WeightBank{n, std::vector<FirstOrderWeight>(static_cast<size_t>(n), w)};
    }
    static WeightBank per_channel(std::vector<FirstOrderWeight> ws) {
        const int n = static_cast<int>(ws.size());
        return WeightBank{n, std::move(ws)};
    }

    bool is_identity() const { return channels.empty(); }
    int n_states() const { return is_identity() ? 0 : n_channels; }

    Eigen::MatrixXd A() const;
    Eigen::MatrixXd B() const;
    Eigen::MatrixXd C() const;
    Eigen::MatrixXd D() const;
};

/// Static diagonal scalings: V_e on the error channels (radians), V_u on the
/// control channels (N*m), V_d on the disturbance channels (N*m).
struct ScalingSet {
    Eigen::VectorXd V_e;
    Eigen::VectorXd V_u;
    Eigen::VectorXd V_d;

    static ScalingSet identity(int n_e, int n_u);
    void validate() const {
        if ((V_e.array() <= 0.0).any() || (V_u.array() <= 0.0).any() ||
            (V_d.array() <= 0.0).any())
            throw std::invalid_argument("ScalingSet: all scaling entries must be positive");
    }
};

/// State/channel bookkeeping of the augmented synthesis system
/// (plant states, then W_e states, then W_u states).
struct WeightedPartition {
    int n_x = 0, n_we = 0, n_wu = 0; // state blocks
    int n_y = 0, n_u = 0;            // error / control channel counts
    int n_xi() const { return n_x + n_we + n_wu; }
};

/// Weighting data carried by a controller from the weighted synthesis;
/// sufficient to rebuild the performance channels of the closed loop.
struct WeightedStructure {
    WeightBank we, wu;
    ScalingSet scalings;
    WeightedPartition partition;
};

} // namespace ltpc
