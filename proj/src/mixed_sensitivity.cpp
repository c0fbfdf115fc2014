#include "ltpc/mixed_sensitivity.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltpc {

namespace {

template <class F>
PeriodicMatrix constant_or_sampled(bool is_constant, double period, int n_samples, F&& f) {
    if (is_constant)
        return PeriodicMatrix::constant(f(0.0));
    return PeriodicMatrix::from_function(period, n_samples, std::forward<F>(f));
}

} // namespace

WeightedDesignPlant build_weighted_design_plant(const LtpSystem& plant, const WeightBank& we,
                                                const WeightBank& wu, const ScalingSet& scalings) {
    const int ny = static_cast<int>(plant.n_y());
    const int nu = static_cast<int>(plant.n_u());
    if (we.n_channels != ny)
        throw std::invalid_argument("build_weighted_design_plant: W_e channel count != n_y");
    if (wu.n_channels != nu)
        throw std::invalid_argument("build_weighted_design_plant: W_u channel count != n_u");
    if (scalings.V_e.size() != ny || scalings.V_u.size() != nu || scalings.V_d.size() != nu)
        throw std::invalid_argument("build_weighted_design_plant: scaling dimension mismatch");
    scalings.validate();

    WeightedDesignPlant wdp;
    wdp.physical_plant = plant;
    wdp.we = we;
    wdp.wu = wu;
    wdp.scalings = scalings;
    wdp.partition = WeightedPartition{static_cast<int>(plant.n_x()), we.n_states(), wu.n_states(),
                                      ny, nu};

    const Eigen::VectorXd ve_inv = scalings.V_e.cwiseInverse();
    const int ns = std::max({plant.A().sample_count(), plant.B().sample_count(),
                             plant.C().sample_count(), 1024});
    PeriodicMatrix B_s = constant_or_sampled(
        plant.B().is_constant(), plant.period(), ns,
        [&](double t) { return (plant.B()(t) * scalings.V_d.asDiagonal()).eval(); });
    PeriodicMatrix C_s = constant_or_sampled(
        plant.C().is_constant(), plant.period(), ns,
        [&](double t) { return (ve_inv.asDiagonal() * plant.C()(t)).eval(); });
    wdp.scaled_plant = LtpSystem(plant.A(), std::move(B_s), std::move(C_s));
    return wdp;
}

PeriodicMatrix weighted_filter_gain(const WeightedDesignPlant& wdp, const PeriodicRdeSolution& Y,
                                    const TimeGrid& grid) {
    const auto& C_s = wdp.scaled_plant.C();
    return PeriodicMatrix::from_function(grid.period_T, grid.n_points, [&](double t) {
        return (-Y(t) * C_s(t).transpose()).eval();
    });
}

FullInformationPlant weighted_full_information_plant(const WeightedDesignPlant& wdp,
                                                     const PeriodicRdeSolution& Y,
                                                     const TimeGrid& grid) {
    const auto& part = wdp.partition;
    const int n_x = part.n_x, n_we = part.n_we, n_wu = part.n_wu;
    const int n = part.n_xi();
    const int ny = part.n_y, nu = part.n_u;
    const auto& plant = wdp.physical_plant;
    const auto& C_s = wdp.scaled_plant.C();

    const Eigen::MatrixXd A_we = wdp.we.A(), B_we = wdp.we.B(), C_we = wdp.we.C(),
                          D_we = wdp.we.D();
    const Eigen::MatrixXd A_wu = wdp.wu.A(), B_wu = wdp.wu.B(), C_wu = wdp.wu.C(),
                          D_wu = wdp.wu.D();
    const Eigen::VectorXd vu_inv = wdp.scalings.V_u.cwiseInverse();

    FullInformationPlant fi;
    fi.period = grid.period_T;
    const int ns = grid.n_points;

    fi.A = constant_or_sampled(plant.A().is_constant() && C_s.is_constant(), fi.period, ns,
                               [&](double t) {
                                   Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
                                   M.block(0, 0, n_x, n_x) = plant.A()(t);
                                   M.block(n_x, 0, n_we, n_x) = -B_we * C_s(t);
                                   M.block(n_x, n_x, n_we, n_we) = A_we;
                                   M.block(n_x + n_we, n_x + n_we, n_wu, n_wu) = A_wu;
                                   return M;
                               });
    fi.B1 = PeriodicMatrix::from_function(fi.period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, ny);
        M.block(0, 0, n_x, ny) = -Y(t) * C_s(t).transpose();
        M.block(n_x, 0, n_we, ny) = B_we;
        return M;
    });
    fi.B2 = constant_or_sampled(plant.B().is_constant(), fi.period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, nu);
        M.block(0, 0, n_x, nu) = plant.B()(t);
        M.block(n_x + n_we, 0, n_wu, nu) = B_wu * vu_inv.asDiagonal();
        return M;
    });
    fi.C1 = constant_or_sampled(C_s.is_constant(), fi.period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ny + nu, n);
        M.block(0, 0, ny, n_x) = -D_we * C_s(t);
        M.block(0, n_x, ny, n_we) = C_we;
        M.block(ny, n_x + n_we, nu, n_wu) = C_wu;
        return M;
    });
    Eigen::MatrixXd D11 = Eigen::MatrixXd::Zero(ny + nu, ny);
    D11.topRows(ny) = D_we;
    fi.D11 = PeriodicMatrix::constant(std::move(D11));
    Eigen::MatrixXd D12 = Eigen::MatrixXd::Zero(ny + nu, nu);
    D12.bottomRows(nu) = D_wu * vu_inv.asDiagonal();
    fi.D12 = PeriodicMatrix::constant(std::move(D12));
    return fi;
}

StructuredController assemble_weighted_controller(const WeightedDesignPlant& wdp,
                                                  const PeriodicMatrix& L, const PeriodicMatrix& F,
                                                  double gamma_achieved, double gamma_optimal) {
    const auto& part = wdp.partition;
    const int n_x = part.n_x, n_we = part.n_we, n_wu = part.n_wu;
    const int n = part.n_xi();
    const int ny = part.n_y, nu = part.n_u;
    const auto& plant = wdp.physical_plant;

    if (L.rows() != n_x || L.cols() != ny)
        throw std::invalid_argument("assemble_weighted_controller: L must be n_x x n_y");
    if (F.rows() != nu || F.cols() != n)
        throw std::invalid_argument(
            "assemble_weighted_controller: F must span plant and weight states");

    const Eigen::MatrixXd A_we = wdp.we.A(), B_we = wdp.we.B();
    const Eigen::MatrixXd A_wu = wdp.wu.A(), B_wu = wdp.wu.B();
    const Eigen::VectorXd ve_inv = wdp.scalings.V_e.cwiseInverse();
    const Eigen::VectorXd vu_inv = wdp.scalings.V_u.cwiseInverse();

    const double period = merge_periods(
        merge_periods(plant.period(), L.period()), F.period());
    const int ns = std::max({L.sample_count(), F.sample_count(), 1024});

    auto build_A = [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
        M.block(0, 0, n_x, n_x) =
            plant.A()(t) + L(t) * ve_inv.asDiagonal() * plant.C()(t);
        M.block(n_x, n_x, n_we, n_we) = A_we;
        M.block(n_x + n_we, n_x + n_we, n_wu, n_wu) = A_wu;
        Eigen::MatrixXd Bu = Eigen::MatrixXd::Zero(n, nu);
        Bu.block(0, 0, n_x, nu) = plant.B()(t);
        Bu.block(n_x + n_we, 0, n_wu, nu) = B_wu * vu_inv.asDiagonal();
        M += Bu * F(t);
        return M;
    };
    auto build_B = [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, ny);
        M.block(0, 0, n_x, ny) = L(t) * ve_inv.asDiagonal();
        M.block(n_x, 0, n_we, ny) = B_we * ve_inv.asDiagonal();
        return M;
    };

    StructuredController K;
    K.L = L;
    K.F = F;
    K.gamma_achieved = gamma_achieved;
    K.gamma_optimal = gamma_optimal;
    K.weighted = WeightedStructure{wdp.we, wdp.wu, wdp.scalings, part};
    if (period == 0.0) {
        K.realization = LtpSystem(PeriodicMatrix::constant(build_A(0.0)),
                                  PeriodicMatrix::constant(build_B(0.0)), F);
    } else {
        K.realization = LtpSystem(PeriodicMatrix::from_function(period, ns, build_A),
                                  PeriodicMatrix::from_function(period, ns, build_B), F);
    }
    return K;
}

LtpRealization build_weighted_closed_loop(const LtpSystem& plant, const StructuredController& K) {
    if (!K.weighted)
        throw std::invalid_argument(
            "build_weighted_closed_loop: controller carries no weighting data");
    const auto& ws = *K.weighted;
    const auto& part = ws.partition;
    const int n_p = static_cast<int>(plant.n_x());
    const int n_k = part.n_xi();
    const int ny = part.n_y, nu = part.n_u;
    if (K.realization.n_x() != n_k || plant.n_y() != ny || plant.n_u() != nu)
        throw std::invalid_argument("build_weighted_closed_loop: dimension mismatch");

    const Eigen::MatrixXd C_we = ws.we.C(), D_we = ws.we.D();
    const Eigen::MatrixXd C_wu = ws.wu.C(), D_wu = ws.wu.D();
    const Eigen::VectorXd ve_inv = ws.scalings.V_e.cwiseInverse();
    const Eigen::VectorXd vu_inv = ws.scalings.V_u.cwiseInverse();

    const double period = merge_periods(plant.period(), K.realization.period());
    const int ns = std::max({K.realization.A().sample_count(), plant.A().sample_count(), 1024});
    const int n = n_p + n_k;

    auto build_A = [&](double t) {
        Eigen::MatrixXd M(n, n);
        M.topLeftCorner(n_p, n_p) = plant.A()(t);
        M.topRightCorner(n_p, n_k) = plant.B()(t) * K.realization.C()(t);
        M.bottomLeftCorner(n_k, n_p) = -K.realization.B()(t) * plant.C()(t);
        M.bottomRightCorner(n_k, n_k) = K.realization.A()(t);
        return M;
    };
    auto build_B = [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, ny + nu);
        M.block(0, ny, n_p, nu) = plant.B()(t) * ws.scalings.V_d.asDiagonal();
        M.block(n_p, 0, n_k, ny) = K.realization.B()(t) * ws.scalings.V_e.asDiagonal();
        return M;
    };
    auto build_C = [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ny + nu, n);
        // z1 = C_we x_we - D_we V_e^-1 C_p x_p (+ D_we w1)
        M.block(0, 0, ny, n_p) = -D_we * ve_inv.asDiagonal() * plant.C()(t);
        M.block(0, n_p + part.n_x, ny, part.n_we) = C_we;
        // z2 = C_wu x_wu + D_wu V_u^-1 F x_k
        M.block(ny, n_p, nu, n_k) = D_wu * vu_inv.asDiagonal() * K.realization.C()(t);
        M.block(ny, n_p + part.n_x + part.n_we, nu, part.n_wu) += C_wu;
        return M;
    };
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(ny + nu, ny + nu);
    D.topLeftCorner(ny, ny) = D_we;

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
