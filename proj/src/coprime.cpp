#include "ltpc/coprime.hpp"

#include "ltpc/analysis.hpp"

#include <stdexcept>

namespace ltpc {

CoprimeFactorization normalized_coprime_factorization(const LtpSystem& sys, const TimeGrid& grid,
                                                      double tol, int max_periods) {
    CoprimeFactorization fact;
    fact.lti_source = sys.is_lti();
    fact.Z = solve_periodic_filter_rde(sys, grid, tol, max_periods);

    const double T = grid.period_T;
    const int N = grid.n_points;
    fact.L_tilde = PeriodicMatrix::from_function(T, N, [&](double t) {
        return (-fact.Z(t) * sys.C()(t).transpose()).eval();
    });
    PeriodicMatrix A_filter = PeriodicMatrix::from_function(T, N, [&](double t) {
        return (sys.A()(t) + fact.L_tilde(t) * sys.C()(t)).eval();
    });
    fact.N = LtpSystem(A_filter, sys.B(), sys.C());
    fact.M = LtpRealization(A_filter, fact.L_tilde, sys.C(),
                            PeriodicMatrix::identity(sys.n_y()));
    return fact;
}

double coisometry_residual(const CoprimeFactorization& fact, const std::vector<double>& freqs) {
    if (!fact.lti_source)
        throw std::invalid_argument(
            "coisometry_residual: defined via frozen frequency response for LTI sources only");
    const Eigen::MatrixXd A = fact.N.A()(0.0);
    const Eigen::MatrixXd B = fact.N.B()(0.0);
    const Eigen::MatrixXd C = fact.N.C()(0.0);
    const Eigen::MatrixXd L = fact.M.B()(0.0);
    const Eigen::MatrixXd Iy = Eigen::MatrixXd::Identity(C.rows(), C.rows());
    const Eigen::MatrixXd Dn = Eigen::MatrixXd::Zero(C.rows(), B.cols());

    double worst = 0.0;
    for (double w : freqs) {
        const Eigen::MatrixXcd Mw = frozen_transfer(A, L, C, Iy, w);
        const Eigen::MatrixXcd Nw = frozen_transfer(A, B, C, Dn, w);
        const Eigen::MatrixXcd R =
            Mw * Mw.adjoint() + Nw * Nw.adjoint() - Iy.cast<std::complex<double>>();
        worst = std::max(worst, R.jacobiSvd().singularValues()(0));
    }
    return worst;
}

} // namespace ltpc
