#include "ltpc/ltp_system.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ltpc {

namespace {

void check_dims(const PeriodicMatrix& A, const PeriodicMatrix& B, const PeriodicMatrix& C) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("LtpSystem: A must be square");
    if (B.rows() != A.rows())
        throw std::invalid_argument("LtpSystem: B row count must match state dimension");
    if (C.cols() != A.rows())
        throw std::invalid_argument("LtpSystem: C column count must match state dimension");
}

// Sample count for a composed coefficient function: the finest grid among the
// inputs, or a default when everything is closed-form but genuinely periodic.
int compose_samples(std::initializer_list<const PeriodicMatrix*> parts) {
    int n = 0;
    for (const auto* p : parts)
        n = std::max(n, p->sample_count());
    return n > 0 ? n : 1024;
}

template <class F>
PeriodicMatrix compose(double period, int n_samples, F&& f) {
    if (period == 0.0)
        return PeriodicMatrix::constant(f(0.0));
    return PeriodicMatrix::from_function(period, n_samples, std::forward<F>(f));
}

} // namespace

LtpSystem::LtpSystem(PeriodicMatrix A, PeriodicMatrix B, PeriodicMatrix C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
    check_dims(A_, B_, C_);
    period_ = merge_periods(merge_periods(A_.period(), B_.period()), C_.period());
}

LtpSystem LtpSystem::lti(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C) {
    return LtpSystem(PeriodicMatrix::constant(std::move(A)), PeriodicMatrix::constant(std::move(B)),
                     PeriodicMatrix::constant(std::move(C)));
}

LtpRealization::LtpRealization(PeriodicMatrix A, PeriodicMatrix B, PeriodicMatrix C,
                               PeriodicMatrix D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
    check_dims(A_, B_, C_);
    if (D_.rows() != C_.rows() || D_.cols() != B_.cols())
        throw std::invalid_argument("LtpRealization: D size must match output x input dimensions");
    period_ = merge_periods(merge_periods(A_.period(), B_.period()),
                            merge_periods(C_.period(), D_.period()));
}

LtpRealization::LtpRealization(const LtpSystem& sys)
    : LtpRealization(sys.A(), sys.B(), sys.C(), PeriodicMatrix::zero(sys.n_y(), sys.n_u())) {}

std::tuple<Eigen::MatrixXd, Eigen::MatrixXd, Eigen::MatrixXd> evaluate_system(const LtpSystem& sys,
                                                                              double t) {
    return {sys.A()(t), sys.B()(t), sys.C()(t)};
}

LtpSystem series(const LtpSystem& sys1, const LtpSystem& sys2) {
    if (sys2.n_u() != sys1.n_y())
        throw std::invalid_argument("series: output dimension of sys1 must match input of sys2");
    const double period = merge_periods(sys1.period(), sys2.period());
    const Eigen::Index n1 = sys1.n_x(), n2 = sys2.n_x();
    const Eigen::Index nu = sys1.n_u(), ny = sys2.n_y();
    const int ns = compose_samples({&sys1.A(), &sys1.B(), &sys1.C(), &sys2.A(), &sys2.B(), &sys2.C()});

    auto A = compose(period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
        M.topLeftCorner(n1, n1) = sys1.A()(t);
        M.bottomLeftCorner(n2, n1) = sys2.B()(t) * sys1.C()(t);
        M.bottomRightCorner(n2, n2) = sys2.A()(t);
        return M;
    });
    auto B = compose(period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n1 + n2, nu);
        M.topRows(n1) = sys1.B()(t);
        return M;
    });
    auto C = compose(period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ny, n1 + n2);
        M.rightCols(n2) = sys2.C()(t);
        return M;
    });
    return LtpSystem(std::move(A), std::move(B), std::move(C));
}

LtpRealization feedback(const LtpSystem& plant, const LtpSystem& controller) {
    if (controller.n_u() != plant.n_y())
        throw std::invalid_argument("feedback: controller input must match plant output dimension");
    if (controller.n_y() != plant.n_u())
        throw std::invalid_argument("feedback: controller output must match plant input dimension");
    const double period = merge_periods(plant.period(), controller.period());
    const Eigen::Index np = plant.n_x(), nk = controller.n_x();
    const Eigen::Index ny = plant.n_y(), nu = plant.n_u();
    const int ns = compose_samples({&plant.A(), &plant.B(), &plant.C(), &controller.A(),
                                    &controller.B(), &controller.C()});

    auto A = compose(period, ns, [&](double t) {
        Eigen::MatrixXd M(np + nk, np + nk);
        M.topLeftCorner(np, np) = plant.A()(t);
        M.topRightCorner(np, nk) = plant.B()(t) * controller.C()(t);
        M.bottomLeftCorner(nk, np) = -controller.B()(t) * plant.C()(t);
        M.bottomRightCorner(nk, nk) = controller.A()(t);
        return M;
    });
    auto B = compose(period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(np + nk, ny + nu);
        M.topRightCorner(np, nu) = plant.B()(t);
        M.bottomLeftCorner(nk, ny) = controller.B()(t);
        return M;
    });
    auto C = compose(period, ns, [&](double t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ny + nu, np + nk);
        M.topLeftCorner(ny, np) = -plant.C()(t);
        M.bottomRightCorner(nu, nk) = controller.C()(t);
        return M;
    });
    Eigen::MatrixXd D0 = Eigen::MatrixXd::Zero(ny + nu, ny + nu);
    D0.topLeftCorner(ny, ny).setIdentity();
    return LtpRealization(std::move(A), std::move(B), std::move(C), PeriodicMatrix::constant(D0));
}

} // namespace ltpc
