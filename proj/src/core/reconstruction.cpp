#include "core/reconstruction.hpp"

#include <cmath>

namespace dlsr {

SampleHistory::SampleHistory(int sample_count, int depth) : depth_(depth) {
    if (sample_count <= 0 || depth <= 0)
        throw std::invalid_argument("SampleHistory: need positive sample count and depth");
    estimates_ = Eigen::MatrixXd::Zero(depth, sample_count);
    truths_ = Eigen::MatrixXd::Zero(depth, sample_count);
}

void SampleHistory::push(int k, const Eigen::VectorXd& estimates, const Eigen::VectorXd& truths) {
    if (k != latest_ + 1)
        throw std::logic_error("SampleHistory: iterations must be pushed consecutively");
    estimates_.row(k % depth_) = estimates.transpose();
    truths_.row(k % depth_) = truths.transpose();
    latest_ = k;
}

void SampleHistory::check(int k) const {
    if (k > latest_ || k <= latest_ - depth_)
        throw std::out_of_range("SampleHistory: iteration " + std::to_string(k) +
                                " not covered (latest " + std::to_string(latest_) + ", depth " +
                                std::to_string(depth_) + ")");
}

double SampleHistory::error(int sample_index, int k) const {
    if (k < 0) return 0.0;
    check(k);
    return truths_(k % depth_, sample_index) - estimates_(k % depth_, sample_index);
}

double SampleHistory::estimate(int sample_index, int k) const {
    if (k < 0) return 0.0;
    check(k);
    return estimates_(k % depth_, sample_index);
}

Signal ilsr_step(const Signal& f, const Signal& truth, const SamplingPlan& plan) {
    Signal next = f;
    for (int i = 0; i < plan.sample_count(); ++i) {
        int u = plan.sample_set[i];
        next += (truth(u) - f(u)) * plan.frame.col(i);
    }
    return next;
}

Signal dlsr_closed_form_step(const Signal& f, const SampleHistory& history,
                             const SamplingPlan& plan, const Schedule& schedule, int k) {
    const double mu = schedule.mu(k + 1);
    const double beta = schedule.beta(k + 1);
    Signal next = (1.0 - mu * beta) * f;
    for (int v = 0; v < plan.n(); ++v) {
        double acc = 0.0;
        for (int i = 0; i < plan.sample_count(); ++i)
            acc += history.error(i, k - plan.tau(i, v)) * plan.frame(v, i);
        next(v) += mu * acc;
    }
    return next;
}

Signal biased_target(const Signal& f_star, const SamplingPlan& plan, double beta) {
    if (beta < 0.0)
        throw std::invalid_argument("biased_target: beta must be nonnegative");
    if (beta + plan.bound_a <= 1e-12)
        throw std::runtime_error("biased_target: beta I + T singular on the band");

    const int m = plan.band.dim;
    const auto low_basis = plan.basis.eigenvectors.leftCols(m);
    Eigen::MatrixXd rows(plan.sample_count(), m);
    for (int i = 0; i < plan.sample_count(); ++i)
        rows.row(i) = low_basis.row(plan.sample_set[i]);
    Eigen::MatrixXd gram = rows.transpose() * rows;  // U_w^T I_S U_w

    Eigen::VectorXd x = low_basis.transpose() * f_star;
    Eigen::MatrixXd system = gram;
    system.diagonal().array() += beta;
    Eigen::VectorXd solved = system.ldlt().solve(gram * x);
    return low_basis * solved;
}

}  // namespace dlsr
