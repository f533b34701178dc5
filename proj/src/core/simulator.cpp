#include "core/simulator.hpp"

#include <cassert>
#include <stdexcept>

namespace dlsr {

namespace {

struct NodeTables {
    // Freshest known error per sensor: iteration index (-1 = none) and value.
    Eigen::MatrixXi iter;  // n x |S|
    Eigen::MatrixXd val;
};

}  // namespace

RunResult simulate(const Graph& g, const SamplingPlan& plan, const Schedule& schedule,
                   const TimeVaryingSignal& truth, const SimOptions& options) {
    const int n = plan.n();
    const int s = plan.sample_count();
    const int steps = options.steps;
    if (g.size() != n)
        throw std::invalid_argument("simulate: graph/plan size mismatch");
    if (!plan.unique())
        throw std::runtime_error("simulate: sampling plan is not a uniqueness set (A = " +
                                 std::to_string(plan.bound_a) + ")");
    if (steps < 1)
        throw std::invalid_argument("simulate: steps must be >= 1");
    if (truth.frames.empty())
        throw std::invalid_argument("simulate: truth has no frames");
    if (!truth.time_invariant() && static_cast<int>(truth.frames.size()) < steps + 1)
        throw std::invalid_argument("simulate: steps exceed available truth frames");

    Signal f = options.initial.value_or(Signal::Zero(n));
    if (f.size() != n)
        throw std::invalid_argument("simulate: initial estimate has wrong dimension");
    Signal f_prev = f;

    SampleHistory history(s, plan.tau_max + 2);
    RunResult result;
    result.trace.reserve(steps + 1);
    result.node_estimates.resize(options.tracked_nodes.size());
    result.node_truths.resize(options.tracked_nodes.size());

    NodeTables tables;
    if (options.mode == Mode::message_passing) {
        tables.iter = Eigen::MatrixXi::Constant(n, s, -1);
        tables.val = Eigen::MatrixXd::Zero(n, s);
    }

    // Cache the biased target when it is the same for every row.
    const bool fixed_target =
        schedule.kind == Schedule::Kind::constant && truth.time_invariant();
    Signal cached_target;
    if (fixed_target) cached_target = biased_target(truth.frame(0), plan, schedule.beta(1));

    for (int k = 0; k <= steps; ++k) {
        const Signal& truth_k = truth.frame(k);

        Eigen::VectorXd sample_est(s), sample_truth(s);
        for (int i = 0; i < s; ++i) {
            sample_est(i) = f(plan.sample_set[i]);
            sample_truth(i) = truth_k(plan.sample_set[i]);
        }
        history.push(k, sample_est, sample_truth);

        TraceRow row;
        row.k = k;
        row.mu_k = schedule.mu(k + 1);
        row.beta_k = schedule.beta(k + 1);
        const Signal& target =
            fixed_target ? cached_target : biased_target(truth_k, plan, row.beta_k);
        std::tie(row.e, row.e_plus) = band_errors(f, target, plan.band, plan.basis);
        row.total = (f - truth_k).norm();
        double truth_norm = truth_k.norm();
        row.relative = truth_norm > 0.0 ? row.total / truth_norm : row.total;
        std::tie(row.delta_k, row.eta_k) = appendix_diagnostics(f, f_prev, history, plan, k);
        if (k == 0) row.delta_k = 0.0;
        result.trace.push_back(row);

        for (std::size_t t = 0; t < options.tracked_nodes.size(); ++t) {
            result.node_estimates[t].push_back(f(options.tracked_nodes[t]));
            result.node_truths[t].push_back(truth_k(options.tracked_nodes[t]));
        }

        if (k == steps) break;
        f_prev = f;

        if (options.mode == Mode::closed_form) {
            f = dlsr_closed_form_step(f, history, plan, schedule, k);
            continue;
        }

        // Message-passing round: snapshot carries the tables as of the end of
        // the previous round, so a value forwarded this round is one hop old.
        NodeTables snapshot = tables;

        // Estimation: representatives refresh their own entry.
        for (int i = 0; i < s; ++i) {
            int u = plan.sample_set[i];
            tables.iter(u, i) = k;
            tables.val(u, i) = sample_truth(i) - sample_est(i);
        }

        if (plan.tau_max == 0) {
            // Delay-free plans deliver every fresh error immediately.
            for (int v = 0; v < n; ++v)
                for (int i = 0; i < s; ++i) {
                    tables.iter(v, i) = k;
                    tables.val(v, i) = sample_truth(i) - sample_est(i);
                }
        } else {
            // Communication: merge neighbors' snapshots, keeping the freshest
            // iteration per sensor (commutative, order-independent).
            for (int v = 0; v < n; ++v) {
                for (int w : g.neighbors()[v]) {
                    for (int i = 0; i < s; ++i) {
                        if (snapshot.iter(w, i) > tables.iter(v, i)) {
                            tables.iter(v, i) = snapshot.iter(w, i);
                            tables.val(v, i) = snapshot.val(w, i);
                        }
                    }
                    ++result.messages_sent;
                }
            }
        }

#ifndef NDEBUG
        // Fresh flooding over shortest paths realizes the hop delays exactly.
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < s; ++i)
                if (k >= plan.tau(i, v)) assert(tables.iter(v, i) == k - plan.tau(i, v));
#endif

        // Update: same arithmetic as the closed-form vector iteration.
        const double mu = schedule.mu(k + 1);
        const double beta = schedule.beta(k + 1);
        Signal next = (1.0 - mu * beta) * f;
        for (int v = 0; v < n; ++v) {
            double acc = 0.0;
            for (int i = 0; i < s; ++i)
                if (tables.iter(v, i) >= 0) acc += tables.val(v, i) * plan.frame(v, i);
            next(v) += mu * acc;
        }
        f = next;
    }

    result.final_estimate = f;
    return result;
}

}  // namespace dlsr
