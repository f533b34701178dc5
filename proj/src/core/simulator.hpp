#pragma once

#include <optional>
#include <vector>

#include "core/metrics.hpp"
#include "core/reconstruction.hpp"
#include "core/sampling.hpp"
#include "core/signals.hpp"

namespace dlsr {

enum class Mode { message_passing, closed_form };

struct SimOptions {
    int steps = 1000;
    Mode mode = Mode::message_passing;
    std::optional<Signal> initial;     // defaults to zero
    std::vector<int> tracked_nodes;    // per-node estimate/truth traces
};

struct RunResult {
    ErrorTrace trace;                          // rows k = 0..steps
    Signal final_estimate;
    std::vector<std::vector<double>> node_estimates;  // per tracked node
    std::vector<std::vector<double>> node_truths;
    long messages_sent = 0;                    // message_passing only
};

/// Runs DLSR for `steps` synchronous rounds. In message_passing mode every
/// node floods its freshest known error per sensor to its neighbors each
/// round (one hop of latency per round); closed_form produces the same
/// trajectory directly from the delayed vector iteration.
RunResult simulate(const Graph& g, const SamplingPlan& plan, const Schedule& schedule,
                   const TimeVaryingSignal& truth, const SimOptions& options);

}  // namespace dlsr
