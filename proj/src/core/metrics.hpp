#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/reconstruction.hpp"
#include "core/sampling.hpp"
#include "core/spectral.hpp"

namespace dlsr {

/// One trace record per iteration. total/relative are measured against the
/// true signal; e/e_plus against the biased target.
struct TraceRow {
    int k = 0;
    double total = 0.0;
    double relative = 0.0;
    double e = 0.0;       // in-band error
    double e_plus = 0.0;  // out-of-band error
    double delta_k = 0.0;
    double eta_k = 0.0;
    double mu_k = 0.0;
    double beta_k = 0.0;
};

using ErrorTrace = std::vector<TraceRow>;

void save_trace_csv(const ErrorTrace& trace, const std::string& path);
ErrorTrace load_trace_csv(const std::string& path);

/// (e, e_plus): norms of the in-band deviation from the biased target and
/// of the out-of-band content. The target must be bandlimited.
std::pair<double, double> band_errors(const Signal& f_k, const Signal& f_tilde,
                                      const BandSpec& band, const SpectralBasis& basis);

/// (delta_k, eta_k): step length and the delayed-estimate mismatch term,
/// both computed from the trajectory history at the sampled nodes.
std::pair<double, double> appendix_diagnostics(const Signal& f_k, const Signal& f_km1,
                                               const SampleHistory& history,
                                               const SamplingPlan& plan, int k);

struct ConvergenceReport {
    bool converged = false;
    double steady_error = 0.0;
    int reach_iteration = 0;  // first k with total <= 1.2 x steady error
    double rate = 1.0;        // (total(m)/total(0))^(1/m)
};

/// Steady state = mean of the last `steady_window` totals, accepted when the
/// windowed mean changes by less than 1% between the last two windows.
ConvergenceReport convergence_rate(const ErrorTrace& trace, int steady_window);

/// Least-squares slope of log(total) vs log(k) over [k_min, k_max].
double rate_exponent_fit(const ErrorTrace& trace, int k_min, int k_max);

}  // namespace dlsr
