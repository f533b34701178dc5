#include "core/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dlsr {

void save_trace_csv(const ErrorTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_trace_csv: cannot open " + path);
    out.precision(17);
    out << "k,total_error,relative_error,in_band_error,out_band_error,delta_k,eta_k,mu_k,beta_k\n";
    for (const TraceRow& r : trace)
        out << r.k << "," << r.total << "," << r.relative << "," << r.e << "," << r.e_plus << ","
            << r.delta_k << "," << r.eta_k << "," << r.mu_k << "," << r.beta_k << "\n";
}

ErrorTrace load_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_trace_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("load_trace_csv: empty file " + path);
    ErrorTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TraceRow r;
        char c;
        std::istringstream row(line);
        if (!(row >> r.k >> c >> r.total >> c >> r.relative >> c >> r.e >> c >> r.e_plus >> c >>
              r.delta_k >> c >> r.eta_k >> c >> r.mu_k >> c >> r.beta_k))
            throw std::runtime_error("load_trace_csv: malformed row in " + path);
        trace.push_back(r);
    }
    return trace;
}

std::pair<double, double> band_errors(const Signal& f_k, const Signal& f_tilde,
                                      const BandSpec& band, const SpectralBasis& basis) {
    if (f_k.size() != f_tilde.size() || f_k.size() != basis.size())
        throw std::invalid_argument("band_errors: dimension mismatch");
    Signal tilde_high = project(f_tilde, band, basis, Side::high);
    if (tilde_high.norm() > 1e-8 * std::max(1.0, f_tilde.norm()))
        throw std::invalid_argument("band_errors: target has out-of-band energy");
    double e = (project(f_k, band, basis, Side::low) - f_tilde).norm();
    double e_plus = project(f_k, band, basis, Side::high).norm();
    return {e, e_plus};
}

std::pair<double, double> appendix_diagnostics(const Signal& f_k, const Signal& f_km1,
                                               const SampleHistory& history,
                                               const SamplingPlan& plan, int k) {
    double delta_k = (f_k - f_km1).norm();
    Signal mismatch = Signal::Zero(plan.n());
    for (int v = 0; v < plan.n(); ++v) {
        double acc = 0.0;
        for (int i = 0; i < plan.sample_count(); ++i) {
            double fresh = f_k(plan.sample_set[i]);
            double delayed = history.estimate(i, k - plan.tau(i, v));
            acc += (fresh - delayed) * plan.frame(v, i);
        }
        mismatch(v) = acc;
    }
    return {delta_k, mismatch.norm()};
}

ConvergenceReport convergence_rate(const ErrorTrace& trace, int steady_window) {
    ConvergenceReport report;
    if (steady_window <= 0 || static_cast<int>(trace.size()) < 2 * steady_window) return report;

    const int n = static_cast<int>(trace.size());
    for (const TraceRow& r : trace)
        if (!std::isfinite(r.total)) return report;

    auto window_mean = [&](int end) {
        double s = 0.0;
        for (int i = end - steady_window; i < end; ++i) s += trace[i].total;
        return s / steady_window;
    };
    double tail = window_mean(n);
    double prev = window_mean(n - steady_window);
    double scale = std::max(std::abs(prev), std::abs(tail));
    // Traces that have decayed to a negligible level count as steady even if
    // they are still shrinking geometrically.
    double floor = 1e-9 * (std::abs(trace[0].total) + 1.0);
    if (std::abs(tail - prev) >= 0.01 * scale + floor) return report;

    report.converged = true;
    report.steady_error = tail;
    int m = 0;
    while (m < n && trace[m].total > 1.2 * report.steady_error) ++m;
    if (m >= n) m = n - 1;
    if (m == 0) m = 1;  // constant-from-start traces report rate over one step
    report.reach_iteration = m;
    double start = trace[0].total;
    if (start > 0.0 && trace[m].total > 0.0)
        report.rate = std::pow(trace[m].total / start, 1.0 / m);
    else
        report.rate = start == 0.0 ? 1.0 : 0.0;
    return report;
}

double rate_exponent_fit(const ErrorTrace& trace, int k_min, int k_max) {
    if (k_min < 1 || k_max <= k_min)
        throw std::invalid_argument("rate_exponent_fit: need k_max > k_min >= 1");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const TraceRow& r : trace) {
        if (r.k < k_min || r.k > k_max) continue;
        if (!(r.total > 0.0))
            throw std::invalid_argument("rate_exponent_fit: nonpositive error at k=" +
                                        std::to_string(r.k));
        double x = std::log(static_cast<double>(r.k));
        double y = std::log(r.total);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2)
        throw std::invalid_argument("rate_exponent_fit: fewer than two rows in range");
    double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("rate_exponent_fit: degenerate abscissae");
    return (count * sxy - sx * sy) / denom;
}

}  // namespace dlsr
