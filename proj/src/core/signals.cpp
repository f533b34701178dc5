#include "core/signals.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dlsr {

Signal generate_bandlimited(const BandSpec& band, const SpectralBasis& basis, std::uint64_t seed,
                            double norm) {
    if (band.dim == 0)
        throw std::invalid_argument("generate_bandlimited: empty band");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(basis.size());
    for (int k = 0; k < band.dim; ++k) coeffs(k) = gauss(rng);
    double len = coeffs.norm();
    if (norm == 0.0 || len == 0.0) return Signal::Zero(basis.size());
    coeffs *= norm / len;
    return igft(coeffs, basis);
}

Signal evolve(const Signal& f, const BandSpec& band, const SpectralBasis& basis, double delta,
              std::uint64_t seed) {
    if (delta < 0.0)
        throw std::invalid_argument("evolve: delta must be nonnegative");
    if (delta == 0.0) return f;
    Signal g = generate_bandlimited(band, basis, seed, 1.0);
    double peak = g.cwiseAbs().maxCoeff();
    if (peak == 0.0) return f;
    return f + (delta / peak) * g;
}

TimeVaryingSignal synthetic_time_varying(const BandSpec& band, const SpectralBasis& basis,
                                         std::uint64_t seed, double norm, double delta,
                                         int steps) {
    TimeVaryingSignal s;
    s.delta = delta;
    s.frames.push_back(generate_bandlimited(band, basis, seed, norm));
    if (delta > 0.0) {
        for (int k = 1; k <= steps; ++k)
            s.frames.push_back(evolve(s.frames.back(), band, basis, delta, seed + 1000003u * k));
    }
    return s;
}

void save_signal_csv(const TimeVaryingSignal& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_signal_csv: cannot open " + path);
    out.precision(17);
    out << "k,v,value\n";
    for (std::size_t k = 0; k < s.frames.size(); ++k)
        for (int v = 0; v < s.frames[k].size(); ++v)
            out << k << "," << v << "," << s.frames[k](v) << "\n";
}

namespace {

// "YYYY-MM-DD HH:MM:SS[.ffffff]" -> seconds since the civil epoch.
bool parse_timestamp(const std::string& date, const std::string& time, double* out) {
    int y, mo, d, h, mi;
    double sec;
    if (std::sscanf(date.c_str(), "%d-%d-%d", &y, &mo, &d) != 3) return false;
    if (std::sscanf(time.c_str(), "%d:%d:%lf", &h, &mi, &sec) != 3) return false;
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return false;
    auto days = sys_days{ymd}.time_since_epoch().count();
    *out = days * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
    return true;
}

double parse_timestamp_or_throw(const std::string& stamp, const char* what) {
    std::istringstream in(stamp);
    std::string date, time;
    double t;
    if (!(in >> date >> time) || !parse_timestamp(date, time, &t))
        throw std::invalid_argument(std::string("load_intel_lab: bad ") + what + " '" + stamp +
                                    "', expected 'YYYY-MM-DD HH:MM:SS'");
    return t;
}

}  // namespace

IntelLabData load_intel_lab(const std::string& data_path, const std::string& locations_path,
                            const std::string& start_time, const std::string& end_time,
                            int resample_seconds) {
    if (resample_seconds <= 0)
        throw std::invalid_argument("load_intel_lab: resample_seconds must be positive");
    double t0 = parse_timestamp_or_throw(start_time, "start time");
    double t1 = parse_timestamp_or_throw(end_time, "end time");
    if (t1 < t0)
        throw std::invalid_argument("load_intel_lab: end time before start time");

    std::ifstream locs(locations_path);
    if (!locs)
        throw std::runtime_error("load_intel_lab: cannot open locations file " + locations_path);
    std::map<int, std::array<double, 2>> positions;
    {
        int id;
        double x, y;
        while (locs >> id >> x >> y) positions[id] = {x, y};
    }
    if (positions.empty())
        throw std::runtime_error("load_intel_lab: no mote locations in " + locations_path);

    std::ifstream data(data_path);
    if (!data)
        throw std::runtime_error("load_intel_lab: cannot open data file " + data_path);

    IntelLabData out;
    std::map<int, std::map<double, double>> readings;  // mote -> time -> temperature
    std::string line;
    while (std::getline(data, line)) {
        if (line.empty()) continue;
        std::istringstream in(line);
        std::string date, time;
        double epoch, temperature;
        int mote;
        if (!(in >> date >> time >> epoch >> mote >> temperature)) {
            ++out.malformed_rows;
            continue;
        }
        double t;
        if (!parse_timestamp(date, time, &t) || !std::isfinite(temperature)) {
            ++out.malformed_rows;
            continue;
        }
        if (t < t0 || t > t1) continue;
        if (!positions.count(mote)) continue;
        readings[mote][t] = temperature;
    }
    if (readings.empty())
        throw std::runtime_error("load_intel_lab: no rows in range");

    for (const auto& [mote, pos] : positions) {
        if (readings.count(mote) && !readings[mote].empty()) {
            out.mote_ids.push_back(mote);
            out.points.push_back(pos);
        } else {
            out.excluded_motes.push_back(mote);
        }
    }

    const int steps = static_cast<int>(std::floor((t1 - t0) / resample_seconds));
    const int n = static_cast<int>(out.mote_ids.size());

    // Pass 1: per-mote temporal linear interpolation inside the covered span.
    Eigen::MatrixXd grid = Eigen::MatrixXd::Constant(steps + 1, n,
                                                     std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < n; ++i) {
        const auto& series = readings[out.mote_ids[i]];
        for (int k = 0; k <= steps; ++k) {
            double t = t0 + static_cast<double>(k) * resample_seconds;
            auto after = series.lower_bound(t);
            if (after == series.end()) continue;
            if (after == series.begin()) {
                if (after->first == t) grid(k, i) = after->second;
                continue;
            }
            auto before = std::prev(after);
            double span = after->first - before->first;
            double w = span > 0.0 ? (t - before->first) / span : 0.0;
            grid(k, i) = (1.0 - w) * before->second + w * after->second;
        }
    }

    // Pass 2: fill remaining holes from the spatially nearest mote with data
    // at that grid time; fall back to the mote's nearest reading in time.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= steps; ++k) {
            if (!std::isnan(grid(k, i))) continue;
            int best = -1;
            double best_d2 = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                if (j == i || std::isnan(grid(k, j))) continue;
                double dx = out.points[i][0] - out.points[j][0];
                double dy = out.points[i][1] - out.points[j][1];
                double d2 = dx * dx + dy * dy;
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = j;
                }
            }
            if (best >= 0) {
                grid(k, i) = grid(k, best);
            } else {
                double t = t0 + static_cast<double>(k) * resample_seconds;
                const auto& series = readings[out.mote_ids[i]];
                auto after = series.lower_bound(t);
                if (after == series.end())
                    grid(k, i) = std::prev(after)->second;
                else if (after == series.begin())
                    grid(k, i) = after->second;
                else {
                    auto before = std::prev(after);
                    grid(k, i) = (t - before->first <= after->first - t) ? before->second
                                                                         : after->second;
                }
            }
        }
    }

    out.signal.frames.reserve(steps + 1);
    double max_step = 0.0;
    for (int k = 0; k <= steps; ++k) {
        out.signal.frames.push_back(grid.row(k).transpose());
        if (k > 0)
            max_step = std::max(max_step,
                                (out.signal.frames[k] - out.signal.frames[k - 1])
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    out.signal.delta = max_step;
    return out;
}

}  // namespace dlsr
