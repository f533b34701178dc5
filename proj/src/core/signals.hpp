#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/spectral.hpp"

namespace dlsr {

/// Sequence of per-step truth signals. A time-invariant truth is a single
/// frame; frame(k) clamps to the last stored frame.
struct TimeVaryingSignal {
    std::vector<Signal> frames;
    double delta = 0.0;  // bound on per-step per-entry change

    const Signal& frame(int k) const {
        return frames[std::min<std::size_t>(k, frames.size() - 1)];
    }
    bool time_invariant() const { return frames.size() == 1; }
};

/// In-band coefficients i.i.d. standard normal, rescaled to the requested
/// norm; out-of-band coefficients exactly zero.
Signal generate_bandlimited(const BandSpec& band, const SpectralBasis& basis, std::uint64_t seed,
                            double norm);

/// f plus a random bandlimited increment whose largest absolute entry is
/// exactly delta. delta = 0 returns f unchanged.
Signal evolve(const Signal& f, const BandSpec& band, const SpectralBasis& basis, double delta,
              std::uint64_t seed);

/// Chain evolve() for `steps` steps starting from an initial bandlimited draw.
TimeVaryingSignal synthetic_time_varying(const BandSpec& band, const SpectralBasis& basis,
                                         std::uint64_t seed, double norm, double delta, int steps);

/// CSV export, one row per (step, vertex, value).
void save_signal_csv(const TimeVaryingSignal& s, const std::string& path);

/// Intel Berkeley lab temperature data. Rows in the published format
/// `date time epoch moteid temperature humidity light voltage`; the
/// locations file has `moteid x y` per line.
struct IntelLabData {
    std::vector<std::array<double, 2>> points;  // per kept mote, file order by id
    std::vector<int> mote_ids;                  // kept motes
    std::vector<int> excluded_motes;            // motes with no usable rows
    int malformed_rows = 0;
    TimeVaryingSignal signal;
};

/// Extracts the temperature channel on a uniform time grid over
/// [start_time, end_time] (format "YYYY-MM-DD HH:MM:SS"). Gaps are filled
/// by per-mote linear interpolation in time; holes outside a mote's covered
/// span take the value of the spatially nearest mote with data at that grid
/// time; motes with no usable rows in the window are dropped and reported.
IntelLabData load_intel_lab(const std::string& data_path, const std::string& locations_path,
                            const std::string& start_time, const std::string& end_time,
                            int resample_seconds);

}  // namespace dlsr
