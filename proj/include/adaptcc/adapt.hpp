#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adaptcc/bound.hpp"
#include "adaptcc/channel.hpp"
#include "adaptcc/lut.hpp"
#include "adaptcc/mcs.hpp"

namespace adaptcc {

// Goodput-style efficiency log2(M) * R * (1 - p_b)^n_b: the frame-success
// probability scales the error-free rate. p_b is clamped to [0, 1].
double spectral_efficiency(double p_b, int order, double rate, std::size_t n_b);

// Record for (m, mcs) whose design SNR is nearest in dB; ties go to the
// lower SNR.
const LutRecord& select_record(FadingOrder m, double snr_db, int mcs, const LutStore& store);
Constellation select_constellation(FadingOrder m, double snr_db, int mcs, const LutStore& store);

enum class ConstellationSource { adaptive, conventional };
const char* to_string(ConstellationSource s);
ConstellationSource parse_source(const std::string& text);

// Constellation an MCS uses at an operating point: the nearest LUT design
// in adaptive mode when one exists for (m, mcs), Gray QAM otherwise.
Constellation constellation_for(ConstellationSource source, const McsEntry& mcs, FadingOrder m, double snr_db,
                                 const LutStore* store);

struct SeCurvePoint {
  double snr_db = 0.0;
  int mcs = 0;
  std::string pb_source = "bound";
  double p_b = 0.0;
  double se = 0.0;
};

// p_b from the analytical bound (divergent maps to 1).
double bound_pb(const Link& link, const Constellation& c, FadingOrder m, double snr_db);

struct McsChoice {
  int mcs = 0;
  SeCurvePoint point;
  std::vector<SeCurvePoint> candidates;
};

// Highest spectral efficiency among the candidates. Values within
// kSeTieTolerance are ties, resolved toward lower M and then lower R.
inline constexpr double kSeTieTolerance = 1e-12;
McsChoice select_mcs(FadingOrder m, double snr_db, const std::vector<McsEntry>& candidates, const LutStore* store,
                     std::size_t n_b, ConstellationSource source = ConstellationSource::adaptive);

struct LatencySearch {
  double snr_lo_db = 0.0;
  double snr_hi_db = 40.0;
  double resolution_db = 0.1;
  std::size_t n_b = 920;
  SimulationOptions sim;  // traceback is overridden per cell
};

struct LatencyRow {
  int tau = 0;  // super-steps
  long latency_bits = 0;  // tau * information bits per super-step
  double target_ber = 0.0;
  std::optional<double> required_snr_db;
  BerEstimate at_required;  // the estimate that attained the target
};

// For every (tau, target): bisection over SNR (dB) for the smallest SNR
// whose simulated BER is at or below the target. Adaptive mode re-selects
// the constellation at each probe.
std::vector<LatencyRow> latency_sweep(const Link& link, ConstellationSource source, FadingOrder m,
                                      const std::vector<double>& targets, const std::vector<int>& taus,
                                      const LatencySearch& search, const LutStore* store);

// One simulated point of the BER-vs-SNR curve at a given window, used by
// the sweep and by statistical checks on its output.
BerEstimate simulate_point(const Link& link, ConstellationSource source, FadingOrder m, double snr_db, int tau,
                           const LatencySearch& search, const LutStore* store);

}  // namespace adaptcc
