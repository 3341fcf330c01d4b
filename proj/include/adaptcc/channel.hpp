#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adaptcc/constellation.hpp"
#include "adaptcc/context.hpp"
#include "adaptcc/mcs.hpp"
#include "adaptcc/rng.hpp"
#include "adaptcc/viterbi.hpp"

namespace adaptcc {

// Nakagami-m amplitude: sqrt of a Gamma(m, Omega/m) draw, built as a sum
// of m unit exponentials. The AWGN limit returns sqrt(Omega).
double nakagami_gain(const ChannelContext& ctx, CounterRng& rng);

struct Frame {
  Bits info;           // N_b information bits
  Bits coded;          // after puncturing, tail included
  std::vector<Complex> symbols;
  std::vector<double> gains;  // perfect CSI, one per symbol
  std::vector<Complex> received;
};

// Encode, puncture, map and pass through r = h s + n. The rng stream is
// consumed as: per symbol, the fading draw then one complex noise sample.
Frame transmit_frame(const Bits& info, const Link& link, const Constellation& constellation,
                     const ChannelContext& ctx, CounterRng& rng);

struct StopRule {
  std::uint64_t min_errors = 200;
  std::uint64_t max_frames = 100000;
  std::uint64_t batch = 64;  // frames generated per parallel round
};

struct BerEstimate {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t frames = 0;
  double ber = 0.0;
  double std_error = 0.0;
};

struct SimulationOptions {
  StopRule stop;
  std::uint64_t seed = 1;
  // Defaults to a window covering the whole frame (exact ML decoding).
  std::optional<int> traceback;
  unsigned threads = 1;
};

// Frames are independent; frame i draws its information bits and channel
// from stream (seed, i). Frames are tallied in index order and the run
// stops right after the frame that reaches min_errors, so the result does
// not depend on the thread count.
BerEstimate simulate_ber(const Link& link, const Constellation& constellation, const ChannelContext& ctx,
                         std::size_t n_b, const SimulationOptions& options);

}  // namespace adaptcc
