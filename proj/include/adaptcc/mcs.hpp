#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adaptcc/codec.hpp"
#include "adaptcc/trellis.hpp"

namespace adaptcc {

// Modulation and coding scheme. `rate()` is derived from the generators and
// the puncture mask; `nominal_rate` is the label it is catalogued under,
// which can disagree (MCS-3's mask keeps 6 of 8 bits, i.e. rate 2/3, while
// the scheme is listed as 3/4).
struct McsEntry {
  int id = 0;
  Rational nominal_rate;
  int order = 2;
  std::vector<unsigned> generators;
  std::optional<PuncturePattern> puncture;

  Rational rate() const;
  // log2(M) * R, the error-free spectral efficiency.
  double peak_efficiency() const;
  bool rate_matches_label() const { return rate() == nominal_rate; }
  std::string describe() const;
};

// The three schemes used for the Monte-Carlo study: rate-1/2 [5,7] with
// 16-ary symbols, the same code punctured by [1 1 0; 0 1 1] with 16-ary
// symbols, and punctured by [1 1 0 1; 0 1 1 1] with 64-ary symbols.
const std::vector<McsEntry>& mcs_catalog();
const McsEntry& find_mcs(int id);

// Identity code ([1]) with antipodal signalling: symbol-by-symbol detection.
McsEntry uncoded_bpsk();

// Encoder and super-trellis for one scheme, built once and shared.
struct Link {
  McsEntry mcs;
  Encoder encoder;
  SuperTrellis trellis;

  static Link build(const McsEntry& mcs);

  // Base steps per frame: N_b information bits plus the zero tail, padded
  // with further zeros to a whole number of super-steps.
  std::size_t frame_steps(std::size_t n_b) const;
  std::size_t frame_symbols(std::size_t n_b) const;
};

}  // namespace adaptcc
