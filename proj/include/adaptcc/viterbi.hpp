#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "adaptcc/constellation.hpp"
#include "adaptcc/trellis.hpp"

namespace adaptcc {

struct DecoderConfig {
  // Back-search limit in super-steps. A decision for step t is released
  // once step t + traceback has been processed.
  int traceback = 1 << 30;
  // Trace the final flush from state 0 (zero-tail terminated frames).
  bool terminated = true;
  // Number of leading information bits. Inputs past it (tail and padding)
  // are known zeros and pruned from the search.
  std::optional<std::size_t> info_bits;

  void validate() const;
};

// Soft-decision Viterbi decoding over the super-trellis with perfect CSI.
// Branch metric: sum over the transition's symbols of |r_k - h_k s_k|^2.
// Ties go to the lower-indexed predecessor state, then the lower input
// word. Returns l decoded bits per super-step for every step of the frame,
// tail included.
Bits viterbi_decode(std::span<const Complex> received, std::span<const double> csi,
                    const Constellation& constellation, const SuperTrellis& trellis, const DecoderConfig& config);

}  // namespace adaptcc
