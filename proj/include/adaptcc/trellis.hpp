#pragma once

#include <optional>
#include <span>
#include <vector>

#include "adaptcc/codec.hpp"

namespace adaptcc {

// Trellis whose transitions consume `info_bits_per_step()` (l) information
// bits and emit whole channel symbols. Built by grouping base encoder steps
// over a full puncturing period until the kept coded bits fill an integer
// number of log2(M)-bit symbols. Several input words may connect the same
// pair of states; those are the parallel transitions.
class SuperTrellis {
 public:
  struct Transition {
    unsigned from;
    unsigned to;
    unsigned word;  // input bits, first-in bit in the MSB
  };
  struct Group {
    unsigned from;
    unsigned to;
    std::vector<unsigned> words;
  };

  static constexpr int kDefaultMaxBaseSteps = 64;

  static SuperTrellis build(const Encoder& encoder, const std::optional<PuncturePattern>& pattern, int order,
                            int max_base_steps = kDefaultMaxBaseSteps);

  // Explicit table: next_state[s * W + w] and labels[(s * W + w) * S + k]
  // with W = 2^l words and S symbols per transition.
  SuperTrellis(unsigned num_states, int info_bits, int symbols_per_step, int order,
               std::vector<unsigned> next_state, std::vector<unsigned> labels);

  unsigned num_states() const { return num_states_; }
  int info_bits_per_step() const { return info_bits_; }
  unsigned words_per_state() const { return 1u << info_bits_; }
  int symbols_per_step() const { return symbols_; }
  int order() const { return order_; }
  int bits_per_symbol() const;

  Transition transition(unsigned state, unsigned word) const {
    return {state, next_[state * words_per_state() + word], word};
  }
  unsigned next_state(unsigned state, unsigned word) const { return next_[state * words_per_state() + word]; }
  std::span<const unsigned> labels(unsigned state, unsigned word) const {
    const std::size_t idx = static_cast<std::size_t>(state) * words_per_state() + word;
    return {labels_.data() + idx * symbols_, static_cast<std::size_t>(symbols_)};
  }

  // Parallel-transition groups leaving `state`, ordered by successor.
  const std::vector<Group>& groups(unsigned state) const { return groups_[state]; }
  // Pr(u -> v | u) = |group| / 2^l and the per-member probability 1/|group|.
  double transition_probability(unsigned from, unsigned to) const;
  double parallel_probability(unsigned from, unsigned to) const;
  std::size_t max_group_size() const;

  // Same trellis with state s renamed perm[s].
  SuperTrellis relabeled(std::span<const unsigned> perm) const;

  // Base encoder steps per super-transition when built from an encoder with
  // a single input bit per step (equals l).
  int base_steps() const { return info_bits_; }

 private:
  void index_groups();
  const Group* find_group(unsigned from, unsigned to) const;

  unsigned num_states_ = 0;
  int info_bits_ = 0;
  int symbols_ = 0;
  int order_ = 0;
  std::vector<unsigned> next_;
  std::vector<unsigned> labels_;
  std::vector<std::vector<Group>> groups_;
};

// Smallest number of base steps (a multiple of the puncture period) whose
// kept coded bits are a multiple of log2(M); 0 when none exists within
// max_base_steps.
int alignment_steps(const Encoder& encoder, const std::optional<PuncturePattern>& pattern, int order,
                    int max_base_steps = SuperTrellis::kDefaultMaxBaseSteps);

}  // namespace adaptcc
