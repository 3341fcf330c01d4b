#include "adaptcc/trellis.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "adaptcc/constellation.hpp"
#include "adaptcc/errors.hpp"

namespace adaptcc {

int alignment_steps(const Encoder& encoder, const std::optional<PuncturePattern>& pattern, int order,
                    int max_base_steps) {
  if (order < 2 || !is_power_of_two(order)) throw ConfigError("modulation order must be a power of two >= 2");
  const int bps = std::countr_zero(static_cast<unsigned>(order));
  const int period = pattern ? pattern->period() : 1;
  for (int steps = period; steps <= max_base_steps; steps += period) {
    const int kept = pattern ? (steps / period) * pattern->kept_per_period() : steps * encoder.num_outputs();
    if (kept % bps == 0) return steps;
  }
  return 0;
}

SuperTrellis SuperTrellis::build(const Encoder& encoder, const std::optional<PuncturePattern>& pattern, int order,
                                 int max_base_steps) {
  if (pattern && pattern->streams() != encoder.num_outputs())
    throw ConfigError("puncture pattern has " + std::to_string(pattern->streams()) + " rows but the encoder has " +
                      std::to_string(encoder.num_outputs()) + " outputs");
  const int l = alignment_steps(encoder, pattern, order, max_base_steps);
  if (l == 0)
    throw ConfigError("no symbol alignment within " + std::to_string(max_base_steps) + " base steps for M=" +
                      std::to_string(order));
  if (l > 20) throw ConfigError("super-step of " + std::to_string(l) + " input bits is too large to enumerate");
  const int bps = std::countr_zero(static_cast<unsigned>(order));
  const unsigned words = 1u << l;
  const unsigned states = encoder.num_states();
  const int n = encoder.num_outputs();

  int kept = 0;
  for (int t = 0; t < l; ++t) kept += pattern ? pattern->kept_in_column(t) : n;
  const int symbols = kept / bps;

  std::vector<unsigned> next(static_cast<std::size_t>(states) * words);
  std::vector<unsigned> labels(static_cast<std::size_t>(states) * words * symbols);
  Bits coded;
  for (unsigned s = 0; s < states; ++s) {
    for (unsigned w = 0; w < words; ++w) {
      coded.clear();
      unsigned state = s;
      for (int t = 0; t < l; ++t) {
        const int bit = static_cast<int>((w >> (l - 1 - t)) & 1u);
        const auto step = encoder.step(state, bit);
        for (int j = 0; j < n; ++j)
          if (!pattern || pattern->keep(j, t)) coded.push_back(static_cast<std::uint8_t>((step.output >> (n - 1 - j)) & 1u));
        state = step.next_state;
      }
      const std::size_t idx = static_cast<std::size_t>(s) * words + w;
      next[idx] = state;
      const auto lab = bits_to_labels(coded, bps);
      std::copy(lab.begin(), lab.end(), labels.begin() + static_cast<std::ptrdiff_t>(idx * symbols));
    }
  }
  return SuperTrellis(states, l, symbols, order, std::move(next), std::move(labels));
}

SuperTrellis::SuperTrellis(unsigned num_states, int info_bits, int symbols_per_step, int order,
                           std::vector<unsigned> next_state, std::vector<unsigned> labels)
    : num_states_(num_states),
      info_bits_(info_bits),
      symbols_(symbols_per_step),
      order_(order),
      next_(std::move(next_state)),
      labels_(std::move(labels)) {
  if (num_states_ == 0 || info_bits_ < 1 || symbols_ < 1) throw ConfigError("degenerate trellis dimensions");
  if (order_ < 2 || !is_power_of_two(order_)) throw ConfigError("modulation order must be a power of two >= 2");
  const std::size_t transitions = static_cast<std::size_t>(num_states_) << info_bits_;
  if (next_.size() != transitions || labels_.size() != transitions * symbols_)
    throw ConfigError("trellis table sizes do not match its dimensions");
  for (auto s : next_)
    if (s >= num_states_) throw ConfigError("trellis successor out of range");
  for (auto lab : labels_)
    if (lab >= static_cast<unsigned>(order_)) throw ConfigError("trellis label out of range");
  index_groups();
}

int SuperTrellis::bits_per_symbol() const { return std::countr_zero(static_cast<unsigned>(order_)); }

void SuperTrellis::index_groups() {
  groups_.assign(num_states_, {});
  for (unsigned s = 0; s < num_states_; ++s) {
    std::map<unsigned, std::vector<unsigned>> by_successor;
    for (unsigned w = 0; w < words_per_state(); ++w) by_successor[next_state(s, w)].push_back(w);
    for (auto& [to, ws] : by_successor) groups_[s].push_back({s, to, std::move(ws)});
  }
}

const SuperTrellis::Group* SuperTrellis::find_group(unsigned from, unsigned to) const {
  for (const auto& g : groups_.at(from))
    if (g.to == to) return &g;
  return nullptr;
}

double SuperTrellis::transition_probability(unsigned from, unsigned to) const {
  const Group* g = find_group(from, to);
  return g ? static_cast<double>(g->words.size()) / static_cast<double>(words_per_state()) : 0.0;
}

double SuperTrellis::parallel_probability(unsigned from, unsigned to) const {
  const Group* g = find_group(from, to);
  return g ? 1.0 / static_cast<double>(g->words.size()) : 0.0;
}

std::size_t SuperTrellis::max_group_size() const {
  std::size_t best = 0;
  for (const auto& gs : groups_)
    for (const auto& g : gs) best = std::max(best, g.words.size());
  return best;
}

SuperTrellis SuperTrellis::relabeled(std::span<const unsigned> perm) const {
  if (perm.size() != num_states_) throw ConfigError("state permutation has the wrong size");
  std::vector<bool> seen(num_states_, false);
  for (auto p : perm) {
    if (p >= num_states_ || seen[p]) throw ConfigError("not a permutation of the states");
    seen[p] = true;
  }
  const unsigned words = words_per_state();
  std::vector<unsigned> next(next_.size());
  std::vector<unsigned> labels(labels_.size());
  for (unsigned s = 0; s < num_states_; ++s) {
    for (unsigned w = 0; w < words; ++w) {
      const std::size_t src = static_cast<std::size_t>(s) * words + w;
      const std::size_t dst = static_cast<std::size_t>(perm[s]) * words + w;
      next[dst] = perm[next_[src]];
      std::copy_n(labels_.begin() + static_cast<std::ptrdiff_t>(src * symbols_), symbols_,
                  labels.begin() + static_cast<std::ptrdiff_t>(dst * symbols_));
    }
  }
  return SuperTrellis(num_states_, info_bits_, symbols_, order_, std::move(next), std::move(labels));
}

}  // namespace adaptcc
