#include "adaptcc/viterbi.hpp"

#include <limits>
#include <vector>

#include "adaptcc/errors.hpp"

namespace adaptcc {

void DecoderConfig::validate() const {
  if (traceback < 1) throw ConfigError("traceback window must be at least 1");
}

namespace {

struct Survivor {
  unsigned prev;
  unsigned word;
};

}  // namespace

Bits viterbi_decode(std::span<const Complex> received, std::span<const double> csi,
                    const Constellation& constellation, const SuperTrellis& trellis, const DecoderConfig& config) {
  config.validate();
  if (received.size() != csi.size()) throw ConfigError("CSI and received sample counts differ");
  if (constellation.order() != trellis.order()) throw ConfigError("constellation does not match the trellis alphabet");
  const auto sym = static_cast<std::size_t>(trellis.symbols_per_step());
  if (received.size() % sym != 0) throw ConfigError("sample count is not a whole number of super-steps");

  const std::size_t steps = received.size() / sym;
  const unsigned states = trellis.num_states();
  const unsigned words = trellis.words_per_state();
  const int l = trellis.info_bits_per_step();
  if (config.info_bits && *config.info_bits > steps * static_cast<std::size_t>(l))
    throw ConfigError("frame holds fewer input bits than the stated information length");
  // Word bits that must be zero at super-step t.
  auto forced_zero = [&](std::size_t t) {
    unsigned mask = 0;
    if (!config.info_bits) return mask;
    for (int b = 0; b < l; ++b)
      if (t * static_cast<std::size_t>(l) + static_cast<std::size_t>(b) >= *config.info_bits) mask |= 1u << (l - 1 - b);
    return mask;
  };
  const auto order = static_cast<std::size_t>(constellation.order());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> metric(states, kInf), next_metric(states);
  metric[0] = 0.0;
  std::vector<Survivor> survivors(steps * states);
  std::vector<double> symbol_metric(sym * order);
  Bits out(steps * l, 0);

  auto emit = [&](std::size_t step, unsigned word) {
    for (int b = 0; b < l; ++b) out[step * l + b] = static_cast<std::uint8_t>((word >> (l - 1 - b)) & 1u);
  };
  // Follows survivors from `state` at time `from_time` back to step `until`
  // (inclusive) and returns the state entered by that step.
  auto trace = [&](unsigned state, std::size_t from_time, std::size_t until) {
    for (std::size_t t = from_time; t-- > until + 1;) state = survivors[t * states + state].prev;
    return state;
  };

  const auto window = static_cast<std::size_t>(config.traceback);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t k = 0; k < sym; ++k) {
      const Complex r = received[t * sym + k];
      const double h = csi[t * sym + k];
      for (std::size_t a = 0; a < order; ++a) symbol_metric[k * order + a] = std::norm(r - h * constellation[a]);
    }
    std::fill(next_metric.begin(), next_metric.end(), kInf);
    Survivor* surv = &survivors[t * states];
    const unsigned zero = forced_zero(t);
    for (unsigned s = 0; s < states; ++s) {
      if (metric[s] == kInf) continue;
      for (unsigned w = 0; w < words; ++w) {
        if (w & zero) continue;
        const auto labels = trellis.labels(s, w);
        double bm = 0.0;
        for (std::size_t k = 0; k < sym; ++k) bm += symbol_metric[k * order + labels[k]];
        const unsigned to = trellis.next_state(s, w);
        const double cand = metric[s] + bm;
        if (cand < next_metric[to]) {
          next_metric[to] = cand;
          surv[to] = {s, w};
        }
      }
    }
    metric.swap(next_metric);

    if (t >= window) {
      unsigned best = 0;
      for (unsigned s = 1; s < states; ++s)
        if (metric[s] < metric[best]) best = s;
      const std::size_t decide = t - window;
      const unsigned state = trace(best, t + 1, decide);
      emit(decide, survivors[decide * states + state].word);
    }
  }

  unsigned state = 0;
  if (!config.terminated) {
    for (unsigned s = 1; s < states; ++s)
      if (metric[s] < metric[state]) state = s;
  }
  if (metric[state] == kInf) throw NumericalError("no surviving path reaches the final state");
  const std::size_t undecided = steps > window ? steps - window : 0;
  for (std::size_t t = steps; t-- > undecided;) {
    const Survivor& s = survivors[t * states + state];
    emit(t, s.word);
    state = s.prev;
  }
  return out;
}

}  // namespace adaptcc
