#include "adaptcc/bound.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "adaptcc/errors.hpp"

namespace adaptcc {

double chernoff_pair(Complex s, Complex s_hat, FadingOrder m, double omega, double n0) {
  if (!(omega > 0)) throw ConfigError("omega must be positive");
  if (!(n0 > 0)) throw ConfigError("N0 must be positive");
  const double x = omega * std::norm(s - s_hat) / (4.0 * n0);
  if (m.is_awgn()) return std::exp(-x);
  const double mm = m.m();
  return std::pow(1.0 + x / mm, -mm);
}

ProductStateMatrix::ProductStateMatrix(unsigned num_states)
    : states_(num_states),
      index_(static_cast<std::size_t>(num_states) * num_states),
      entries_(static_cast<std::size_t>(num_states) * num_states) {
  pairs_.reserve(index_.size());
  for (unsigned u = 0; u < states_; ++u) {
    index_[u * states_ + u] = pairs_.size();
    pairs_.push_back({u, u});
  }
  for (unsigned u = 0; u < states_; ++u)
    for (unsigned v = 0; v < states_; ++v)
      if (u != v) {
        index_[u * states_ + v] = pairs_.size();
        pairs_.push_back({u, v});
      }
}

SquareMatrix<Dual> ProductStateMatrix::bad_bad() const {
  const std::size_t g = good_count(), b = bad_count();
  SquareMatrix<Dual> out(b);
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < b; ++c) out(r, c) = entries_(g + r, g + c);
  return out;
}

SquareMatrix<double> ProductStateMatrix::bad_bad_values() const {
  const std::size_t g = good_count(), b = bad_count();
  SquareMatrix<double> out(b);
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < b; ++c) out(r, c) = entries_(g + r, g + c).value;
  return out;
}

ProductStateMatrix build_product_state_matrix(const SuperTrellis& trellis, const Constellation& constellation,
                                              const ChannelContext& ctx) {
  ctx.validate();
  if (constellation.order() != trellis.order()) throw ConfigError("constellation does not match the trellis alphabet");
  const auto order = static_cast<std::size_t>(constellation.order());
  std::vector<double> pair_factor(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      pair_factor[a * order + b] =
          a == b ? 1.0 : chernoff_pair(constellation[a], constellation[b], ctx.m, ctx.omega, ctx.n0);

  const unsigned states = trellis.num_states();
  const unsigned words = trellis.words_per_state();
  const int sym = trellis.symbols_per_step();
  const double p_word = 1.0 / static_cast<double>(words);
  ProductStateMatrix psm(states);

  for (unsigned u = 0; u < states; ++u) {
    for (unsigned v = 0; v < states; ++v) {
      const std::size_t row = psm.index(u, v);
      for (unsigned a = 0; a < words; ++a) {
        const auto la = trellis.labels(u, a);
        const unsigned u_next = trellis.next_state(u, a);
        for (unsigned b = 0; b < words; ++b) {
          const auto lb = trellis.labels(v, b);
          double d = p_word;
          for (int k = 0; k < sym; ++k) d *= pair_factor[la[k] * order + lb[k]];
          const int w = std::popcount(a ^ b);
          Dual& e = psm.at(row, psm.index(u_next, trellis.next_state(v, b)));
          e.value += d;
          e.deriv += w * d;
        }
      }
    }
  }
  return psm;
}

BoundResult ber_upper_bound(const ProductStateMatrix& psm, int info_bits_per_step) {
  if (info_bits_per_step < 1) throw ConfigError("information bits per step must be at least 1");
  const std::size_t g = psm.good_count(), nb = psm.bad_count();
  const double start = 1.0 / static_cast<double>(psm.num_states());
  BoundResult res;

  Dual direct;
  for (std::size_t r = 0; r < g; ++r)
    for (std::size_t c = 0; c < g; ++c) direct += psm.at(r, c);
  direct *= Dual(start);

  Dual through_bad;
  if (nb > 0) {
    const auto bb = psm.bad_bad_values();
    const auto rho = spectral_radius(bb);
    res.spectral_radius = rho.value;

    // Id - S_BB and S_BG 1.
    SquareMatrix<Dual> a(nb);
    std::vector<Dual> x(nb);
    for (std::size_t r = 0; r < nb; ++r) {
      for (std::size_t c = 0; c < nb; ++c) a(r, c) = -psm.at(g + r, g + c);
      a(r, r) += Dual(1.0);
      for (std::size_t c = 0; c < g; ++c) x[r] += psm.at(g + r, c);
    }
    const bool diverges = rho.value >= 1.0;
    if (!diverges && !solve_linear(a, x)) {
      res.status = BoundStatus::singular;
      res.p_b = std::numeric_limits<double>::infinity();
      return res;
    }
    double largest = 0.0;
    for (const auto& xi : x) largest = std::max(largest, std::abs(xi.value));
    bool nonnegative = std::isfinite(largest);
    for (const auto& xi : x) nonnegative = nonnegative && xi.value >= -1e-12 * largest;
    // (Id - S_BB)^-1 of a nonnegative S_BB is entrywise nonnegative exactly
    // when the Neumann series converges.
    if (diverges || !nonnegative) {
      res.status = BoundStatus::divergent;
      res.p_b = std::numeric_limits<double>::infinity();
      res.spectral_radius = std::max(res.spectral_radius, 1.0);
      return res;
    }
    for (std::size_t c = 0; c < nb; ++c) {
      Dual row_sum;
      for (std::size_t r = 0; r < g; ++r) row_sum += psm.at(r, g + c);
      through_bad += row_sum * x[c];
    }
    through_bad *= Dual(start);
  }

  res.transfer = direct + through_bad;
  res.p_b = res.transfer.deriv / info_bits_per_step;
  if (!std::isfinite(res.p_b)) {
    res.status = BoundStatus::singular;
    res.p_b = std::numeric_limits<double>::infinity();
  }
  return res;
}

BoundResult ber_upper_bound(const SuperTrellis& trellis, const Constellation& constellation,
                            const ChannelContext& ctx) {
  return ber_upper_bound(build_product_state_matrix(trellis, constellation, ctx), trellis.info_bits_per_step());
}

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::ok:
      return "ok";
    case BoundStatus::divergent:
      return "divergent";
    case BoundStatus::singular:
      return "singular";
  }
  return "unknown";
}

}  // namespace adaptcc
