#pragma once
// Reference implementations written directly from the textbook definitions.
// They share no code with the library beyond its public data types.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "adaptcc/constellation.hpp"
#include "adaptcc/context.hpp"
#include "adaptcc/trellis.hpp"

namespace oracle {

using adaptcc::Complex;

inline double chernoff(double dist2, int m, double omega, double n0) {
  if (m == 0) return std::exp(-omega * dist2 / (4.0 * n0));
  return std::pow(1.0 + omega * dist2 / (4.0 * n0 * m), -m);
}

// Shift register with explicit history: hist[0] is the current input, hist[j] the input j steps ago.
struct ShiftRegisterCode {
  std::vector<unsigned> generators;  // octal as written, e.g. 5, 7

  static unsigned octal_value(unsigned written) {
    unsigned v = 0, scale = 1;
    for (; written; written /= 10, scale *= 8) v += (written % 10) * scale;
    return v;
  }
  int constraint_length() const {
    int k = 1;
    for (unsigned g : generators) k = std::max(k, static_cast<int>(std::bit_width(octal_value(g))));
    return k;
  }
  std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& bits) const {
    const int k = constraint_length();
    std::vector<std::uint8_t> hist(k, 0), out;
    for (std::uint8_t b : bits) {
      for (int j = k - 1; j > 0; --j) hist[j] = hist[j - 1];
      hist[0] = b;
      for (unsigned g : generators) {
        const unsigned poly = octal_value(g);
        int acc = 0;
        for (int j = 0; j < k; ++j)
          if ((poly >> (k - 1 - j)) & 1u) acc ^= hist[j];
        out.push_back(static_cast<std::uint8_t>(acc));
      }
    }
    return out;
  }
};

inline std::vector<std::uint8_t> apply_mask(const std::vector<std::uint8_t>& coded,
                                            const std::vector<std::vector<std::uint8_t>>& rows) {
  const std::size_t n = rows.size(), period = rows[0].size();
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < coded.size(); ++i) {
    const std::size_t stream = i % n, step = i / n;
    if (rows[stream][step % period]) out.push_back(coded[i]);
  }
  return out;
}

inline std::vector<Complex> map_msb_first(const std::vector<std::uint8_t>& bits, const adaptcc::Constellation& c) {
  const int q = std::countr_zero(static_cast<unsigned>(c.order()));
  std::vector<Complex> out;
  for (std::size_t i = 0; i + q <= bits.size(); i += q) {
    unsigned label = 0;
    for (int j = 0; j < q; ++j) label = (label << 1) | bits[i + j];
    out.push_back(c.points()[label]);
  }
  return out;
}

struct LinkSpec {
  ShiftRegisterCode code;
  std::optional<std::vector<std::vector<std::uint8_t>>> mask;
  int steps_per_super = 1;
};

inline std::vector<Complex> transmit_symbols(const LinkSpec& spec, const std::vector<std::uint8_t>& info,
                                             std::size_t total_steps, const adaptcc::Constellation& c) {
  std::vector<std::uint8_t> padded(info);
  padded.resize(total_steps, 0);
  auto coded = spec.code.encode(padded);
  if (spec.mask) coded = apply_mask(coded, *spec.mask);
  return map_msb_first(coded, c);
}

// Exhaustive minimum-metric search over all 2^n information sequences.
inline std::vector<std::uint8_t> ml_search(const LinkSpec& spec, std::size_t n, std::size_t total_steps,
                                           const adaptcc::Constellation& c, const std::vector<Complex>& received,
                                           const std::vector<double>& gains) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> best_info;
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << n); ++word) {
    std::vector<std::uint8_t> info(n);
    for (std::size_t i = 0; i < n; ++i) info[i] = static_cast<std::uint8_t>((word >> (n - 1 - i)) & 1u);
    const auto s = transmit_symbols(spec, info, total_steps, c);
    double metric = 0;
    for (std::size_t k = 0; k < s.size(); ++k) metric += std::norm(received[k] - gains[k] * s[k]);
    if (metric < best) {
      best = metric;
      best_info = info;
    }
  }
  return best_info;
}

inline double pair_weight(const adaptcc::SuperTrellis& t, const adaptcc::Constellation& c,
                          const adaptcc::ChannelContext& ctx, unsigned u, unsigned a, unsigned v, unsigned b) {
  const auto la = t.labels(u, a), lb = t.labels(v, b);
  double d = 1.0;
  for (std::size_t k = 0; k < la.size(); ++k)
    d *= chernoff(std::norm(c.points()[la[k]] - c.points()[lb[k]]), ctx.m.m(), ctx.omega, ctx.n0);
  return d * std::ldexp(1.0, -t.info_bits_per_step());
}

inline bool gauss_solve(std::vector<std::vector<double>> a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= a[i][k] * b[k];
    b[i] /= a[i][i];
  }
  return true;
}

// Scalar generating function T(I) with the marker evaluated numerically. Dropping the identical-path
// terms removes a constant, which keeps finite differences well conditioned when P_b is tiny.
inline double transfer(const adaptcc::SuperTrellis& t, const adaptcc::Constellation& c,
                       const adaptcc::ChannelContext& ctx, double marker, bool identical_paths = true) {
  const unsigned ns = t.num_states(), words = t.words_per_state();
  std::vector<std::pair<unsigned, unsigned>> bad;
  for (unsigned u = 0; u < ns; ++u)
    for (unsigned v = 0; v < ns; ++v)
      if (u != v) bad.emplace_back(u, v);
  auto bad_index = [&](unsigned u, unsigned v) {
    return static_cast<std::size_t>(std::find(bad.begin(), bad.end(), std::make_pair(u, v)) - bad.begin());
  };
  const std::size_t nb = bad.size();
  std::vector<std::vector<double>> sbb(nb, std::vector<double>(nb, 0.0));
  std::vector<double> sbg(nb, 0.0), sgb(nb, 0.0);
  double sgg = 0.0;
  for (unsigned u = 0; u < ns; ++u)
    for (unsigned v = 0; v < ns; ++v)
      for (unsigned a = 0; a < words; ++a)
        for (unsigned b = 0; b < words; ++b) {
          if (!identical_paths && u == v && a == b) continue;
          const unsigned nu = t.next_state(u, a), nv = t.next_state(v, b);
          const double w = pair_weight(t, c, ctx, u, a, v, b) * std::pow(marker, std::popcount(a ^ b));
          const bool from_good = u == v, to_good = nu == nv;
          if (from_good && to_good) sgg += w;
          else if (from_good) sgb[bad_index(nu, nv)] += w;
          else if (to_good) sbg[bad_index(u, v)] += w;
          else sbb[bad_index(u, v)][bad_index(nu, nv)] += w;
        }
  std::vector<std::vector<double>> lhs(nb, std::vector<double>(nb, 0.0));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) lhs[i][j] = (i == j ? 1.0 : 0.0) - sbb[i][j];
  std::vector<double> x = sbg;
  if (!gauss_solve(lhs, x)) return std::numeric_limits<double>::infinity();
  double total = sgg;
  for (std::size_t i = 0; i < nb; ++i) total += sgb[i] * x[i];
  return total / ns;
}

// Explicit enumeration of paired error events up to max_len super-steps; returns the truncated P_b sum.
inline double enumerate_events(const adaptcc::SuperTrellis& t, const adaptcc::Constellation& c,
                               const adaptcc::ChannelContext& ctx, int max_len) {
  const unsigned ns = t.num_states(), words = t.words_per_state();
  double total = 0.0;
  std::function<void(unsigned, unsigned, int, double, int)> walk = [&](unsigned u, unsigned v, int depth, double w,
                                                                      int errs) {
    for (unsigned a = 0; a < words; ++a)
      for (unsigned b = 0; b < words; ++b) {
        const unsigned nu = t.next_state(u, a), nv = t.next_state(v, b);
        const double nw = w * pair_weight(t, c, ctx, u, a, v, b);
        const int ne = errs + std::popcount(a ^ b);
        if (nu == nv) total += ne * nw;
        else if (depth + 1 < max_len) walk(nu, nv, depth + 1, nw, ne);
      }
  };
  for (unsigned u = 0; u < ns; ++u) walk(u, u, 0, 1.0, 0);
  return total / ns / t.info_bits_per_step();
}

inline double rayleigh_bpsk_ber(double snr) { return 0.5 * (1.0 - std::sqrt(snr / (1.0 + snr))); }

}  // namespace oracle
