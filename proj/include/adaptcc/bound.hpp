#pragma once

#include <vector>

#include "adaptcc/constellation.hpp"
#include "adaptcc/context.hpp"
#include "adaptcc/dual.hpp"
#include "adaptcc/linalg.hpp"
#include "adaptcc/trellis.hpp"

namespace adaptcc {

// Chernoff bound on mistaking s for s_hat under ML detection with perfect
// CSI over Nakagami-m fading: (1 + Omega |s - s_hat|^2 / (4 N0 m))^-m, and
// exp(-Omega |s - s_hat|^2 / (4 N0)) in the AWGN limit.
double chernoff_pair(Complex s, Complex s_hat, FadingOrder m, double omega, double n0);

// Pairwise-state matrix over ordered state pairs (u, v): u tracks the
// transmitted path, v a competing path. Good states (u == v) come first in
// state order, then the bad states in lexicographic (u, v) order.
class ProductStateMatrix {
 public:
  explicit ProductStateMatrix(unsigned num_states);

  unsigned num_states() const { return states_; }
  std::size_t dimension() const { return entries_.size(); }
  std::size_t good_count() const { return states_; }
  std::size_t bad_count() const { return dimension() - states_; }

  std::size_t index(unsigned u, unsigned v) const { return index_[u * states_ + v]; }
  std::pair<unsigned, unsigned> pair(std::size_t idx) const { return pairs_[idx]; }

  Dual& at(std::size_t row, std::size_t col) { return entries_(row, col); }
  const Dual& at(std::size_t row, std::size_t col) const { return entries_(row, col); }
  const SquareMatrix<Dual>& entries() const { return entries_; }

  // The (I - dependent) sub-blocks in the good/bad partition.
  SquareMatrix<Dual> bad_bad() const;
  SquareMatrix<double> bad_bad_values() const;

 private:
  unsigned states_;
  std::vector<std::size_t> index_;
  std::vector<std::pair<unsigned, unsigned>> pairs_;
  SquareMatrix<Dual> entries_;
};

// Entry ((u,v),(u',v')) = sum over correct transitions a: u->u' (each with
// probability 2^-l, i.e. Pr(u->u'|u) * p_n) and competing transitions
// b: v->v' of I^{w(a xor b)} * prod_k chernoff(s_a,k, s_b,k).
ProductStateMatrix build_product_state_matrix(const SuperTrellis& trellis, const Constellation& constellation,
                                              const ChannelContext& ctx);

enum class BoundStatus { ok, divergent, singular };

struct BoundResult {
  BoundStatus status = BoundStatus::ok;
  double p_b = 0.0;  // +inf unless status == ok
  double spectral_radius = 0.0;
  Dual transfer;  // T at I = 1 with its I-derivative

  bool finite() const { return status == BoundStatus::ok; }
};

// Generating function T(D, I) = pi^T S_GG 1 + (pi^T S_GB)(Id - S_BB)^-1 S_BG 1
// carried as a Dual, where pi is the uniform start distribution over the
// transmitted-path states. Requires a nonsingular Id - S_BB.
BoundResult ber_upper_bound(const ProductStateMatrix& psm, int info_bits_per_step);

// Convenience: build the matrix and evaluate the bound.
BoundResult ber_upper_bound(const SuperTrellis& trellis, const Constellation& constellation,
                            const ChannelContext& ctx);

const char* to_string(BoundStatus s);

}  // namespace adaptcc
