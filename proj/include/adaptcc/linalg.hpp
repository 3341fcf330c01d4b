#pragma once

#include <cstddef>
#include <vector>

#include "adaptcc/dual.hpp"

namespace adaptcc {

// Row-major dense square matrix.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

// Largest eigenvalue magnitude of an entrywise nonnegative matrix.
struct SpectralRadius {
  double value = 0.0;
  bool converged = false;
  long iterations = 0;
};

// Power iteration on A + I (same Perron vector as A, strictly dominant
// root even for periodic A); stops when the eigenvalue estimate moves by
// less than rel_tol relative.
SpectralRadius spectral_radius(const SquareMatrix<double>& a, double rel_tol = 1e-10, long max_iter = 100000);

// Solves a * x = b with Gaussian elimination and partial pivoting. Returns
// false when a pivot underflows (singular to working precision).
bool solve_linear(SquareMatrix<double> a, std::vector<double>& b);

// Dual solve (A0 + e A1) x = b0 + e b1:  x0 = A0^-1 b0,
// x1 = A0^-1 (b1 - A1 x0), sharing one factorization of A0.
bool solve_linear(const SquareMatrix<Dual>& a, std::vector<Dual>& b);

}  // namespace adaptcc
