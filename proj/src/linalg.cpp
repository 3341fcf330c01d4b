#include "adaptcc/linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "adaptcc/errors.hpp"

namespace adaptcc {

SpectralRadius spectral_radius(const SquareMatrix<double>& a, double rel_tol, long max_iter) {
  const std::size_t n = a.size();
  SpectralRadius out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  for (double v : a.data())
    if (v < 0 || !std::isfinite(v)) throw ConfigError("spectral_radius expects a finite nonnegative matrix");

  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  double prev = -1.0;
  for (long it = 1; it <= max_iter; ++it) {
    for (std::size_t r = 0; r < n; ++r) {
      double acc = x[r];
      for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * x[c];
      y[r] = acc;
    }
    const double norm = std::accumulate(y.begin(), y.end(), 0.0);
    const double lambda = norm - 1.0;  // x sums to 1
    for (std::size_t r = 0; r < n; ++r) x[r] = y[r] / norm;
    if (prev >= 0 && std::abs(lambda - prev) <= rel_tol * std::max(std::abs(lambda), 1e-300)) {
      out.value = std::max(lambda, 0.0);
      out.converged = true;
      out.iterations = it;
      return out;
    }
    if (lambda == 0.0 && prev == 0.0) {
      out.converged = true;
      out.iterations = it;
      return out;
    }
    prev = lambda;
  }
  out.value = std::max(prev, 0.0);
  out.iterations = max_iter;
  return out;
}

namespace {

// In-place LU with partial pivoting; perm maps factor rows to source rows.
bool lu_factor(SquareMatrix<double>& a, std::vector<std::size_t>& perm) {
  const std::size_t n = a.size();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  const double tiny = std::max(scale, 1.0) * n * std::numeric_limits<double>::epsilon();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    if (!(std::abs(a(piv, k)) > tiny)) return false;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(perm[k], perm[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      a(r, k) = f;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return true;
}

void lu_solve(const SquareMatrix<double>& lu, const std::vector<std::size_t>& perm, std::vector<double>& b) {
  const std::size_t n = lu.size();
  std::vector<double> x(n);
  for (std::size_t r = 0; r < n; ++r) {
    double acc = b[perm[r]];
    for (std::size_t c = 0; c < r; ++c) acc -= lu(r, c) * x[c];
    x[r] = acc;
  }
  for (std::size_t r = n; r-- > 0;) {
    double acc = x[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= lu(r, c) * x[c];
    x[r] = acc / lu(r, r);
  }
  b.swap(x);
}

}  // namespace

bool solve_linear(SquareMatrix<double> a, std::vector<double>& b) {
  std::vector<std::size_t> perm;
  if (!lu_factor(a, perm)) return false;
  lu_solve(a, perm, b);
  return true;
}

bool solve_linear(const SquareMatrix<Dual>& a, std::vector<Dual>& b) {
  const std::size_t n = a.size();
  SquareMatrix<double> lu(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) lu(r, c) = a(r, c).value;
  std::vector<std::size_t> perm;
  if (!lu_factor(lu, perm)) return false;

  std::vector<double> x0(n), x1(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = b[i].value;
  lu_solve(lu, perm, x0);
  for (std::size_t r = 0; r < n; ++r) {
    double acc = b[r].deriv;
    for (std::size_t c = 0; c < n; ++c) acc -= a(r, c).deriv * x0[c];
    x1[r] = acc;
  }
  lu_solve(lu, perm, x1);
  for (std::size_t i = 0; i < n; ++i) b[i] = {x0[i], x1[i]};
  return true;
}

}  // namespace adaptcc
