#pragma once

#include <complex>
#include <span>
#include <vector>

#include "adaptcc/codec.hpp"

namespace adaptcc {

using Complex = std::complex<double>;

// M labeled points. points()[label] is the point carrying the bit pattern
// `label` (MSB-first), so the label map is a bijection by construction.
class Constellation {
 public:
  Constellation() = default;
  explicit Constellation(std::vector<Complex> points);

  // Gray-labeled rectangular QAM scaled to mean energy e_s. Labels
  // interleave the per-axis labels MSB-first (re, im, re, im, ...); each
  // axis label is a sign bit followed by a reflected Gray magnitude index.
  // M = 16 reproduces the usual sign/sign/magnitude/magnitude layout, M = 2
  // gives {+1, -1}.
  static Constellation gray_qam(int order, double e_s = 1.0);

  int order() const { return static_cast<int>(points_.size()); }
  int bits_per_symbol() const;
  const std::vector<Complex>& points() const { return points_; }
  const Complex& operator[](unsigned label) const { return points_[label]; }
  double mean_energy() const;
  // Smallest distance between two distinct labels (0 for coincident points).
  double min_distance() const;

  friend bool operator==(const Constellation&, const Constellation&) = default;

 private:
  std::vector<Complex> points_;
};

bool is_power_of_two(long n);

// Groups coded bits MSB-first into labels of `bits_per_symbol` bits.
std::vector<unsigned> bits_to_labels(std::span<const std::uint8_t> coded, int bits_per_symbol);

std::vector<Complex> map_symbols(std::span<const std::uint8_t> coded, const Constellation& constellation);

}  // namespace adaptcc
