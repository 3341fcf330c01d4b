#include "adaptcc/constellation.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "adaptcc/errors.hpp"

namespace adaptcc {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

Constellation::Constellation(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.size() < 2 || !is_power_of_two(static_cast<long>(points_.size())))
    throw ConfigError("constellation size must be a power of two >= 2, got " + std::to_string(points_.size()));
}

int Constellation::bits_per_symbol() const { return std::countr_zero(points_.size()); }

double Constellation::mean_energy() const {
  double e = 0.0;
  for (const auto& p : points_) e += std::norm(p);
  return e / static_cast<double>(points_.size());
}

double Constellation::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j) best = std::min(best, std::abs(points_[i] - points_[j]));
  return best;
}

namespace {

// Amplitude level (odd integer, signed) for a per-axis label of `bits` bits.
double axis_level(unsigned label, int bits) {
  if (bits == 0) return 0.0;
  const unsigned sign = label >> (bits - 1);
  const unsigned gray = label & ((1u << (bits - 1)) - 1u);
  unsigned index = gray;  // inverse reflected Gray code
  for (unsigned s = gray >> 1; s != 0; s >>= 1) index ^= s;
  const double magnitude = 2.0 * index + 1.0;
  return sign ? -magnitude : magnitude;
}

}  // namespace

Constellation Constellation::gray_qam(int order, double e_s) {
  if (!is_power_of_two(order) || order < 2) throw ConfigError("QAM order must be a power of two >= 2");
  if (!(e_s > 0)) throw ConfigError("energy budget must be positive");
  const int k = std::countr_zero(static_cast<unsigned>(order));
  const int re_bits = (k + 1) / 2;
  const int im_bits = k / 2;
  std::vector<Complex> pts(order);
  for (unsigned label = 0; label < static_cast<unsigned>(order); ++label) {
    unsigned re_label = 0, im_label = 0;
    int re_taken = 0, im_taken = 0;
    for (int pos = 0; pos < k; ++pos) {
      const unsigned bit = (label >> (k - 1 - pos)) & 1u;
      const bool to_re = (pos % 2 == 0 && re_taken < re_bits) || im_taken == im_bits;
      if (to_re) {
        re_label = (re_label << 1) | bit;
        ++re_taken;
      } else {
        im_label = (im_label << 1) | bit;
        ++im_taken;
      }
    }
    pts[label] = {axis_level(re_label, re_bits), axis_level(im_label, im_bits)};
  }
  Constellation c(std::move(pts));
  const double scale = std::sqrt(e_s / c.mean_energy());
  for (auto& p : c.points_) p *= scale;
  return c;
}

std::vector<unsigned> bits_to_labels(std::span<const std::uint8_t> coded, int bits_per_symbol) {
  const auto b = static_cast<std::size_t>(bits_per_symbol);
  if (b == 0 || coded.size() % b != 0)
    throw ConfigError("coded length " + std::to_string(coded.size()) + " is not a multiple of " +
                      std::to_string(bits_per_symbol));
  std::vector<unsigned> labels(coded.size() / b);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    unsigned v = 0;
    for (std::size_t j = 0; j < b; ++j) v = (v << 1) | (coded[i * b + j] & 1u);
    labels[i] = v;
  }
  return labels;
}

std::vector<Complex> map_symbols(std::span<const std::uint8_t> coded, const Constellation& constellation) {
  const auto labels = bits_to_labels(coded, constellation.bits_per_symbol());
  std::vector<Complex> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = constellation[labels[i]];
  return out;
}

}  // namespace adaptcc
