#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace adaptcc {

using Bits = std::vector<std::uint8_t>;

struct Rational {
  long num = 1;
  long den = 1;

  static Rational reduced(long n, long d) {
    const long g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) { return a.num * b.den <=> b.num * a.den; }
};

// Feed-forward, single-input convolutional encoder. Generators are given in
// octal as conventionally written ([5, 7] means 0b101, 0b111). The MSB of a
// generator taps the current input bit. The state holds the most recent
// constraint_length-1 inputs, newest in the most significant position.
class Encoder {
 public:
  struct Step {
    unsigned next_state;
    unsigned output;  // stream 0 in the most significant bit
  };

  static Encoder from_octal(std::span<const unsigned> octal_generators);

  int constraint_length() const { return constraint_length_; }
  int memory() const { return constraint_length_ - 1; }
  unsigned num_states() const { return 1u << memory(); }
  int num_outputs() const { return static_cast<int>(taps_.size()); }
  Rational rate() const { return Rational::reduced(1, num_outputs()); }
  const std::vector<unsigned>& octal_generators() const { return octal_; }
  const std::vector<unsigned>& taps() const { return taps_; }

  Step step(unsigned state, int bit) const;

  // Encodes from the zero state; when `terminate` is set, constraint_length-1
  // zero tail bits are appended so the trellis ends in state 0.
  Bits encode(std::span<const std::uint8_t> info, bool terminate = true) const;

 private:
  Encoder() = default;
  std::vector<unsigned> octal_;
  std::vector<unsigned> taps_;
  int constraint_length_ = 1;
};

// Reads a conventionally written octal number (e.g. 133) into its value.
unsigned parse_octal(unsigned written);

// Periodic deletion mask. One row per encoder output stream, `period`
// columns; column t applies to base step t mod period.
class PuncturePattern {
 public:
  static PuncturePattern from_rows(std::vector<std::vector<std::uint8_t>> rows);

  int streams() const { return static_cast<int>(rows_.size()); }
  int period() const { return static_cast<int>(rows_.front().size()); }
  bool keep(int stream, int step) const { return rows_[stream][step % period()] != 0; }
  int kept_per_period() const;
  int kept_in_column(int column) const;
  // Information bits per kept coded bit for a rate-1/streams mother code.
  Rational rate() const { return Rational::reduced(period(), kept_per_period()); }
  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }
  std::string to_string() const;

  friend bool operator==(const PuncturePattern&, const PuncturePattern&) = default;

 private:
  std::vector<std::vector<std::uint8_t>> rows_;
};

// Keeps the coded bits at mask-1 positions. Coded bits are laid out
// step-major (all streams of step 0, then step 1, ...); the length must be
// a multiple of the stream count, a trailing partial period is allowed.
Bits puncture(std::span<const std::uint8_t> coded, const PuncturePattern& pattern);

// Reinserts erased positions. Kept positions carry 0/1, erased ones
// carry kErased.
inline constexpr std::int8_t kErased = -1;
std::vector<std::int8_t> depuncture(std::span<const std::uint8_t> kept, const PuncturePattern& pattern,
                                    std::size_t coded_length);

}  // namespace adaptcc
