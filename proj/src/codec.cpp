#include "adaptcc/codec.hpp"

#include <bit>

#include "adaptcc/errors.hpp"

namespace adaptcc {

unsigned parse_octal(unsigned written) {
  unsigned value = 0;
  unsigned scale = 1;
  while (written != 0) {
    const unsigned digit = written % 10;
    if (digit > 7) throw ConfigError("generator " + std::to_string(written) + " is not an octal number");
    value += digit * scale;
    scale *= 8;
    written /= 10;
  }
  return value;
}

Encoder Encoder::from_octal(std::span<const unsigned> octal_generators) {
  if (octal_generators.empty()) throw ConfigError("encoder needs at least one generator");
  Encoder enc;
  int k = 1;
  for (unsigned g : octal_generators) {
    const unsigned taps = parse_octal(g);
    if (taps == 0) throw ConfigError("generator polynomial must be nonzero");
    enc.octal_.push_back(g);
    enc.taps_.push_back(taps);
    k = std::max(k, static_cast<int>(std::bit_width(taps)));
  }
  if (k > 16) throw ConfigError("constraint length above 16 is not supported");
  enc.constraint_length_ = k;
  return enc;
}

Encoder::Step Encoder::step(unsigned state, int bit) const {
  const unsigned reg = (static_cast<unsigned>(bit & 1) << memory()) | state;
  unsigned out = 0;
  for (unsigned t : taps_) out = (out << 1) | (std::popcount(reg & t) & 1u);
  return {reg >> 1, out};
}

Bits Encoder::encode(std::span<const std::uint8_t> info, bool terminate) const {
  const std::size_t steps = info.size() + (terminate ? memory() : 0);
  const int n = num_outputs();
  Bits out;
  out.reserve(steps * n);
  unsigned state = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const int bit = t < info.size() ? (info[t] & 1) : 0;
    const Step s = step(state, bit);
    for (int j = n - 1; j >= 0; --j) out.push_back(static_cast<std::uint8_t>((s.output >> j) & 1u));
    state = s.next_state;
  }
  return out;
}

PuncturePattern PuncturePattern::from_rows(std::vector<std::vector<std::uint8_t>> rows) {
  if (rows.empty() || rows.front().empty()) throw ConfigError("puncture pattern is empty");
  const std::size_t period = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != period) throw ConfigError("puncture pattern rows differ in length");
    for (auto v : r)
      if (v > 1) throw ConfigError("puncture pattern entries must be 0 or 1");
  }
  for (std::size_t c = 0; c < period; ++c) {
    bool any = false;
    for (const auto& r : rows) any = any || r[c] != 0;
    if (!any) throw ConfigError("puncture pattern column " + std::to_string(c) + " erases a whole step");
  }
  PuncturePattern p;
  p.rows_ = std::move(rows);
  return p;
}

int PuncturePattern::kept_in_column(int column) const {
  int n = 0;
  for (const auto& r : rows_) n += r[column % period()];
  return n;
}

int PuncturePattern::kept_per_period() const {
  int n = 0;
  for (int c = 0; c < period(); ++c) n += kept_in_column(c);
  return n;
}

std::string PuncturePattern::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      if (c) s += ' ';
      s += static_cast<char>('0' + rows_[r][c]);
    }
  }
  return s + "]";
}

Bits puncture(std::span<const std::uint8_t> coded, const PuncturePattern& pattern) {
  const auto n = static_cast<std::size_t>(pattern.streams());
  if (coded.size() % n != 0) throw ConfigError("coded length is not a multiple of the stream count");
  Bits out;
  out.reserve(coded.size());
  for (std::size_t i = 0; i < coded.size(); ++i) {
    const int step = static_cast<int>(i / n);
    if (pattern.keep(static_cast<int>(i % n), step)) out.push_back(coded[i]);
  }
  return out;
}

std::vector<std::int8_t> depuncture(std::span<const std::uint8_t> kept, const PuncturePattern& pattern,
                                    std::size_t coded_length) {
  const auto n = static_cast<std::size_t>(pattern.streams());
  if (coded_length % n != 0) throw ConfigError("coded length is not a multiple of the stream count");
  std::vector<std::int8_t> out(coded_length, kErased);
  std::size_t k = 0;
  for (std::size_t i = 0; i < coded_length; ++i) {
    if (!pattern.keep(static_cast<int>(i % n), static_cast<int>(i / n))) continue;
    if (k == kept.size()) throw ConfigError("too few kept bits for the requested coded length");
    out[i] = static_cast<std::int8_t>(kept[k++] & 1);
  }
  if (k != kept.size()) throw ConfigError("too many kept bits for the requested coded length");
  return out;
}

}  // namespace adaptcc
