#include "adaptcc/mcs.hpp"

#include <cmath>

#include "adaptcc/errors.hpp"

namespace adaptcc {

Rational McsEntry::rate() const {
  const Rational mother = Encoder::from_octal(generators).rate();
  if (!puncture) return mother;
  return puncture->rate();
}

double McsEntry::peak_efficiency() const { return std::log2(static_cast<double>(order)) * rate().value(); }

std::string McsEntry::describe() const {
  std::string s = "MCS-" + std::to_string(id) + " R=" + rate().to_string() + " M=" + std::to_string(order) + " [";
  for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + std::to_string(generators[i]);
  s += "]";
  if (puncture) s += " puncture " + puncture->to_string();
  if (!rate_matches_label()) s += " (listed as " + nominal_rate.to_string() + ")";
  return s;
}

const std::vector<McsEntry>& mcs_catalog() {
  static const std::vector<McsEntry> catalog = {
      {1, {1, 2}, 16, {5, 7}, std::nullopt},
      {2, {3, 4}, 16, {5, 7}, PuncturePattern::from_rows({{1, 1, 0}, {0, 1, 1}})},
      {3, {3, 4}, 64, {5, 7}, PuncturePattern::from_rows({{1, 1, 0, 1}, {0, 1, 1, 1}})},
  };
  return catalog;
}

const McsEntry& find_mcs(int id) {
  for (const auto& e : mcs_catalog())
    if (e.id == id) return e;
  throw ConfigError("unknown MCS id " + std::to_string(id));
}

McsEntry uncoded_bpsk() { return {0, {1, 1}, 2, {1}, std::nullopt}; }

Link Link::build(const McsEntry& mcs) {
  Encoder enc = Encoder::from_octal(mcs.generators);
  SuperTrellis trellis = SuperTrellis::build(enc, mcs.puncture, mcs.order);
  return {mcs, std::move(enc), std::move(trellis)};
}

std::size_t Link::frame_steps(std::size_t n_b) const {
  const auto l = static_cast<std::size_t>(trellis.info_bits_per_step());
  const std::size_t raw = n_b + static_cast<std::size_t>(encoder.memory());
  return (raw + l - 1) / l * l;
}

std::size_t Link::frame_symbols(std::size_t n_b) const {
  return frame_steps(n_b) / static_cast<std::size_t>(trellis.info_bits_per_step()) *
         static_cast<std::size_t>(trellis.symbols_per_step());
}

}  // namespace adaptcc
