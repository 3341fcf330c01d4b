#include "adaptcc/context.hpp"

#include <charconv>
#include <cmath>

#include "adaptcc/errors.hpp"

namespace adaptcc {

FadingOrder FadingOrder::nakagami(int m) {
  if (m < 1) throw ConfigError("Nakagami m must be a positive integer");
  return FadingOrder(m);
}

FadingOrder FadingOrder::parse(std::string_view text) {
  if (text == "inf" || text == "awgn" || text == "AWGN") return awgn();
  int m = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), m);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError("fading order must be a positive integer or 'inf', got '" + std::string(text) + "'");
  return nakagami(m);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double ChannelContext::snr_db() const { return linear_to_db(snr()); }

void ChannelContext::validate() const {
  if (!(omega > 0) || !std::isfinite(omega)) throw ConfigError("omega must be positive");
  if (!(n0 > 0) || !std::isfinite(n0)) throw ConfigError("N0 must be positive");
  if (!(e_s > 0) || !std::isfinite(e_s)) throw ConfigError("E_s must be positive");
}

ChannelContext ChannelContext::from_snr_db(FadingOrder m, double snr_db, double omega, double e_s) {
  ChannelContext ctx{m, omega, omega * e_s / db_to_linear(snr_db), e_s};
  ctx.validate();
  return ctx;
}

}  // namespace adaptcc
