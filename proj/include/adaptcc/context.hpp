#pragma once

#include <string>
#include <string_view>

namespace adaptcc {

// Nakagami-m fading order: a positive integer, or the AWGN limit m -> inf.
class FadingOrder {
 public:
  static FadingOrder nakagami(int m);
  static FadingOrder awgn() { return FadingOrder(0); }
  // Accepts a positive integer, "inf" or "awgn".
  static FadingOrder parse(std::string_view text);

  bool is_awgn() const { return m_ == 0; }
  int m() const { return m_; }
  std::string to_string() const { return is_awgn() ? "inf" : std::to_string(m_); }

  friend bool operator==(const FadingOrder&, const FadingOrder&) = default;
  friend auto operator<=>(const FadingOrder&, const FadingOrder&) = default;

 private:
  explicit FadingOrder(int m) : m_(m) {}
  int m_;
};

struct ChannelContext {
  FadingOrder m = FadingOrder::nakagami(1);
  double omega = 1.0;  // average fading power
  double n0 = 1.0;     // noise variance, N0/2 per real dimension
  double e_s = 1.0;    // average symbol energy budget

  // Average received SNR, Omega * E_s / N0.
  double snr() const { return omega * e_s / n0; }
  double snr_db() const;
  void validate() const;

  static ChannelContext from_snr_db(FadingOrder m, double snr_db, double omega = 1.0, double e_s = 1.0);
};

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace adaptcc
