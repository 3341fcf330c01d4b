#include <cmath>

#include "adaptcc/bound.hpp"
#include "adaptcc/channel.hpp"
#include "adaptcc/errors.hpp"
#include "adaptcc/lut.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adaptcc;

TEST_CASE("Philox4x32-10 known answers") {
  using C = PhiloxCounter;
  using K = PhiloxKey;
  CHECK(philox4x32_10(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter RNG streams") {
  CounterRng a(5, 1), b(5, 1), c(5, 2), d(6, 1);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    differs_c = differs_c || x != c.next_u32();
    differs_d = differs_d || x != d.next_u32();
  }
  CHECK(differs_c);
  CHECK(differs_d);

  CounterRng u(1, 0);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    const double z = u.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 4 / std::sqrt(n));
  CHECK(std::abs(sum2 / n - 1) < 4 * std::sqrt(2.0 / n));
  CHECK(stream_id(1, 2, 3) == stream_id(1, 2, 3));
  CHECK(stream_id(1, 2, 3) != stream_id(1, 3, 2));
}

TEST_CASE("Nakagami gain moments") {
  const int n = 1000000;
  for (int m : {1, 2, 4}) {
    for (double omega : {1.0, 2.5}) {
      ChannelContext ctx;
      ctx.m = FadingOrder::nakagami(m);
      ctx.omega = omega;
      CounterRng rng(123, static_cast<std::uint64_t>(m * 10) + static_cast<std::uint64_t>(omega * 2));
      double s2 = 0, s4 = 0, s6 = 0, s8 = 0;
      for (int i = 0; i < n; ++i) {
        const double h = nakagami_gain(ctx, rng);
        REQUIRE(h >= 0.0);
        const double g = h * h;
        s2 += g;
        s4 += g * g;
        s6 += g * g * g;
        s8 += g * g * g * g;
      }
      const double b = s2 / n, a = s4 / n;
      const double var2 = s4 / n - b * b, var4 = s8 / n - a * a, cov = s6 / n - a * b;
      CHECK(std::abs(b - omega) < 4 * std::sqrt(var2 / n));
      const double ratio = a / (b * b);
      const double var_ratio =
          (var4 / std::pow(b, 4) + 4 * a * a * var2 / std::pow(b, 6) - 4 * a * cov / std::pow(b, 5)) / n;
      MESSAGE("m=" << m << " omega=" << omega << " E[h^2]=" << b << " ratio=" << ratio);
      CHECK(std::abs(ratio - (m + 1.0) / m) < 4 * std::sqrt(var_ratio));
    }
  }
  ChannelContext awgn;
  awgn.m = FadingOrder::awgn();
  CounterRng rng(1, 1);
  for (int i = 0; i < 100; ++i) CHECK(nakagami_gain(awgn, rng) == 1.0);
  awgn.omega = 4.0;
  CHECK(nakagami_gain(awgn, rng) == 2.0);
}

TEST_CASE("frame transmission") {
  const Link link = Link::build(find_mcs(2));
  const Constellation c = Constellation::gray_qam(16);
  Bits info(920);
  CounterRng bits(3, 0);
  for (auto& b : info) b = static_cast<std::uint8_t>(bits.bit());

  auto quiet = ChannelContext::from_snr_db(FadingOrder::nakagami(2), 0.0);
  quiet.n0 = 1e-40;
  CounterRng r1(1, 7);
  const Frame f = transmit_frame(info, link, c, quiet, r1);
  CHECK(f.info == info);
  CHECK(f.symbols.size() == link.frame_symbols(920));
  CHECK(f.gains.size() == f.symbols.size());
  CHECK(f.received.size() == f.symbols.size());
  CHECK(f.coded.size() == f.symbols.size() * 4);
  const oracle::LinkSpec spec{{link.mcs.generators}, link.mcs.puncture->rows(), 3};
  CHECK(oracle::transmit_symbols(spec, info, link.frame_steps(920), c) == f.symbols);
  for (std::size_t k = 0; k < f.symbols.size(); ++k) CHECK(std::abs(f.received[k] - f.gains[k] * f.symbols[k]) < 1e-15);

  CounterRng r2(1, 7);
  const Frame g = transmit_frame(info, link, c, quiet, r2);
  CHECK(g.received == f.received);
  CHECK(g.gains == f.gains);

  CHECK_THROWS_AS(
      [&] {
        CounterRng r3(1, 8);
        transmit_frame(info, link, Constellation::gray_qam(64), quiet, r3);
      }(),
      ConfigError);
}

TEST_CASE("empirical SNR matches the context") {
  const Link link = Link::build(find_mcs(1));
  const Constellation c = Constellation::gray_qam(16);
  for (double snr_db : {5.0, 10.0, 20.0}) {
    const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), snr_db);
    double sig = 0, noise = 0;
    std::size_t count = 0;
    for (std::uint64_t frame = 0; count < 100000; ++frame) {
      CounterRng rng(77, frame);
      Bits info(920);
      for (auto& b : info) b = static_cast<std::uint8_t>(rng.bit());
      const Frame f = transmit_frame(info, link, c, ctx, rng);
      for (std::size_t k = 0; k < f.symbols.size(); ++k) {
        const Complex hs = f.gains[k] * f.symbols[k];
        sig += std::norm(hs);
        noise += std::norm(f.received[k] - hs);
      }
      count += f.symbols.size();
    }
    CHECK(std::abs(sig / noise / ctx.snr() - 1) < 0.05);
  }
}

TEST_CASE("uncoded BPSK over Rayleigh matches closed form") {
  const Link link = Link::build(uncoded_bpsk());
  const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(1), 10.0);
  SimulationOptions opt;
  opt.stop.min_errors = 20000;
  opt.stop.max_frames = 100000;
  opt.seed = 11;
  opt.threads = 4;
  const auto est = simulate_ber(link, Constellation::gray_qam(2), ctx, 1000, opt);
  const double exact = oracle::rayleigh_bpsk_ber(10.0);
  MESSAGE("simulated " << est.ber << " +- " << est.std_error << ", closed form " << exact);
  CHECK(exact == doctest::Approx(0.02327).epsilon(1e-3));
  CHECK(std::abs(est.ber - exact) <= 3 * est.std_error);
  CHECK(est.std_error == doctest::Approx(std::sqrt(est.ber * (1 - est.ber) / est.bits)));
  CHECK(est.bits == est.frames * 1000);
}

TEST_CASE("simulation determinism and stopping") {
  const Link link = Link::build(find_mcs(1));
  const Constellation c = Constellation::gray_qam(16);
  const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), 10.0);
  SimulationOptions opt;
  opt.stop.min_errors = 300;
  opt.seed = 5;
  const auto a = simulate_ber(link, c, ctx, 920, opt);
  opt.threads = 4;
  const auto b = simulate_ber(link, c, ctx, 920, opt);
  opt.stop.batch = 7;
  const auto d = simulate_ber(link, c, ctx, 920, opt);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.frames == b.frames);
  CHECK(a.ber == b.ber);
  CHECK(a.bit_errors == d.bit_errors);
  CHECK(a.frames == d.frames);
  CHECK(a.bit_errors >= 300);

  opt.seed = 6;
  CHECK(simulate_ber(link, c, ctx, 920, opt).bit_errors != a.bit_errors);

  SimulationOptions capped;
  capped.stop.max_frames = 25;
  const auto quiet = simulate_ber(link, c, ChannelContext::from_snr_db(FadingOrder::nakagami(2), 200.0), 920, capped);
  CHECK(quiet.bit_errors == 0);
  CHECK(quiet.frames == 25);
  CHECK(quiet.ber == 0.0);

  capped.stop.max_frames = 0;
  CHECK_THROWS_AS(simulate_ber(link, c, ctx, 920, capped), ConfigError);
}

TEST_CASE("simulated BER is non-increasing in SNR and below the bound") {
  const Link link = Link::build(find_mcs(1));
  const LutStore store = fixture_store();
  const Constellation chi12 = store.get({FadingOrder::nakagami(2), 12.0, 1}).constellation;
  const Constellation qam = Constellation::gray_qam(16);
  SimulationOptions opt;
  opt.stop.min_errors = 200;
  opt.threads = 4;
  BerEstimate prev;
  bool first = true;
  for (double snr : {8.0, 10.0, 12.0, 14.0}) {
    const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), snr);
    const auto est = simulate_ber(link, qam, ctx, 920, opt);
    if (!first) CHECK(est.ber <= prev.ber + 3 * std::hypot(est.std_error, prev.std_error));
    const auto bound = ber_upper_bound(link.trellis, qam, ctx);
    if (bound.finite() && bound.p_b <= 0.5) CHECK(est.ber <= bound.p_b + 3 * est.std_error);
    prev = est;
    first = false;
  }
  const auto ctx12 = ChannelContext::from_snr_db(FadingOrder::nakagami(2), 12.0);
  const auto est = simulate_ber(link, chi12, ctx12, 920, opt);
  CHECK(est.ber <= ber_upper_bound(link.trellis, chi12, ctx12).p_b + 3 * est.std_error);
}

TEST_CASE("full-frame traceback matches explicit window equal to frame length") {
  const Link link = Link::build(find_mcs(1));
  const Constellation c = Constellation::gray_qam(16);
  const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), 10.0);
  SimulationOptions opt;
  opt.stop.min_errors = 100;
  const auto full = simulate_ber(link, c, ctx, 920, opt);
  opt.traceback = static_cast<int>(link.frame_steps(920) / 2);
  const auto windowed = simulate_ber(link, c, ctx, 920, opt);
  CHECK(windowed.bit_errors == full.bit_errors);
  CHECK(windowed.frames == full.frames);
}
