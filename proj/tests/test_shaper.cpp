#include <random>

#include "adaptcc/errors.hpp"
#include "adaptcc/lut.hpp"
#include "adaptcc/mcs.hpp"
#include "adaptcc/shaper.hpp"
#include "doctest.h"

using namespace adaptcc;

namespace {

double mean_energy(std::span<const Complex> pts) {
  double s = 0;
  for (const auto& p : pts) s += std::norm(p);
  return s / static_cast<double>(pts.size());
}

PsoConfig small_config(std::uint64_t seed = 42) {
  PsoConfig cfg;
  cfg.swarm_size = 12;
  cfg.iterations = 40;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("energy projection") {
  const Constellation q = Constellation::gray_qam(16);
  const auto same = project_energy(q.points(), 1.0);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(same[i] - q[i]) < 1e-15);

  const Constellation conv = *fixture_store().conventional();
  const auto conv_p = project_energy(conv.points(), 1.0);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(conv_p[i] - conv[i]) < 5e-5);

  const std::vector<Complex> two{{2, 0}, {-2, 0}};
  const auto one = project_energy(two, 1.0);
  CHECK(one[0].real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one[1].real() == doctest::Approx(-1.0).epsilon(1e-15));

  std::mt19937 gen(9);
  std::normal_distribution<double> nd(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> pts(4 << (trial % 3));
    for (auto& p : pts) p = {nd(gen), nd(gen)};
    const double es = 0.5 + (trial % 4);
    const auto a = project_energy(pts, es);
    CHECK(mean_energy(a) <= es * (1 + 1e-9));
    const auto b = project_energy(a, es);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * std::abs(a[i]) + 1e-300);
    // geometry preserved: a single common positive scale
    const double k = std::abs(a[0]) / std::abs(pts[0]);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - k * pts[i]) < 1e-12);
  }
  CHECK_THROWS_AS(project_energy(two, 0.0), ConfigError);
}

TEST_CASE("fitness edge cases") {
  const Link link = Link::build(find_mcs(1));
  const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), 14.0);
  const double qam = fitness(to_position(Constellation::gray_qam(16)), ctx, link.trellis);
  CHECK(std::isfinite(qam));
  CHECK(qam == ber_upper_bound(link.trellis, Constellation::gray_qam(16), ctx).p_b);

  const Position zeros(32, 0.0);
  CHECK(std::isinf(fitness(zeros, ctx, link.trellis)));
  CHECK(fitness(zeros, ctx, link.trellis) >= qam);

  const auto low = ChannelContext::from_snr_db(FadingOrder::nakagami(2), 2.0);
  CHECK(std::isinf(fitness(to_position(Constellation::gray_qam(16)), low, link.trellis)));

  // infeasible positions are scored after projection
  Position big = to_position(Constellation::gray_qam(16));
  for (auto& x : big) x *= 3;
  CHECK(fitness(big, ctx, link.trellis) == doctest::Approx(qam).epsilon(1e-12));
}

TEST_CASE("PSO configuration validation") {
  PsoConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.swarm_size = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = PsoConfig{};
  cfg.iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = PsoConfig{};
  cfg.c2 = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = PsoConfig{};
  cfg.inertia_end = 0.95;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = PsoConfig{};
  CHECK(cfg.inertia(1) == doctest::Approx(0.9));
  CHECK(cfg.inertia(cfg.iterations) == doctest::Approx(0.4));

  const Link link = Link::build(find_mcs(1));
  PsoConfig bad;
  bad.swarm_size = 1;
  CHECK_THROWS_AS(pso_optimize(bad, ChannelContext::from_snr_db(FadingOrder::nakagami(2), 12), link.trellis),
                  ConfigError);
}

TEST_CASE("swarm initialisation") {
  PsoConfig cfg;
  cfg.e_s = 1.0;
  const auto swarm = init_swarm(cfg, 16);
  REQUIRE(swarm.size() == 50);
  const Constellation conv = *fixture_store().conventional();
  const auto p0 = to_points(swarm[0].position);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(p0[i] - conv[i]) < 5e-5);
  for (const auto& p : swarm) {
    REQUIRE(p.position.size() == 32);
    CHECK(mean_energy(to_points(p.position)) <= 1.0 + 1e-9);
    for (double v : p.velocity) CHECK(std::abs(v) <= 0.1);
  }
  const auto again = init_swarm(cfg, 16);
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    CHECK(again[i].position == swarm[i].position);
    CHECK(again[i].velocity == swarm[i].velocity);
  }
  cfg.seed = 43;
  CHECK(init_swarm(cfg, 16)[1].position != swarm[1].position);

  cfg.e_s = 4.0;
  const auto scaled = init_swarm(cfg, 16);
  CHECK(mean_energy(to_points(scaled[0].position)) == doctest::Approx(4.0).epsilon(1e-12));
  for (const auto& p : scaled) CHECK(mean_energy(to_points(p.position)) <= 4.0 * (1 + 1e-9));
}

TEST_CASE("PSO invariants on short runs") {
  const Link link = Link::build(find_mcs(1));
  for (double snr : {12.0, 16.0}) {
    const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), snr);
    const auto cfg = small_config();
    const auto r = pso_optimize(cfg, ctx, link.trellis);
    REQUIRE(r.trace.size() == static_cast<std::size_t>(cfg.iterations) + 1);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    CHECK(r.fitness == r.trace.back());
    CHECK(r.fitness <= r.initial_fitness);
    CHECK(r.initial_fitness == ber_upper_bound(link.trellis, Constellation::gray_qam(16), ctx).p_b);
    CHECK(r.constellation.mean_energy() <= 1.0 + 1e-9);
    CHECK(r.fitness == doctest::Approx(ber_upper_bound(link.trellis, r.constellation, ctx).p_b).epsilon(1e-12));
    CHECK(r.snr_db == doctest::Approx(snr));

    const auto again = pso_optimize(cfg, ctx, link.trellis);
    CHECK(again.constellation == r.constellation);
    CHECK(again.trace == r.trace);

    auto threaded = cfg;
    threaded.threads = 4;
    const auto t4 = pso_optimize(threaded, ctx, link.trellis);
    CHECK(t4.constellation == r.constellation);
    CHECK(t4.trace == r.trace);

    auto standard = cfg;
    standard.greedy = false;
    const auto s = pso_optimize(standard, ctx, link.trellis);
    for (std::size_t i = 1; i < s.trace.size(); ++i) CHECK(s.trace[i] <= s.trace[i - 1]);
    CHECK(s.fitness <= s.initial_fitness);
  }
}

TEST_CASE("seeded swarm never returns worse than its seed") {
  const LutStore store = fixture_store();
  const Link link = Link::build(find_mcs(1));
  for (double snr : {12.0, 18.0}) {
    const auto& rec = store.get({FadingOrder::nakagami(2), snr, 1});
    const auto ctx = ChannelContext::from_snr_db(FadingOrder::nakagami(2), snr);
    auto cfg = small_config(7);
    cfg.seeds.push_back(to_position(rec.constellation));
    const auto r = pso_optimize(cfg, ctx, link.trellis);
    CHECK(r.fitness <= fitness(to_position(rec.constellation), ctx, link.trellis));
  }
}

TEST_CASE("scale consistency") {
  const Link link = Link::build(find_mcs(2));
  for (double snr : {14.0, 20.0}) {
    auto cfg = small_config(3);
    const auto r1 = pso_optimize(cfg, ChannelContext::from_snr_db(FadingOrder::nakagami(2), snr), link.trellis);
    cfg.e_s = 4.0;
    const auto r4 =
        pso_optimize(cfg, ChannelContext::from_snr_db(FadingOrder::nakagami(2), snr, 1.0, 4.0), link.trellis);
    CHECK(std::abs(r1.fitness - r4.fitness) <= 1e-6 * r1.fitness);
    CHECK(r4.constellation.mean_energy() <= 4.0 * (1 + 1e-9));
  }
  PsoConfig mismatch = small_config();
  mismatch.e_s = 2.0;
  CHECK_THROWS_AS(pso_optimize(mismatch, ChannelContext::from_snr_db(FadingOrder::nakagami(2), 12), link.trellis),
                  ConfigError);
}
