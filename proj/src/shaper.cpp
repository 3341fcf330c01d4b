#include "adaptcc/shaper.hpp"

#include <cmath>
#include <limits>

#include "adaptcc/errors.hpp"
#include "adaptcc/parallel.hpp"
#include "adaptcc/rng.hpp"

namespace adaptcc {

std::vector<Complex> project_energy(std::span<const Complex> points, double e_s) {
  if (!(e_s > 0)) throw ConfigError("energy budget must be positive");
  if (points.empty()) throw ConfigError("cannot project an empty point set");
  double mean = 0.0;
  for (const auto& p : points) mean += std::norm(p);
  mean /= static_cast<double>(points.size());
  std::vector<Complex> out(points.begin(), points.end());
  if (mean <= e_s) return out;
  const double scale = std::sqrt(e_s / mean);
  for (auto& p : out) p *= scale;
  return out;
}

Position to_position(const Constellation& c) {
  Position x;
  x.reserve(2 * c.points().size());
  for (const auto& p : c.points()) {
    x.push_back(p.real());
    x.push_back(p.imag());
  }
  return x;
}

std::vector<Complex> to_points(std::span<const double> position) {
  if (position.size() % 2 != 0) throw ConfigError("position length must be even");
  std::vector<Complex> pts(position.size() / 2);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {position[2 * i], position[2 * i + 1]};
  return pts;
}

double fitness(std::span<const double> position, const ChannelContext& ctx, const SuperTrellis& trellis) {
  const auto pts = project_energy(to_points(position), ctx.e_s);
  for (const auto& p : pts)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return std::numeric_limits<double>::infinity();
  const BoundResult r = ber_upper_bound(trellis, Constellation(pts), ctx);
  return r.finite() ? r.p_b : std::numeric_limits<double>::infinity();
}

void PsoConfig::validate() const {
  if (swarm_size < 2) throw ConfigError("swarm size must be at least 2");
  if (iterations < 1) throw ConfigError("iteration count must be at least 1");
  if (!(c1 > 0) || !(c2 > 0)) throw ConfigError("acceleration weights must be positive");
  if (!(inertia_end > 0) || !(inertia_end <= inertia_start)) throw ConfigError("inertia must satisfy 0 < end <= start");
  if (!(e_s > 0)) throw ConfigError("energy budget must be positive");
  if (seeds.size() + 1 > static_cast<std::size_t>(swarm_size)) throw ConfigError("more seed particles than swarm slots");
}

double PsoConfig::inertia(int iteration) const {
  if (iterations <= 1) return inertia_start;
  const double f = static_cast<double>(iteration - 1) / static_cast<double>(iterations - 1);
  return inertia_start + (inertia_end - inertia_start) * f;
}

namespace {

constexpr std::uint64_t kInitStream = 0xFFFFFFFFull;

Position projected(const Position& x, double e_s) {
  return to_position(Constellation(project_energy(to_points(x), e_s)));
}

}  // namespace

std::vector<Particle> init_swarm(const PsoConfig& cfg, int order) {
  cfg.validate();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t dim = 2 * static_cast<std::size_t>(order);
  const double span = std::sqrt(3.0 * cfg.e_s);
  const double vspan = 0.1 * std::sqrt(cfg.e_s);

  std::vector<Particle> swarm(cfg.swarm_size);
  for (int i = 0; i < cfg.swarm_size; ++i) {
    CounterRng rng(cfg.seed, stream_id(kInitStream, static_cast<std::uint64_t>(i)));
    Particle& p = swarm[i];
    p.position.resize(dim);
    for (auto& x : p.position) x = rng.uniform(-span, span);
    p.velocity.resize(dim);
    for (auto& v : p.velocity) v = rng.uniform(-vspan, vspan);
    if (i == 0) {
      p.position = to_position(Constellation::gray_qam(order, cfg.e_s));
    } else if (static_cast<std::size_t>(i) <= cfg.seeds.size()) {
      if (cfg.seeds[i - 1].size() != dim) throw ConfigError("seed particle has the wrong dimension");
      p.position = cfg.seeds[i - 1];
    }
    p.position = projected(p.position, cfg.e_s);
    p.best_position = p.position;
    p.best_fitness = kInf;
  }
  return swarm;
}

OptimizedConstellation pso_optimize(const PsoConfig& cfg, const ChannelContext& ctx, const SuperTrellis& trellis) {
  cfg.validate();
  ctx.validate();
  if (std::abs(cfg.e_s - ctx.e_s) > 1e-12 * ctx.e_s) throw ConfigError("PSO energy budget differs from the channel E_s");
  const int order = trellis.order();
  auto swarm = init_swarm(cfg, order);
  const std::size_t n = swarm.size();
  const std::size_t dim = swarm.front().position.size();

  std::vector<double> cand_fitness(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) { cand_fitness[i] = fitness(swarm[i].position, ctx, trellis); });
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    swarm[i].best_fitness = cand_fitness[i];
    if (cand_fitness[i] < swarm[best].best_fitness) best = i;
  }

  OptimizedConstellation out;
  out.initial_fitness = swarm[0].best_fitness;
  out.trace.push_back(swarm[best].best_fitness);

  std::vector<Position> candidates(n);
  for (int it = 1; it <= cfg.iterations; ++it) {
    const double w = cfg.inertia(it);
    const Position global = swarm[best].best_position;
    for (std::size_t i = 0; i < n; ++i) {
      CounterRng rng(cfg.seed, stream_id(static_cast<std::uint64_t>(it), i));
      Particle& p = swarm[i];
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        p.velocity[d] = w * p.velocity[d] + r1 * cfg.c1 * (p.best_position[d] - p.position[d]) +
                        r2 * cfg.c2 * (global[d] - p.position[d]);
      }
      Position x(dim);
      for (std::size_t d = 0; d < dim; ++d) x[d] = p.position[d] + p.velocity[d];
      candidates[i] = projected(x, cfg.e_s);
    }
    parallel_for(n, cfg.threads, [&](std::size_t i) { cand_fitness[i] = fitness(candidates[i], ctx, trellis); });
    for (std::size_t i = 0; i < n; ++i) {
      Particle& p = swarm[i];
      const bool improves = cand_fitness[i] <= p.best_fitness;
      if (cfg.greedy) {
        if (!improves) continue;
        p.position = candidates[i];
      } else {
        p.position = candidates[i];
        if (!improves) continue;
      }
      p.best_position = p.position;
      p.best_fitness = cand_fitness[i];
    }
    for (std::size_t i = 0; i < n; ++i)
      if (swarm[i].best_fitness < swarm[best].best_fitness) best = i;
    out.trace.push_back(swarm[best].best_fitness);
  }

  out.constellation = Constellation(to_points(swarm[best].best_position));
  out.fitness = swarm[best].best_fitness;
  out.m = ctx.m;
  out.snr_db = ctx.snr_db();
  return out;
}

}  // namespace adaptcc
