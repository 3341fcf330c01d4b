#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adaptcc/bound.hpp"
#include "adaptcc/constellation.hpp"
#include "adaptcc/context.hpp"
#include "adaptcc/trellis.hpp"

namespace adaptcc {

// Uniformly rescales the points so their mean energy equals e_s when it
// exceeds e_s; feasible sets are returned unchanged.
std::vector<Complex> project_energy(std::span<const Complex> points, double e_s);

// Interleaved (re, im) coordinates of M points.
using Position = std::vector<double>;
Position to_position(const Constellation& c);
std::vector<Complex> to_points(std::span<const double> position);

// BER bound of the projected constellation; divergent or singular bounds
// map to +inf.
double fitness(std::span<const double> position, const ChannelContext& ctx, const SuperTrellis& trellis);

struct PsoConfig {
  int swarm_size = 50;
  int iterations = 500;
  double c1 = 1.49;
  double c2 = 1.49;
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  std::uint64_t seed = 42;
  double e_s = 1.0;
  // Keep a moved particle only when it does not worsen its personal best;
  // false gives textbook PSO bookkeeping (always move, track the best).
  bool greedy = true;
  unsigned threads = 1;
  // Extra initial particles placed after the warm start (e.g. a stored
  // design); they replace random particles, not the warm start.
  std::vector<Position> seeds;

  void validate() const;
  double inertia(int iteration) const;
};

struct Particle {
  Position position;
  Position velocity;
  Position best_position;
  double best_fitness;
};

// Particle 0 is the Gray-labeled QAM with mean energy E_s; the rest are
// uniform in [-sqrt(3 E_s), sqrt(3 E_s)] per coordinate, projected onto the
// energy budget. Velocities are uniform in [-0.1, 0.1] sqrt(E_s).
// best_fitness is left at +inf; pso_optimize evaluates it.
std::vector<Particle> init_swarm(const PsoConfig& cfg, int order);

struct OptimizedConstellation {
  Constellation constellation;
  double fitness = 0.0;
  FadingOrder m = FadingOrder::nakagami(1);
  double snr_db = 0.0;
  std::vector<double> trace;  // global best after init and after each iteration
  double initial_fitness = 0.0;  // fitness of the QAM warm start
};

OptimizedConstellation pso_optimize(const PsoConfig& cfg, const ChannelContext& ctx, const SuperTrellis& trellis);

}  // namespace adaptcc
