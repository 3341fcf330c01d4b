#include "adaptcc/channel.hpp"

#include <cmath>

#include "adaptcc/errors.hpp"
#include "adaptcc/parallel.hpp"

namespace adaptcc {

double nakagami_gain(const ChannelContext& ctx, CounterRng& rng) {
  if (ctx.m.is_awgn()) return std::sqrt(ctx.omega);
  double g = 0.0;
  for (int j = 0; j < ctx.m.m(); ++j) g += rng.exponential();
  return std::sqrt(g * ctx.omega / ctx.m.m());
}

Frame transmit_frame(const Bits& info, const Link& link, const Constellation& constellation,
                     const ChannelContext& ctx, CounterRng& rng) {
  ctx.validate();
  if (constellation.order() != link.mcs.order)
    throw ConfigError("constellation order " + std::to_string(constellation.order()) + " does not match " +
                      link.mcs.describe());
  Frame f;
  f.info = info;
  Bits padded = info;
  padded.resize(link.frame_steps(info.size()), 0);
  Bits coded = link.encoder.encode(padded, false);
  f.coded = link.mcs.puncture ? puncture(coded, *link.mcs.puncture) : std::move(coded);
  f.symbols = map_symbols(f.coded, constellation);

  const double sigma = std::sqrt(ctx.n0 / 2.0);
  f.gains.resize(f.symbols.size());
  f.received.resize(f.symbols.size());
  for (std::size_t i = 0; i < f.symbols.size(); ++i) {
    const double h = nakagami_gain(ctx, rng);
    const double nr = rng.normal();
    const double ni = rng.normal();
    f.gains[i] = h;
    f.received[i] = h * f.symbols[i] + sigma * Complex(nr, ni);
  }
  return f;
}

BerEstimate simulate_ber(const Link& link, const Constellation& constellation, const ChannelContext& ctx,
                         std::size_t n_b, const SimulationOptions& options) {
  const StopRule& stop = options.stop;
  if (stop.max_frames == 0) throw ConfigError("max_frames must be positive");
  if (n_b == 0) throw ConfigError("frame size must be positive");
  ctx.validate();

  DecoderConfig dec;
  if (options.traceback) dec.traceback = *options.traceback;
  dec.info_bits = n_b;
  dec.validate();

  const std::uint64_t batch = std::max<std::uint64_t>(stop.batch, 1);
  std::vector<std::uint64_t> errors;
  BerEstimate est;
  for (std::uint64_t first = 0; first < stop.max_frames; first += batch) {
    const std::uint64_t count = std::min(batch, stop.max_frames - first);
    errors.assign(count, 0);
    parallel_for(count, options.threads, [&](std::size_t k) {
      CounterRng rng(options.seed, first + k);
      Bits info(n_b);
      for (auto& b : info) b = static_cast<std::uint8_t>(rng.bit());
      const Frame f = transmit_frame(info, link, constellation, ctx, rng);
      const Bits decoded = viterbi_decode(f.received, f.gains, constellation, link.trellis, dec);
      std::uint64_t e = 0;
      for (std::size_t i = 0; i < n_b; ++i) e += decoded[i] != info[i];
      errors[k] = e;
    });
    bool done = false;
    for (std::uint64_t k = 0; k < count && !done; ++k) {
      est.bit_errors += errors[k];
      est.frames += 1;
      done = est.bit_errors >= stop.min_errors;
    }
    if (done) break;
  }
  est.bits = est.frames * n_b;
  est.ber = static_cast<double>(est.bit_errors) / static_cast<double>(est.bits);
  est.std_error = std::sqrt(est.ber * (1.0 - est.ber) / static_cast<double>(est.bits));
  return est;
}

}  // namespace adaptcc
