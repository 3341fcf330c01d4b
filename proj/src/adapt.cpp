#include "adaptcc/adapt.hpp"

#include <algorithm>
#include <cmath>

#include "adaptcc/errors.hpp"

namespace adaptcc {

double spectral_efficiency(double p_b, int order, double rate, std::size_t n_b) {
  if (n_b == 0) throw ConfigError("frame size must be positive");
  const double p = std::isnan(p_b) ? 1.0 : std::clamp(p_b, 0.0, 1.0);
  return std::log2(static_cast<double>(order)) * rate * std::pow(1.0 - p, static_cast<double>(n_b));
}

const LutRecord& select_record(FadingOrder m, double snr_db, int mcs, const LutStore& store) {
  const auto recs = store.records_for(m, mcs);
  if (recs.empty()) throw MissingKeyError("no LUT record for m=" + m.to_string() + ", mcs=" + std::to_string(mcs));
  const LutRecord* best = recs.front();
  for (const LutRecord* r : recs) {
    const double d = std::abs(r->key.snr_db - snr_db);
    const double bd = std::abs(best->key.snr_db - snr_db);
    if (d < bd || (d == bd && r->key.snr_db < best->key.snr_db)) best = r;
  }
  return *best;
}

Constellation select_constellation(FadingOrder m, double snr_db, int mcs, const LutStore& store) {
  return select_record(m, snr_db, mcs, store).constellation;
}

const char* to_string(ConstellationSource s) {
  return s == ConstellationSource::adaptive ? "adaptive" : "conventional";
}

ConstellationSource parse_source(const std::string& text) {
  if (text == "adaptive") return ConstellationSource::adaptive;
  if (text == "conventional") return ConstellationSource::conventional;
  throw ConfigError("constellation source must be 'adaptive' or 'conventional', got '" + text + "'");
}

Constellation constellation_for(ConstellationSource source, const McsEntry& mcs, FadingOrder m, double snr_db,
                                 const LutStore* store) {
  if (source == ConstellationSource::adaptive && store && !store->records_for(m, mcs.id).empty())
    return select_constellation(m, snr_db, mcs.id, *store);
  return Constellation::gray_qam(mcs.order);
}

double bound_pb(const Link& link, const Constellation& c, FadingOrder m, double snr_db) {
  const auto r = ber_upper_bound(link.trellis, c, ChannelContext::from_snr_db(m, snr_db));
  return r.finite() ? std::min(r.p_b, 1.0) : 1.0;
}

McsChoice select_mcs(FadingOrder m, double snr_db, const std::vector<McsEntry>& candidates, const LutStore* store,
                     std::size_t n_b, ConstellationSource source) {
  if (candidates.empty()) throw ConfigError("no candidate MCS given");
  std::vector<McsEntry> ordered = candidates;
  std::stable_sort(ordered.begin(), ordered.end(), [](const McsEntry& a, const McsEntry& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.rate() < b.rate();
  });
  McsChoice choice;
  for (const auto& mcs : ordered) {
    const Link link = Link::build(mcs);
    const Constellation c = constellation_for(source, mcs, m, snr_db, store);
    SeCurvePoint pt;
    pt.snr_db = snr_db;
    pt.mcs = mcs.id;
    pt.p_b = bound_pb(link, c, m, snr_db);
    pt.se = spectral_efficiency(pt.p_b, mcs.order, mcs.rate().value(), n_b);
    if (choice.candidates.empty() || pt.se > choice.point.se + kSeTieTolerance) {
      choice.mcs = mcs.id;
      choice.point = pt;
    }
    choice.candidates.push_back(pt);
  }
  return choice;
}

BerEstimate simulate_point(const Link& link, ConstellationSource source, FadingOrder m, double snr_db, int tau,
                           const LatencySearch& search, const LutStore* store) {
  const Constellation c = constellation_for(source, link.mcs, m, snr_db, store);
  SimulationOptions opts = search.sim;
  opts.traceback = tau;
  return simulate_ber(link, c, ChannelContext::from_snr_db(m, snr_db), search.n_b, opts);
}

std::vector<LatencyRow> latency_sweep(const Link& link, ConstellationSource source, FadingOrder m,
                                      const std::vector<double>& targets, const std::vector<int>& taus,
                                      const LatencySearch& search, const LutStore* store) {
  if (!(search.resolution_db > 0) || !(search.snr_hi_db > search.snr_lo_db))
    throw ConfigError("latency search needs snr_lo < snr_hi and a positive resolution");
  for (double t : targets)
    if (!(t > 0 && t < 0.5)) throw ConfigError("target BER must lie in (0, 0.5)");
  for (int tau : taus)
    if (tau < link.encoder.constraint_length())
      throw ConfigError("traceback window " + std::to_string(tau) + " is shorter than the constraint length");
  if (source == ConstellationSource::adaptive && (!store || store->records_for(m, link.mcs.id).empty()))
    throw MissingKeyError("adaptive latency sweep needs LUT records for m=" + m.to_string() +
                          ", mcs=" + std::to_string(link.mcs.id));

  std::vector<LatencyRow> rows;
  for (int tau : taus) {
    for (double target : targets) {
      LatencyRow row;
      row.tau = tau;
      row.latency_bits = static_cast<long>(tau) * link.trellis.info_bits_per_step();
      row.target_ber = target;
      // Probes sit on a lattice anchored at snr_lo so reruns and paired
      // sweeps visit identical SNRs.
      auto snr_at = [&](long i) { return search.snr_lo_db + static_cast<double>(i) * search.resolution_db; };
      auto probe = [&](long i) { return simulate_point(link, source, m, snr_at(i), tau, search, store); };
      long lo = 0;
      long hi = std::lround(std::ceil((search.snr_hi_db - search.snr_lo_db) / search.resolution_db - 1e-9));
      BerEstimate hi_est = probe(hi);
      if (hi_est.ber <= target) {
        const BerEstimate lo_est = probe(lo);
        if (lo_est.ber <= target) {
          hi = lo;
          hi_est = lo_est;
        }
        while (hi - lo > 1) {
          const long mid = lo + (hi - lo) / 2;
          const BerEstimate est = probe(mid);
          if (est.ber <= target) {
            hi = mid;
            hi_est = est;
          } else {
            lo = mid;
          }
        }
        row.required_snr_db = snr_at(hi);
        row.at_required = hi_est;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace adaptcc
