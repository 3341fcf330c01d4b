#include "adaptcc/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adaptcc/adapt.hpp"
#include "adaptcc/errors.hpp"
#include "adaptcc/numfmt.hpp"
#include "adaptcc/shaper.hpp"
#include "json.hpp"

namespace adaptcc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<double> parse_snr_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + s + "' in SNR grid '" + text + "'");
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("SNR range must be start:end:step, got '" + text + "'");
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || b < a) throw ConfigError("SNR range needs start <= end and a positive step");
    const long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw ConfigError("empty SNR grid");
  return out;
}

namespace {

struct Options {
  std::string m = "2";
  std::string snr;
  std::vector<int> mcs;
  std::size_t nb = 920;
  std::uint64_t seed = 42;
  std::string store;
  std::string out;
  std::vector<int> tau;
  std::vector<double> target_ber;
  std::string source = "adaptive";
  std::string pb_source = "bound";
  std::uint64_t min_errors = 200;
  std::uint64_t max_frames = 20000;
  unsigned threads = 1;
  int pso_swarm = 50;
  int pso_iters = 500;
  bool pso_standard = false;
  std::string snr_range = "0:40";
  double resolution = 0.1;
};

json options_json(const std::string& command, const Options& o) {
  json j;
  j["command"] = command;
  j["m"] = o.m;
  j["snr"] = o.snr;
  j["mcs"] = o.mcs;
  j["nb"] = o.nb;
  j["seed"] = o.seed;
  j["store"] = o.store;
  j["tau"] = o.tau;
  j["target_ber"] = o.target_ber;
  j["source"] = o.source;
  j["pb_source"] = o.pb_source;
  j["min_errors"] = o.min_errors;
  j["max_frames"] = o.max_frames;
  j["pso"] = {{"swarm", o.pso_swarm}, {"iterations", o.pso_iters}, {"greedy", !o.pso_standard}};
  j["snr_range"] = o.snr_range;
  j["resolution_db"] = o.resolution;
  return j;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Session {
 public:
  Session(std::string command, const Options& o, std::ostream& out, std::ostream& err)
      : command_(std::move(command)), opts_(o), out_(out), err_(err) {
    manifest_["command"] = command_;
    manifest_["config"] = options_json(command_, o);
    manifest_["seed"] = o.seed;
    manifest_["tool_version"] = kToolVersion;
    manifest_["inputs"] = json::object();
    manifest_["warnings"] = json::array();
  }

  std::ostream& data() {
    if (opts_.out.empty()) return out_;
    if (!file_.is_open()) {
      file_.open(opts_.out, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::ios_base::failure("cannot open output file " + opts_.out);
    }
    return file_;
  }
  std::ostream& log() { return err_; }

  void warn(const std::string& msg) {
    err_ << "warning: " << msg << "\n";
    manifest_["warnings"].push_back(msg);
  }
  void input(const std::string& name, const fs::path& path) {
    manifest_["inputs"][name] = {{"path", path.string()}, {"fnv1a64", fnv1a_hex(read_file(path))}};
  }
  json& manifest() { return manifest_; }

  // Manifest goes next to the data file, or to the diagnostic stream when
  // data went to stdout.
  void finish() {
    if (file_.is_open()) file_.close();
    manifest_["timestamp"] = utc_timestamp();
    fs::path target;
    if (!opts_.out.empty()) target = opts_.out + ".manifest.json";
    else if (!opts_.store.empty() && command_ == "optimize") target = opts_.store + ".manifest.json";
    if (target.empty()) {
      err_ << "manifest: " << manifest_.dump() << "\n";
      return;
    }
    std::ofstream m(target, std::ios::binary | std::ios::trunc);
    m << manifest_.dump(2) << "\n";
  }

 private:
  std::string command_;
  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
  std::ofstream file_;
  json manifest_;
};

std::vector<McsEntry> resolve_mcs(const Options& o, std::vector<int> fallback) {
  const auto& ids = o.mcs.empty() ? fallback : o.mcs;
  std::vector<McsEntry> out;
  for (int id : ids) out.push_back(find_mcs(id));
  return out;
}

// Adaptive mode reads --store, or the bundled fixtures when none is given.
std::optional<LutStore> resolve_store(const Options& o, Session& s, bool required) {
  if (!o.store.empty() && o.store != "fixtures") {
    if (!fs::exists(o.store)) {
      if (required) throw MissingKeyError("LUT store " + o.store + " does not exist");
      return std::nullopt;
    }
    s.input("store", o.store);
    return LutStore::load(o.store);
  }
  s.manifest()["inputs"]["store"] = {{"path", "bundled:table2_fixtures"},
                                     {"fnv1a64", fnv1a_hex(fixture_store_text())}};
  return fixture_store();
}

int cmd_optimize(const Options& o, Session& s) {
  if (o.store.empty()) throw ConfigError("optimize needs --store");
  if (o.mcs.size() != 1) throw ConfigError("optimize needs exactly one --mcs");
  const FadingOrder m = FadingOrder::parse(o.m);
  const McsEntry& mcs = find_mcs(o.mcs.front());
  const Link link = Link::build(mcs);
  const auto grid = parse_snr_grid(o.snr);

  PsoConfig cfg;
  cfg.swarm_size = o.pso_swarm;
  cfg.iterations = o.pso_iters;
  cfg.seed = o.seed;
  cfg.greedy = !o.pso_standard;
  cfg.threads = o.threads;
  cfg.validate();
  const json pso_cfg = {{"swarm", cfg.swarm_size}, {"iterations", cfg.iterations}, {"c1", cfg.c1},
                        {"c2", cfg.c2},           {"w_start", cfg.inertia_start},  {"w_end", cfg.inertia_end},
                        {"greedy", cfg.greedy},   {"mcs", mcs.id},                 {"m", m.to_string()}};
  const std::string provenance = "pso:" + fnv1a_hex(pso_cfg.dump()) + ":seed=" + std::to_string(o.seed);

  LutStore store = fs::exists(o.store) ? LutStore::load(o.store) : LutStore{};
  auto& out = s.data();
  out << "snr_db,mcs,fitness,conventional_bound,gain_db\n";
  json written = json::array();
  for (double snr : grid) {
    const ChannelContext ctx = ChannelContext::from_snr_db(m, snr);
    const auto res = pso_optimize(cfg, ctx, link.trellis);
    if (!std::isfinite(res.fitness)) {
      s.warn("bound diverges at " + format_double(snr) + " dB for every particle; point skipped");
      continue;
    }
    const double conv = res.initial_fitness;
    const double gain = std::isfinite(conv) ? 10.0 * std::log10(conv / res.fitness) : std::numeric_limits<double>::infinity();
    LutRecord rec{{m, snr, mcs.id}, mcs.generators, mcs.puncture, res.constellation, res.fitness, provenance};
    store.upsert(rec);
    written.push_back(rec.key.to_string());
    out << format_double(snr) << ',' << mcs.id << ',' << format_double(res.fitness) << ','
        << format_double(conv) << ',' << format_double(gain) << '\n';
  }
  store.save(o.store);
  s.manifest()["records_written"] = written;
  s.manifest()["provenance"] = provenance;
  return kSuccess;
}

int cmd_bound_curve(const Options& o, Session& s) {
  const FadingOrder m = FadingOrder::parse(o.m);
  const auto src = parse_source(o.source);
  const auto grid = parse_snr_grid(o.snr);
  const auto store = src == ConstellationSource::adaptive ? resolve_store(o, s, true) : std::nullopt;
  auto& out = s.data();
  out << "snr_db,mcs,pb_source,pb,se,status\n";
  for (const auto& mcs : resolve_mcs(o, {1})) {
    const Link link = Link::build(mcs);
    for (double snr : grid) {
      const Constellation c = constellation_for(src, mcs, m, snr, store ? &*store : nullptr);
      const auto r = ber_upper_bound(link.trellis, c, ChannelContext::from_snr_db(m, snr));
      if (!r.finite()) s.warn("bound " + std::string(to_string(r.status)) + " at " + format_double(snr) + " dB, MCS-" + std::to_string(mcs.id));
      const double pb = r.finite() ? std::min(r.p_b, 1.0) : 1.0;
      out << format_double(snr) << ',' << mcs.id << ",bound," << format_double(r.p_b) << ','
          << format_double(spectral_efficiency(pb, mcs.order, mcs.rate().value(), o.nb)) << ','
          << to_string(r.status) << '\n';
    }
  }
  return kSuccess;
}

SimulationOptions sim_options(const Options& o) {
  SimulationOptions so;
  so.seed = o.seed;
  so.stop.min_errors = o.min_errors;
  so.stop.max_frames = o.max_frames;
  so.threads = o.threads;
  if (!o.tau.empty()) so.traceback = o.tau.front();
  return so;
}

int cmd_sim_curve(const Options& o, Session& s) {
  const FadingOrder m = FadingOrder::parse(o.m);
  const auto src = parse_source(o.source);
  const auto grid = parse_snr_grid(o.snr);
  const auto store = src == ConstellationSource::adaptive ? resolve_store(o, s, true) : std::nullopt;
  const SimulationOptions so = sim_options(o);
  auto& out = s.data();
  out << "snr_db,mcs,pb_source,pb,se,std_error,bit_errors,bits,frames\n";
  for (const auto& mcs : resolve_mcs(o, {1})) {
    const Link link = Link::build(mcs);
    for (double snr : grid) {
      const Constellation c = constellation_for(src, mcs, m, snr, store ? &*store : nullptr);
      const auto est = simulate_ber(link, c, ChannelContext::from_snr_db(m, snr), o.nb, so);
      out << format_double(snr) << ',' << mcs.id << ",sim," << format_double(est.ber) << ','
          << format_double(spectral_efficiency(est.ber, mcs.order, mcs.rate().value(), o.nb)) << ','
          << format_double(est.std_error) << ',' << est.bit_errors << ',' << est.bits << ',' << est.frames << '\n';
    }
  }
  return kSuccess;
}

int cmd_se_curve(const Options& o, Session& s) {
  const FadingOrder m = FadingOrder::parse(o.m);
  const auto src = parse_source(o.source);
  const auto grid = parse_snr_grid(o.snr);
  if (o.pb_source != "bound" && o.pb_source != "sim") throw ConfigError("--pb-source must be bound or sim");
  const auto store = src == ConstellationSource::adaptive ? resolve_store(o, s, true) : std::nullopt;
  const auto mcs_list = resolve_mcs(o, {1, 2, 3});
  if (src == ConstellationSource::adaptive) {
    for (const auto& mcs : mcs_list)
      if (store->records_for(m, mcs.id).empty())
        s.warn("no LUT designs for m=" + m.to_string() + ", MCS-" + std::to_string(mcs.id) + "; using Gray QAM");
  }
  const SimulationOptions so = sim_options(o);
  std::vector<Link> links;
  for (const auto& mcs : mcs_list) links.push_back(Link::build(mcs));

  auto& out = s.data();
  out << "snr_db,mcs,pb_source,pb,se,selected\n";
  for (double snr : grid) {
    std::vector<SeCurvePoint> pts;
    for (const auto& link : links) {
      const Constellation c = constellation_for(src, link.mcs, m, snr, store ? &*store : nullptr);
      SeCurvePoint pt;
      pt.snr_db = snr;
      pt.mcs = link.mcs.id;
      pt.pb_source = o.pb_source;
      pt.p_b = o.pb_source == "bound" ? bound_pb(link, c, m, snr)
                                      : simulate_ber(link, c, ChannelContext::from_snr_db(m, snr), o.nb, so).ber;
      pt.se = spectral_efficiency(pt.p_b, link.mcs.order, link.mcs.rate().value(), o.nb);
      pts.push_back(pt);
    }
    // Envelope: best SE, ties toward lower M then lower R.
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const auto& a = links[i].mcs;
      const auto& b = links[best].mcs;
      const bool more_robust = a.order < b.order || (a.order == b.order && a.rate() < b.rate());
      if (pts[i].se > pts[best].se + kSeTieTolerance ||
          (std::abs(pts[i].se - pts[best].se) <= kSeTieTolerance && more_robust))
        best = i;
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      out << format_double(snr) << ',' << pts[i].mcs << ',' << pts[i].pb_source << ',' << format_double(pts[i].p_b)
          << ',' << format_double(pts[i].se) << ',' << (i == best ? 1 : 0) << '\n';
    out << format_double(snr) << ",envelope," << pts[best].pb_source << ',' << format_double(pts[best].p_b) << ','
        << format_double(pts[best].se) << ',' << pts[best].mcs << '\n';
  }
  s.manifest()["se_formula"] = "log2(M)*R*(1-pb)^nb (printed form log2(M)*(1-(1-pb)^nb)*R not used)";
  return kSuccess;
}

int cmd_latency(const Options& o, Session& s) {
  const FadingOrder m = FadingOrder::parse(o.m);
  const auto src = parse_source(o.source);
  if (o.mcs.size() != 1) throw ConfigError("latency needs exactly one --mcs");
  if (o.tau.empty()) throw ConfigError("latency needs --tau");
  if (o.target_ber.empty()) throw ConfigError("latency needs --target-ber");
  const Link link = Link::build(find_mcs(o.mcs.front()));
  const auto store = src == ConstellationSource::adaptive ? resolve_store(o, s, true) : std::nullopt;

  LatencySearch search;
  std::vector<double> range;
  {
    const auto colon = o.snr_range.find(':');
    if (colon == std::string::npos) throw ConfigError("--snr-range must be lo:hi");
    range = parse_snr_grid(o.snr_range.substr(0, colon) + "," + o.snr_range.substr(colon + 1));
  }
  search.snr_lo_db = range[0];
  search.snr_hi_db = range[1];
  search.resolution_db = o.resolution;
  search.n_b = o.nb;
  search.sim = sim_options(o);
  search.sim.traceback.reset();

  const auto rows = latency_sweep(link, src, m, o.target_ber, o.tau, search, store ? &*store : nullptr);
  auto& out = s.data();
  out << "tau,target_ber,required_snr_db,attained,latency_bits,ber,std_error\n";
  for (const auto& r : rows) {
    if (!r.required_snr_db)
      s.warn("target " + format_double(r.target_ber) + " not reached by " + format_double(search.snr_hi_db) +
             " dB at tau=" + std::to_string(r.tau));
    out << r.tau << ',' << format_double(r.target_ber) << ','
        << (r.required_snr_db ? format_double(*r.required_snr_db) : std::string("nan")) << ','
        << (r.required_snr_db ? 1 : 0) << ',' << r.latency_bits << ',' << format_double(r.at_required.ber) << ','
        << format_double(r.at_required.std_error) << '\n';
  }
  s.manifest()["latency_units"] = "tau in super-steps; latency_bits = tau * information bits per super-step";
  return kSuccess;
}

int cmd_verify_fixtures(const Options& o, Session& s) {
  const LutStore store = fixture_store();
  auto& out = s.data();
  bool ok = true;
  auto check = [&](bool pass, const std::string& what) {
    out << (pass ? "PASS " : "FAIL ") << what << '\n';
    ok = ok && pass;
  };
  if (!store.conventional()) throw FixtureError("fixture store lacks the conventional reference");
  const Constellation& conv = *store.conventional();
  const Constellation qam = Constellation::gray_qam(16);
  bool grid = conv.order() == 16;
  for (int i = 0; grid && i < 16; ++i)
    grid = std::abs(conv[i].real() - qam[i].real()) < 5e-5 && std::abs(conv[i].imag() - qam[i].imag()) < 5e-5;
  check(grid, "conventional column equals unit-energy Gray 16-QAM to 4 decimals");
  check(satisfies_energy(conv, 1.0, 0.02), "conventional column mean energy " + format_double(conv.mean_energy()) + " <= 1.02");
  check(labels_are_bijective(conv), "conventional column labels are a bijection");
  check(store.records().size() == 4, "four optimized columns present");
  for (const auto& r : store.records()) {
    const std::string k = r.key.to_string();
    check(satisfies_energy(r.constellation, 1.0, 0.02),
          k + " mean energy " + format_double(r.constellation.mean_energy()) + " <= 1.02");
    check(labels_are_bijective(r.constellation), k + " labels are a bijection");
    const Link link = Link::build(find_mcs(r.key.mcs));
    const ChannelContext ctx = ChannelContext::from_snr_db(r.key.m, r.key.snr_db);
    const auto opt = ber_upper_bound(link.trellis, r.constellation, ctx);
    const auto ref = ber_upper_bound(link.trellis, conv, ctx);
    check(opt.finite() && (!ref.finite() || opt.p_b < ref.p_b),
          k + " bound " + format_double(opt.p_b) + " < conventional " + format_double(ref.p_b));
  }
  (void)o;
  return ok ? kSuccess : kFixtureFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SNR-adaptive constellation design for convolutionally coded links", "adaptcc"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--m", o.m, "Nakagami fading order (integer or inf)")->capture_default_str();
    c->add_option("--seed", o.seed, "random seed")->capture_default_str();
    c->add_option("--out", o.out, "data output file (default stdout)");
    c->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  };
  auto grid = [&](CLI::App* c) {
    c->add_option("--snr", o.snr, "SNR grid in dB: start:end:step or a,b,c")->required();
    c->add_option("--mcs", o.mcs, "MCS id(s)")->delimiter(',');
    c->add_option("--nb", o.nb, "information bits per frame")->capture_default_str();
    c->add_option("--store", o.store, "LUT store (adaptive mode; default: bundled fixtures)");
    c->add_option("--source", o.source, "adaptive | conventional")->capture_default_str();
  };
  auto sim = [&](CLI::App* c) {
    c->add_option("--min-errors", o.min_errors, "stop after this many bit errors")->capture_default_str();
    c->add_option("--max-frames", o.max_frames, "frame cap per point")->capture_default_str();
  };

  auto* optimize = app.add_subcommand("optimize", "design constellations with PSO and store them");
  common(optimize);
  grid(optimize);
  optimize->add_option("--pso-swarm", o.pso_swarm, "swarm size")->capture_default_str();
  optimize->add_option("--pso-iters", o.pso_iters, "iterations")->capture_default_str();
  optimize->add_flag("--pso-standard", o.pso_standard, "standard personal-best PSO instead of greedy acceptance");

  auto* bound_curve = app.add_subcommand("bound-curve", "analytical BER bound over an SNR grid");
  common(bound_curve);
  grid(bound_curve);

  auto* sim_curve = app.add_subcommand("sim-curve", "Monte-Carlo BER over an SNR grid");
  common(sim_curve);
  grid(sim_curve);
  sim(sim_curve);
  sim_curve->add_option("--tau", o.tau, "traceback window in super-steps (default: whole frame)");

  auto* se_curve = app.add_subcommand("se-curve", "spectral efficiency per MCS plus the adaptive envelope");
  common(se_curve);
  grid(se_curve);
  sim(se_curve);
  se_curve->add_option("--pb-source", o.pb_source, "bound | sim")->capture_default_str();

  auto* latency = app.add_subcommand("latency", "required SNR versus traceback window");
  common(latency);
  latency->add_option("--mcs", o.mcs, "MCS id")->delimiter(',');
  latency->add_option("--tau", o.tau, "traceback windows in super-steps")->delimiter(',');
  latency->add_option("--target-ber", o.target_ber, "target BERs")->delimiter(',');
  latency->add_option("--source", o.source, "adaptive | conventional")->capture_default_str();
  latency->add_option("--store", o.store, "LUT store (adaptive mode)");
  latency->add_option("--nb", o.nb, "information bits per frame")->capture_default_str();
  latency->add_option("--snr-range", o.snr_range, "search interval lo:hi in dB")->capture_default_str();
  latency->add_option("--resolution", o.resolution, "search resolution in dB")->capture_default_str();
  sim(latency);

  auto* verify = app.add_subcommand("verify-fixtures", "check the bundled Table II fixtures");
  verify->add_option("--out", o.out, "report file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Session session(name, o, out, err);
    int code = kSuccess;
    if (chosen == optimize) code = cmd_optimize(o, session);
    else if (chosen == bound_curve) code = cmd_bound_curve(o, session);
    else if (chosen == sim_curve) code = cmd_sim_curve(o, session);
    else if (chosen == se_curve) code = cmd_se_curve(o, session);
    else if (chosen == latency) code = cmd_latency(o, session);
    else if (chosen == verify) code = cmd_verify_fixtures(o, session);
    session.finish();
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const LutError& e) {
    err << "LUT error: " << e.what() << "\n";
    return kConfigError;
  } catch (const FixtureError& e) {
    err << "fixture error: " << e.what() << "\n";
    return kFixtureFailure;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace adaptcc::cli
