#include "adaptcc/lut.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

#include "adaptcc/errors.hpp"
#include "adaptcc/numfmt.hpp"

namespace adaptcc {

using nlohmann::json;

std::string LutKey::to_string() const {
  return "(m=" + m.to_string() + ", snr=" + format_double(snr_db) + " dB, mcs=" + std::to_string(mcs) + ")";
}

namespace {

constexpr const char* kFormat = "adaptcc-constellation-lut";

json points_to_json(const Constellation& c) {
  json pts = json::array();
  for (const auto& p : c.points()) pts.push_back({p.real(), p.imag()});
  return pts;
}

Constellation points_from_json(const json& j) {
  if (!j.is_array()) throw LutError("points must be an array");
  std::vector<Complex> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw LutError("each point must be a [re, im] pair");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  try {
    return Constellation(std::move(pts));
  } catch (const ConfigError& e) {
    throw LutError(e.what());
  }
}

json record_to_json(const LutRecord& r) {
  json j;
  j["m"] = r.key.m.is_awgn() ? json("inf") : json(r.key.m.m());
  j["snr_db"] = r.key.snr_db;
  j["mcs"] = r.key.mcs;
  j["generators"] = r.generators;
  j["puncture"] = r.puncture ? json(r.puncture->rows()) : json(nullptr);
  j["points"] = points_to_json(r.constellation);
  j["bound"] = r.bound ? json(*r.bound) : json(nullptr);
  j["provenance"] = r.provenance;
  return j;
}

LutRecord record_from_json(const json& j) {
  try {
    LutRecord r;
    const json& m = j.at("m");
    r.key.m = m.is_string() ? FadingOrder::parse(m.get<std::string>()) : FadingOrder::nakagami(m.get<int>());
    r.key.snr_db = j.at("snr_db").get<double>();
    r.key.mcs = j.at("mcs").get<int>();
    r.generators = j.at("generators").get<std::vector<unsigned>>();
    if (!j.at("puncture").is_null())
      r.puncture = PuncturePattern::from_rows(j.at("puncture").get<std::vector<std::vector<std::uint8_t>>>());
    r.constellation = points_from_json(j.at("points"));
    if (!j.at("bound").is_null()) r.bound = j.at("bound").get<double>();
    r.provenance = j.at("provenance").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw LutError(std::string("malformed LUT record: ") + e.what());
  } catch (const ConfigError& e) {
    throw LutError(std::string("malformed LUT record: ") + e.what());
  }
}

}  // namespace

LutStore LutStore::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LutError(std::string("LUT store is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kFormat) throw LutError("not a constellation LUT document");
  if (doc.value("version", 0) != kVersion) throw LutError("unsupported LUT version");
  if (!doc.contains("records") || !doc["records"].is_array()) throw LutError("LUT document has no records array");
  LutStore store;
  for (const auto& r : doc["records"]) {
    LutRecord rec = record_from_json(r);
    if (store.find(rec.key)) throw LutError("duplicate LUT key " + rec.key.to_string());
    store.records_.push_back(std::move(rec));
  }
  if (doc.contains("reference") && doc["reference"].contains("conventional")) {
    const json& c = doc["reference"]["conventional"];
    store.conventional_ = points_from_json(c.at("points"));
    store.conventional_mcs_ = c.value("mcs", std::vector<int>{});
  }
  return store;
}

LutStore LutStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LutError("cannot open LUT store " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string LutStore::dump() const {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["records"] = json::array();
  for (const auto& r : records_) doc["records"].push_back(record_to_json(r));
  if (conventional_) {
    doc["reference"]["conventional"] = {{"modulation_order", conventional_->order()},
                                        {"mcs", conventional_mcs_},
                                        {"points", points_to_json(*conventional_)},
                                        {"provenance", "paper-table-2"}};
  }
  return doc.dump(2) + "\n";
}

void LutStore::save(const std::filesystem::path& path) const {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LutError("cannot write LUT store " + path.string());
    out << dump();
  }
  std::filesystem::rename(tmp, path);
}

void LutStore::upsert(LutRecord record) {
  for (auto& r : records_)
    if (r.key == record.key) {
      r = std::move(record);
      return;
    }
  records_.push_back(std::move(record));
}

const LutRecord* LutStore::find(const LutKey& key) const {
  for (const auto& r : records_)
    if (r.key == key) return &r;
  return nullptr;
}

const LutRecord& LutStore::get(const LutKey& key) const {
  if (const LutRecord* r = find(key)) return *r;
  throw MissingKeyError("no LUT record for " + key.to_string());
}

std::vector<const LutRecord*> LutStore::records_for(FadingOrder m, int mcs) const {
  std::vector<const LutRecord*> out;
  for (const auto& r : records_)
    if (r.key.m == m && r.key.mcs == mcs) out.push_back(&r);
  return out;
}

void store_lut(const LutRecord& record, const std::filesystem::path& path) {
  LutStore store = std::filesystem::exists(path) ? LutStore::load(path) : LutStore{};
  store.upsert(record);
  store.save(path);
}

LutRecord load_lut(const std::filesystem::path& path, const LutKey& key) { return LutStore::load(path).get(key); }

LutStore fixture_store() { return LutStore::parse(fixture_store_text()); }

bool satisfies_energy(const Constellation& c, double e_s, double tolerance) {
  return c.mean_energy() <= e_s * (1.0 + tolerance);
}

bool labels_are_bijective(const Constellation& c) {
  const auto& p = c.points();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] == p[j]) return false;
  return true;
}

}  // namespace adaptcc
