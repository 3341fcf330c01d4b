#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adaptcc/constellation.hpp"
#include "adaptcc/context.hpp"
#include "adaptcc/mcs.hpp"

namespace adaptcc {

struct LutKey {
  FadingOrder m = FadingOrder::nakagami(1);
  double snr_db = 0.0;
  int mcs = 0;

  friend bool operator==(const LutKey&, const LutKey&) = default;
  std::string to_string() const;
};

struct LutRecord {
  LutKey key;
  std::vector<unsigned> generators;
  std::optional<PuncturePattern> puncture;
  Constellation constellation;
  std::optional<double> bound;  // bound at the design point, when known
  std::string provenance;        // "pso:<config digest>:seed=<n>" or "paper-table-2"

  friend bool operator==(const LutRecord&, const LutRecord&) = default;
};

// Versioned JSON document holding the optimized-constellation look-up
// table. Records are unique by key; upsert replaces in place so record
// order is stable.
class LutStore {
 public:
  static constexpr int kVersion = 1;

  LutStore() = default;
  static LutStore parse(const std::string& text);
  static LutStore load(const std::filesystem::path& path);
  std::string dump() const;
  void save(const std::filesystem::path& path) const;

  void upsert(LutRecord record);
  const LutRecord* find(const LutKey& key) const;
  const LutRecord& get(const LutKey& key) const;  // throws MissingKeyError
  std::vector<const LutRecord*> records_for(FadingOrder m, int mcs) const;
  const std::vector<LutRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

  // SNR-independent reference constellation shipped with the fixtures.
  const std::optional<Constellation>& conventional() const { return conventional_; }
  const std::vector<int>& conventional_mcs() const { return conventional_mcs_; }

 private:
  std::vector<LutRecord> records_;
  std::optional<Constellation> conventional_;
  std::vector<int> conventional_mcs_;
};

// Merge-by-key write of a single record into the store at `path`
// (created if absent).
void store_lut(const LutRecord& record, const std::filesystem::path& path);
LutRecord load_lut(const std::filesystem::path& path, const LutKey& key);

// The bundled Table II fixture store (four optimized 16-ary designs plus
// the conventional 16-QAM reference).
const std::string& fixture_store_text();
LutStore fixture_store();

// Mean energy within e_s * (1 + tolerance).
bool satisfies_energy(const Constellation& c, double e_s, double tolerance);
// Distinct points for distinct labels.
bool labels_are_bijective(const Constellation& c);

}  // namespace adaptcc
