#pragma once

// JSON schemas for the on-disk artifacts and the deterministic cache.
// Rationals are serialized as exact decimal strings "p/q" (never floats);
// numeric values carry the working precision used to produce them.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeta3/families.hpp"
#include "zeta3/linform.hpp"
#include "zeta3/numerics.hpp"
#include "zeta3/qseries.hpp"

namespace zeta3 {

// Stamped into every cache payload; bump on any change that affects bytes.
inline constexpr const char* kToolVersion = "zeta3 0.1.0";

using Json = nlohmann::ordered_json;

inline Json qseries_to_json(const QSeries& s) {
  Json j;
  j["var"] = s.var();
  j["order"] = s.order();
  Json coeffs = Json::array();
  for (const Rational& c : s.coeffs()) coeffs.push_back(to_string(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline QSeries qseries_from_json(const Json& j) {
  std::string var = j.at("var").get<std::string>();
  std::size_t order = j.at("order").get<std::size_t>();
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs"))
    coeffs.push_back(parse_rational(c.get<std::string>()));
  if (coeffs.size() != order)
    throw std::domain_error("qseries_from_json: order/coeff length mismatch");
  return QSeries(var, std::move(coeffs));
}

inline Json combo_to_json(const EisensteinCombo& combo) {
  Json j;
  j["weight"] = combo.weight;
  j["level"] = combo.level;
  Json coeffs = Json::object();
  for (const auto& [d, c] : combo.coeffs)
    coeffs[std::to_string(d)] = to_string(c);
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline EisensteinCombo combo_from_json(const Json& j) {
  EisensteinCombo combo;
  combo.weight = j.at("weight").get<unsigned>();
  combo.level = j.at("level").get<unsigned long>();
  for (const auto& [key, value] : j.at("coeffs").items())
    combo.coeffs[std::stoul(key)] = parse_rational(value.get<std::string>());
  return combo;
}

inline Json rows_to_json(const std::vector<ApproxRow>& rows) {
  Json arr = Json::array();
  for (const ApproxRow& row : rows) {
    Json j;
    j["n"] = row.n;
    j["a"] = to_string(row.a);
    j["b"] = to_string(row.b);
    j["ratio"] = to_string(row.ratio);
    j["scaled_a"] = to_string(row.scaled_a);
    j["den_digits"] = row.den_digits;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::vector<ApproxRow> rows_from_json(const Json& arr) {
  std::vector<ApproxRow> rows;
  for (const auto& j : arr) {
    ApproxRow row;
    row.n = j.at("n").get<std::size_t>();
    row.a = parse_rational(j.at("a").get<std::string>());
    row.b = parse_rational(j.at("b").get<std::string>());
    row.ratio = parse_rational(j.at("ratio").get<std::string>());
    row.scaled_a = parse_rational(j.at("scaled_a").get<std::string>());
    row.den_digits = j.at("den_digits").get<std::size_t>();
    rows.push_back(std::move(row));
  }
  return rows;
}

// write-temp-then-rename so concurrent readers never see partial files
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("atomic_write_file: cannot open " +
                               tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<std::string> read_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Deterministic on-disk cache of expensive series. A hit must be
// byte-identical to recomputation; entries with a different tool version are
// recomputed, never reused silently.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::filesystem::path path_for(const std::string& key) const {
    return dir_ / (key + ".json");
  }

  std::optional<std::string> lookup(const std::string& key) const {
    auto content = read_file(path_for(key));
    if (!content) return std::nullopt;
    Json j = Json::parse(*content, nullptr, false);
    if (j.is_discarded() || !j.contains("version") ||
        j["version"] != kToolVersion)
      return std::nullopt;
    return content;
  }

  void store(const std::string& key, const std::string& payload) const {
    atomic_write_file(path_for(key), payload);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Canonical cache key for a pipeline artifact ('/' and '-' in alpha are not
// filesystem- or separator-safe, so they are transliterated).
inline std::string cache_key(const std::string& kind, unsigned long level,
                             const Rational& alpha, std::size_t order,
                             EFamily family) {
  std::string a = to_string(alpha);
  for (char& ch : a)
    if (ch == '/') ch = 'd';
  if (!a.empty() && a[0] == '-') a[0] = 'm';
  return kind + "_N" + std::to_string(level) + "_a" + a + "_M" +
         std::to_string(order) + "_" + family_name(family);
}

// Payload wrapper; params make an entry recomputable without parsing the key.
inline std::string cache_payload(const std::string& key, unsigned long level,
                                 const Rational& alpha, std::size_t order,
                                 EFamily family, Json data) {
  Json j;
  j["version"] = kToolVersion;
  j["key"] = key;
  j["params"] = {{"level", level},
                 {"alpha", to_string(alpha)},
                 {"order", order},
                 {"family", family_name(family)}};
  j["data"] = std::move(data);
  return j.dump();
}

// Rows for (level, alpha, order, family), cached when a cache is supplied.
// With verify = true a cache hit is additionally recomputed and compared
// byte-for-byte; a mismatch throws naming the key.
inline std::vector<ApproxRow> cached_approximants(
    unsigned long N, const Rational& alpha, std::size_t order, EFamily family,
    const Cache* cache, bool verify = false) {
  if (cache == nullptr) return approximants(N, alpha, order, family);
  std::string key = cache_key("approx", N, alpha, order, family);
  auto hit = cache->lookup(key);
  if (hit) {
    Json j = Json::parse(*hit);
    std::vector<ApproxRow> rows = rows_from_json(j.at("data"));
    if (verify) {
      std::string fresh =
          cache_payload(key, N, alpha, order, family,
                        rows_to_json(approximants(N, alpha, order, family)));
      if (fresh != *hit)
        throw std::runtime_error("cache verification failed for key " + key);
    }
    return rows;
  }
  std::vector<ApproxRow> rows = approximants(N, alpha, order, family);
  cache->store(key, cache_payload(key, N, alpha, order, family,
                                  rows_to_json(rows)));
  return rows;
}

// Recompute every readable entry in the cache directory from its stored
// params and compare bytes; returns the first offending key, if any.
inline std::optional<std::string> verify_cache_dir(const Cache& cache) {
  namespace fs = std::filesystem;
  for (const auto& entry : fs::directory_iterator(cache.dir())) {
    if (entry.path().extension() != ".json") continue;
    auto content = read_file(entry.path());
    if (!content) continue;
    std::string key = entry.path().stem().string();
    Json j = Json::parse(*content, nullptr, false);
    if (j.is_discarded() || !j.contains("version") || !j.contains("params"))
      return key;
    if (j["version"] != kToolVersion) continue;  // stale, will be recomputed
    const Json& p = j["params"];
    unsigned long level = p.at("level").get<unsigned long>();
    Rational alpha = parse_rational(p.at("alpha").get<std::string>());
    std::size_t order = p.at("order").get<std::size_t>();
    EFamily family = p.at("family").get<std::string>() == "beukers"
                         ? EFamily::beukers
                         : EFamily::basis;
    std::string fresh =
        cache_payload(key, level, alpha, order, family,
                      rows_to_json(approximants(level, alpha, order, family)));
    if (fresh != *content) return key;
  }
  return std::nullopt;
}

}  // namespace zeta3
