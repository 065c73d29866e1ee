#include "mtlambda/cache.hpp"

#include "mtlambda/json_io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>
#include <tuple>

#include <unistd.h>

namespace mtlambda {

namespace fs = std::filesystem;

namespace {

constexpr int kFormatVersion = 1;
const std::regex kEntryName(R"(N(\d+)_k(\d+)_([0-9a-f]{16})\.json)");

}  // namespace

std::string eigen_fingerprint(std::uint64_t level, unsigned weight, const std::map<std::uint64_t, Integer>& eigen_data) {
  std::string text = std::to_string(level) + ";" + std::to_string(weight);
  for (const auto& [ell, a] : eigen_data) text += ";" + std::to_string(ell) + "=" + a.get_str();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

EigenCache::EigenCache(fs::path dir) : dir_(std::move(dir)) {}

std::optional<fs::path> EigenCache::resolve_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') return fs::path(env);
  return std::nullopt;
}

fs::path EigenCache::entry_path(std::uint64_t level, unsigned weight, const std::string& fingerprint) const {
  return dir_ / ("N" + std::to_string(level) + "_k" + std::to_string(weight) + "_" + fingerprint + ".json");
}

std::optional<EigenSymbol> EigenCache::load(std::uint64_t level, unsigned weight, const std::string& fingerprint) const {
  const fs::path path = entry_path(level, weight, fingerprint);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const Json j = Json::parse(in);
    if (j.at("format").get<int>() != kFormatVersion || j.at("level").get<std::uint64_t>() != level ||
        j.at("weight").get<unsigned>() != weight || j.at("fingerprint").get<std::string>() != fingerprint)
      return std::nullopt;
    std::vector<Integer> coords, values;
    for (const Json& v : j.at("coordinates")) coords.push_back(integer_from_json(v));
    for (const Json& v : j.at("generator_values")) values.push_back(integer_from_json(v));
    std::map<std::uint64_t, Integer> eigenvalues;
    for (const auto& [key, v] : j.at("eigenvalues").items()) eigenvalues[std::stoull(key)] = integer_from_json(v);
    return eigen_symbol_from_values(level, weight, std::move(values), std::move(coords), std::move(eigenvalues));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void EigenCache::store(const EigenSymbol& phi, const std::string& fingerprint) const {
  fs::create_directories(dir_);
  Json j;
  j["format"] = kFormatVersion;
  j["level"] = phi.level;
  j["weight"] = phi.weight;
  j["fingerprint"] = fingerprint;
  Json ev = Json::object();
  for (const auto& [ell, a] : phi.eigenvalues) ev[std::to_string(ell)] = integer_to_json(a);
  j["eigenvalues"] = std::move(ev);
  j["plus_dimension"] = phi.coordinates.size();
  Json coords = Json::array();
  for (const Integer& c : phi.coordinates) coords.push_back(integer_to_json(c));
  j["coordinates"] = std::move(coords);
  Json values = Json::array();
  for (const Integer& v : phi.generator_values) values.push_back(integer_to_json(v));
  j["generator_values"] = std::move(values);

  static std::atomic<unsigned> counter{0};
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << ::getpid() << "-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-"
           << counter.fetch_add(1);
  const fs::path target = entry_path(phi.level, phi.weight, fingerprint);
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<CacheEntryInfo> EigenCache::list() const {
  std::vector<CacheEntryInfo> out;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (!entry.is_regular_file() || !std::regex_match(name, m, kEntryName)) continue;
    out.push_back({entry.path(), std::stoull(m[1].str()), static_cast<unsigned>(std::stoul(m[2].str())), m[3].str(),
                   entry.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const CacheEntryInfo& a, const CacheEntryInfo& b) {
    return std::tie(a.level, a.weight, a.fingerprint) < std::tie(b.level, b.weight, b.fingerprint);
  });
  return out;
}

std::size_t EigenCache::clear() const {
  std::size_t removed = 0;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return 0;
  std::vector<fs::path> doomed;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, kEntryName) || name.rfind(".tmp-", 0) == 0) doomed.push_back(entry.path());
  }
  for (const fs::path& p : doomed) removed += fs::remove(p) ? 1 : 0;
  return removed;
}

}  // namespace mtlambda
