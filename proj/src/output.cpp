#include "sacns/output.hpp"

#include "sacns/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#ifndef SACNS_VERSION
#define SACNS_VERSION "0.0.0"
#endif

namespace sacns {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

CsvTable::CsvTable(std::string manifest_digest, std::vector<std::string> columns)
    : digest_(std::move(manifest_digest)), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw StructuralError("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out = "# manifest-digest: " + digest_ + "\n";
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(',');
      out += cells[i];
    }
    out.push_back('\n');
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write to " + path.string() + " failed");
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string RunManifest::digest() const {
  return sha256_hex(code_version + "\n" + subcommand + "\n" + config_echo);
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["code_version"] = code_version;
  j["subcommand"] = subcommand;
  j["digest"] = digest();
  j["seed"] = seed;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::size_t at = 0;
  while (at < config_echo.size()) {
    std::size_t end = config_echo.find('\n', at);
    if (end == std::string::npos) end = config_echo.size();
    const std::string line = config_echo.substr(at, end - at);
    const std::size_t eq = line.find(" = ");
    if (eq != std::string::npos) config[line.substr(0, eq)] = line.substr(eq + 3);
    at = end + 1;
  }
  j["config"] = config;
  nlohmann::ordered_json sources = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_sources) sources[k] = v;
  j["config_sources"] = sources;
  nlohmann::ordered_json outs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : outputs) outs[k] = v;
  j["outputs"] = outs;
  j["execution"] = {{"threads", threads}};
  j["timestamps"] = {{"started", started}, {"finished", finished}};
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

std::string code_version() { return "sacns " SACNS_VERSION; }

}  // namespace sacns
