#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sacns {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf".
std::string format_double(double x);

std::string sha256_hex(std::string_view bytes);

/// LF-terminated CSV. The first line is "# manifest-digest: <hex>", then the
/// header row, then data rows in insertion order.
class CsvTable {
 public:
  CsvTable(std::string manifest_digest, std::vector<std::string> columns);

  /// Cells are written verbatim; numbers should go through format_double.
  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::string digest_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `bytes` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Pretty JSON with a trailing newline.
std::string json_text(const nlohmann::ordered_json& j);

/// Provenance of one invocation. The digest covers the code version, the
/// subcommand and the canonical config echo; timestamps and execution
/// settings (thread count) are recorded but not digested.
struct RunManifest {
  std::string code_version;
  std::string subcommand;
  std::string config_echo;
  std::map<std::string, std::string> config_sources;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string started;
  std::string finished;
  std::map<std::string, std::string> outputs;  // file name -> sha256 of its bytes

  std::string digest() const;
  nlohmann::ordered_json to_json() const;
};

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

/// Version string compiled into the library.
std::string code_version();

}  // namespace sacns
