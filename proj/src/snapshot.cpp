#include "sacns/snapshot.hpp"

#include "sacns/errors.hpp"
#include "sacns/output.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sacns {
namespace {

constexpr char kMagic[8] = {'S', 'A', 'C', 'N', 'S', 'N', 'A', 'P'};
constexpr std::size_t kDigestBytes = 64;
constexpr std::size_t kHeaderBytes = 48 + kDigestBytes;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_u64(const std::string& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

double get_f64(const std::string& in, std::size_t at) {
  return std::bit_cast<double>(get_u64(in, at));
}

}  // namespace

std::string encode_snapshot(const Snapshot& snap) {
  const int n = snap.state.u.n_modes;
  if (snap.state.p.n_modes != n) throw StructuralError("snapshot velocity/pressure cutoff mismatch");
  std::string digest = snap.manifest_digest;
  digest.resize(kDigestBytes, '0');
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kSnapshotVersion);
  put_u32(out, static_cast<std::uint32_t>(n));
  put_u32(out, static_cast<std::uint32_t>(snap.state.u.coeffs.size()));
  put_u32(out, static_cast<std::uint32_t>(snap.state.p.coeffs.size()));
  put_f64(out, snap.state.t);
  put_u64(out, snap.seed);
  put_u64(out, snap.path);
  out += digest;
  for (double c : snap.state.u.coeffs) put_f64(out, c);
  for (double c : snap.state.p.coeffs) put_f64(out, c);
  return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw IoError("not a snapshot (bad magic or truncated header)");
  }
  const std::uint32_t version = get_u32(bytes, 8);
  if (version != kSnapshotVersion) {
    throw IoError("unsupported snapshot version " + std::to_string(version));
  }
  const auto n = static_cast<int>(get_u32(bytes, 12));
  const std::uint32_t nu = get_u32(bytes, 16);
  const std::uint32_t np = get_u32(bytes, 20);
  if (n < 1 || nu != static_cast<std::uint32_t>(velocity_dim(n)) ||
      np != static_cast<std::uint32_t>(pressure_dim(n))) {
    throw IoError("snapshot counts do not match N = " + std::to_string(n));
  }
  if (bytes.size() != kHeaderBytes + 8 * (static_cast<std::size_t>(nu) + np)) {
    throw IoError("snapshot payload has the wrong size");
  }
  Snapshot snap;
  snap.state = State{VelocityField(n), PressureField(n), get_f64(bytes, 24)};
  snap.seed = get_u64(bytes, 32);
  snap.path = get_u64(bytes, 40);
  snap.manifest_digest = bytes.substr(48, kDigestBytes);
  std::size_t at = kHeaderBytes;
  for (std::uint32_t i = 0; i < nu; ++i, at += 8) snap.state.u.coeffs[i] = get_f64(bytes, at);
  for (std::uint32_t i = 0; i < np; ++i, at += 8) snap.state.p.coeffs[i] = get_f64(bytes, at);
  return snap;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  write_file(path, encode_snapshot(snap));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read snapshot " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return decode_snapshot(ss.str());
}

}  // namespace sacns
