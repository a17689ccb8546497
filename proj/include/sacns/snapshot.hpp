#pragma once

#include "sacns/integrator.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace sacns {

/// Binary state dump, all integers and doubles little-endian:
///
///   offset  size        field
///   0       8           magic "SACNSNAP"
///   8       4   u32     format version (1)
///   12      4   u32     N
///   16      4   u32     velocity count (2 N^2)
///   20      4   u32     pressure count (N^2 - 1)
///   24      8   f64     t
///   32      8   u64     seed
///   40      8   u64     path
///   48      64          manifest digest, ASCII hex
///   112     8 * 2N^2    velocity coefficients, slot order
///   ...     8 * (N^2-1) pressure coefficients, slot order
struct Snapshot {
  State state;
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
  std::string manifest_digest;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

std::string encode_snapshot(const Snapshot& snap);

/// Throws IoError on a bad magic, version, size or count.
Snapshot decode_snapshot(const std::string& bytes);

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace sacns
