#pragma once

// Exact Ramanujan tau table via Delta = q * (eta^3 / q^(1/8))^8, where
// prod (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2) is the sparse seed series.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bvlab {

class ParallelMap;

using int128 = __int128;

inline constexpr std::int64_t kMaxTauN = 1'000'000;

class TauTable {
 public:
  TauTable() = default;
  explicit TauTable(std::vector<int128> values_from_1) : values_(std::move(values_from_1)) {}

  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  // tau(m), 1 <= m <= size(); throws RangeError outside.
  int128 at(std::int64_t m) const;
  int128 operator[](std::int64_t m) const { return values_[static_cast<std::size_t>(m - 1)]; }

  // FNV-1a over the cache serialization; recorded in run manifests.
  std::uint64_t checksum() const;
  std::string checksum_hex() const;

  // Binary cache: "TAU1", u64 N (little endian), then N little-endian 16-byte
  // two's-complement integers.
  std::vector<std::uint8_t> serialize() const;
  static TauTable deserialize(const std::vector<std::uint8_t>& bytes);
  void save(const std::filesystem::path& path) const;
  static TauTable load(const std::filesystem::path& path);

  friend bool operator==(const TauTable&, const TauTable&) = default;

 private:
  std::vector<int128> values_;
};

TauTable compute_tau_table(std::int64_t n, const ParallelMap* pool = nullptr);

// Loads the cache when it exists and covers n (truncating if longer); otherwise
// computes and, when path is non-empty, writes the cache.
TauTable load_or_compute_tau(std::int64_t n, const std::filesystem::path& cache_path,
                             const ParallelMap* pool = nullptr);

std::string to_string(int128 v);

}  // namespace bvlab
