#include "bvlab/tau.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "bvlab/errors.hpp"
#include "bvlab/parallel.hpp"

namespace bvlab {

namespace {

constexpr double kInt128Max = 1.7014118346046923e38;

struct SparseTerm {
  std::int64_t exponent;
  std::int64_t coeff;
};

// prod_{n>=1} (1 - q^n)^3 truncated at degree < len (Jacobi's identity).
std::vector<SparseTerm> eta_cubed_terms(std::int64_t len) {
  std::vector<SparseTerm> terms;
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t e = k * (k + 1) / 2;
    if (e >= len) break;
    terms.push_back({e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1)});
  }
  return terms;
}

double abs128(int128 v) { return std::fabs(static_cast<double>(v)); }

// out = dense * sparse, truncated at len. Safe-mode loops are used when the
// a-priori bound max|dense| * sum|sparse| fits in int128; otherwise every
// multiply-add is checked.
std::vector<int128> times_sparse(const std::vector<int128>& dense, const std::vector<SparseTerm>& sparse,
                                 const ParallelMap& pool) {
  const std::int64_t len = static_cast<std::int64_t>(dense.size());
  double max_dense = 0.0;
  for (const auto v : dense) max_dense = std::max(max_dense, abs128(v));
  double sparse_l1 = 0.0;
  for (const auto& t : sparse) sparse_l1 += static_cast<double>(std::llabs(t.coeff));
  const bool checked = max_dense * sparse_l1 >= kInt128Max / 4;

  std::vector<int128> out(dense.size(), 0);
  constexpr std::int64_t kBlock = 1 << 14;
  const std::int64_t blocks = (len + kBlock - 1) / kBlock;
  pool.for_each(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    const std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t hi = std::min(len, lo + kBlock);
    for (const auto& t : sparse) {
      if (t.exponent >= hi) break;
      const int128 c = t.coeff;
      const std::int64_t start = std::max(lo, t.exponent);
      if (!checked) {
        for (std::int64_t m = start; m < hi; ++m) out[m] += c * dense[m - t.exponent];
      } else {
        for (std::int64_t m = start; m < hi; ++m) {
          int128 prod;
          if (__builtin_mul_overflow(c, dense[m - t.exponent], &prod) ||
              __builtin_add_overflow(out[m], prod, &out[m]))
            throw OverflowError("tau table: 128-bit overflow at index " + std::to_string(m + 1));
        }
      }
    }
  });
  return out;
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

int128 TauTable::at(std::int64_t m) const {
  if (m < 1 || m > size())
    throw RangeError("tau(" + std::to_string(m) + ") outside table of size " + std::to_string(size()));
  return (*this)[m];
}

std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Magnitude as unsigned so the most negative value is handled.
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::vector<std::uint8_t> TauTable::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(12 + 16 * values_.size());
  for (const char c : {'T', 'A', 'U', '1'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u64(out, static_cast<std::uint64_t>(values_.size()));
  for (const auto v : values_) {
    const auto u = static_cast<unsigned __int128>(v);
    put_u64(out, static_cast<std::uint64_t>(u));
    put_u64(out, static_cast<std::uint64_t>(u >> 64));
  }
  return out;
}

TauTable TauTable::deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || bytes[0] != 'T' || bytes[1] != 'A' || bytes[2] != 'U' || bytes[3] != '1')
    throw ContractError("tau cache: bad magic");
  const std::uint64_t n = get_u64(bytes.data() + 4);
  if (bytes.size() != 12 + 16 * n) throw ContractError("tau cache: length does not match header");
  std::vector<int128> values(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint8_t* p = bytes.data() + 12 + 16 * i;
    const unsigned __int128 u = (static_cast<unsigned __int128>(get_u64(p + 8)) << 64) | get_u64(p);
    values[i] = static_cast<int128>(u);
  }
  return TauTable(std::move(values));
}

std::uint64_t TauTable::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto b : serialize()) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string TauTable::checksum_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum()));
  return buf;
}

void TauTable::save(const std::filesystem::path& path) const {
  const auto bytes = serialize();
  // write-then-rename so concurrent readers never see a partial file
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write tau cache " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("cannot write tau cache " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

TauTable TauTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read tau cache " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

TauTable compute_tau_table(std::int64_t n, const ParallelMap* pool) {
  if (n < 1) throw ContractError("compute_tau_table needs N >= 1");
  if (n > kMaxTauN) throw SizeLimitError("compute_tau_table: N exceeds 10^6");
  const ParallelMap& workers = pool ? *pool : ParallelMap::serial();
  // tau(m) is the coefficient of q^(m-1) in prod (1-q^n)^24.
  const auto seed = eta_cubed_terms(n);
  std::vector<int128> series(static_cast<std::size_t>(n), 0);
  for (const auto& t : seed) series[t.exponent] = t.coeff;
  for (int power = 2; power <= 8; ++power) series = times_sparse(series, seed, workers);
  return TauTable(std::move(series));
}

TauTable load_or_compute_tau(std::int64_t n, const std::filesystem::path& cache_path, const ParallelMap* pool) {
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    TauTable cached;
    try {
      cached = TauTable::load(cache_path);
    } catch (const Error&) {
      // unreadable or corrupt: fall through and rebuild
    }
    if (cached.size() >= n) {
      if (cached.size() == n) return cached;
      std::vector<int128> head;
      head.reserve(n);
      for (std::int64_t m = 1; m <= n; ++m) head.push_back(cached[m]);
      return TauTable(std::move(head));
    }
  }
  TauTable fresh = compute_tau_table(n, pool);
  if (!cache_path.empty()) fresh.save(cache_path);
  return fresh;
}

}  // namespace bvlab
