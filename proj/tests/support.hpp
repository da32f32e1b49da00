#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests. The
// oracles deliberately avoid the library's algorithms: naive products, trial
// division, exponential sums.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

#include "bvlab/tau.hpp"

namespace bvtest {

using cplx = std::complex<double>;
using bvlab::int128;

#ifndef BVLAB_TEST_TAU_CACHE
#define BVLAB_TEST_TAU_CACHE ""
#endif

// The full 10^6 table, cached in the build tree across test binaries.
inline std::shared_ptr<const bvlab::TauTable> full_tau() {
  static auto t = std::make_shared<const bvlab::TauTable>(
      bvlab::load_or_compute_tau(bvlab::kMaxTauN, BVLAB_TEST_TAU_CACHE));
  return t;
}

// tau(1..n) from q * prod_{m >= 1} (1 - q^m)^24, one factor at a time.
inline std::vector<int128> tau_qexpansion(int n) {
  std::vector<int128> c(static_cast<std::size_t>(n), 0);  // coefficient of q^j, j < n
  c[0] = 1;
  for (int m = 1; m < n; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (int j = n - 1; j >= m; --j) c[j] -= c[j - m];
  std::vector<int128> tau(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) tau[j] = c[j - 1];
  return tau;
}

inline bool is_prime_slow(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t divisor_count_slow(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) ++c;
  return c;
}

inline std::int64_t gcd_slow(std::int64_t a, std::int64_t b) {
  while (b) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// Number of partitions of k into parts of size at most m and at most len parts.
inline std::int64_t partitions_slow(int k, int m, int len) {
  if (k == 0) return 1;
  if (len == 0 || m == 0) return 0;
  std::int64_t c = 0;
  for (int first = std::min(k, m); first >= 1; --first) c += partitions_slow(k - first, first, len - 1);
  return c;
}

// c_q(n) = sum over a mod q, gcd(a, q) = 1, of e(an/q).
inline cplx ramanujan_exp(std::int64_t q, std::int64_t n) {
  cplx acc = 0.0;
  for (std::int64_t a = 1; a <= q; ++a)
    if (gcd_slow(a, q) == 1) acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((a * n) % q) / q);
  return acc;
}

// Schur polynomial as a ratio of alternants det(x_i^{lambda_j + n - j}) / det(x_i^{n - j}).
inline cplx det_slow(std::vector<cplx> m, int n) {
  cplx d = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m[c * n + j], m[piv * n + j]);
      d = -d;
    }
    d *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      cplx f = m[r * n + c] / m[c * n + c];
      for (int j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return d;
}

inline cplx schur_bialternant(const std::vector<int>& lambda, const std::vector<cplx>& x) {
  int n = static_cast<int>(x.size());
  if (static_cast<int>(lambda.size()) > n) return 0.0;
  std::vector<cplx> num(n * n), den(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int lj = j < static_cast<int>(lambda.size()) ? lambda[j] : 0;
      num[i * n + j] = std::pow(x[i], lj + n - 1 - j);
      den[i * n + j] = std::pow(x[i], n - 1 - j);
    }
  return det_slow(num, n) / det_slow(den, n);
}

// Kronecker symbol (d/n) for n >= 1 straight from the definition: Legendre symbols by
// Euler's criterion, (d/2) from d mod 8.
inline int legendre_slow(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  std::int64_t r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<int128>(r) * b % p);
    b = static_cast<std::int64_t>(static_cast<int128>(b) * b % p);
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

inline int kronecker_slow(std::int64_t d, std::int64_t n) {
  int s = 1;
  for (std::int64_t p = 2; n > 1; ++p) {
    while (n % p == 0) {
      n /= p;
      if (p == 2) {
        if (d % 2 == 0) return 0;
        auto r = ((d % 8) + 8) % 8;
        s *= (r == 1 || r == 7) ? 1 : -1;
      } else {
        s *= legendre_slow(d, p);
      }
    }
  }
  return s;
}

}  // namespace bvtest
