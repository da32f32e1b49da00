#include "bvlab/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bvlab/errors.hpp"

namespace bvlab::symcore {

Partition::Partition(std::vector<int> parts) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw ContractError("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) throw ContractError("partition parts must be nonincreasing");
    weight_ += parts[i];
  }
  parts_ = std::move(parts);
}

Partition Partition::hook(int arm, int ones) {
  if (arm < 1 || ones < 0) throw ContractError("hook needs arm >= 1 and ones >= 0");
  std::vector<int> parts(1 + ones, 1);
  parts[0] = arm;
  return Partition(std::move(parts));
}

namespace {

bool canonical_less(const cplx& x, const cplx& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

void enum_rec(int remaining, int max_part, int slots, std::vector<int>& cur,
              std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (slots == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    // The rest must fit in slots-1 parts of size <= part.
    if (static_cast<long>(part) * slots < remaining) break;
    cur.push_back(part);
    enum_rec(remaining - part, part, slots - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ComplexMultiset::ComplexMultiset(std::vector<cplx> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), canonical_less);
}

ComplexMultiset ComplexMultiset::conjugate() const {
  std::vector<cplx> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(std::conj(v));
  return ComplexMultiset(std::move(out));
}

ComplexMultiset ComplexMultiset::times_conjugate() const {
  std::vector<cplx> out;
  out.reserve(values_.size() * values_.size());
  for (const auto& a : values_)
    for (const auto& b : values_) out.push_back(a * std::conj(b));
  return ComplexMultiset(std::move(out));
}

std::vector<Partition> enum_partitions(int k, int max_length) {
  if (k < 0 || max_length < 0) throw ContractError("enum_partitions: negative argument");
  if (k > kMaxPartitionWeight)
    throw SizeLimitError("enum_partitions: weight " + std::to_string(k) + " exceeds " +
                         std::to_string(kMaxPartitionWeight));
  std::vector<Partition> out;
  std::vector<int> cur;
  enum_rec(k, k, max_length, cur, out);
  return out;
}

std::vector<cplx> elementary_all(const ComplexMultiset& a) {
  // Coefficients of prod_j (1 + a_j t).
  std::vector<cplx> e(a.size() + 1, cplx{});
  e[0] = 1.0;
  std::size_t deg = 0;
  for (const auto& v : a.values()) {
    ++deg;
    for (std::size_t l = deg; l >= 1; --l) e[l] += v * e[l - 1];
  }
  return e;
}

cplx elementary(int l, const ComplexMultiset& a) {
  if (l < 0 || static_cast<std::size_t>(l) > a.size()) return l == 0 ? cplx{1.0} : cplx{};
  return elementary_all(a)[l];
}

cplx power_sum(int k, const ComplexMultiset& a) {
  cplx s{};
  for (const auto& v : a.values()) s += std::pow(v, k);
  return s;
}

std::vector<cplx> complete_homogeneous_upto(int kmax, const ComplexMultiset& a) {
  // Coefficients of prod_j 1/(1 - a_j t), one geometric factor at a time.
  std::vector<cplx> h(kmax + 1, cplx{});
  h[0] = 1.0;
  for (const auto& v : a.values())
    for (int m = 1; m <= kmax; ++m) h[m] += v * h[m - 1];
  return h;
}

cplx complete_homogeneous(int k, const ComplexMultiset& a) {
  if (k < 0) return {};
  return complete_homogeneous_upto(k, a)[k];
}

cplx determinant(std::vector<cplx> m, std::size_t dim) {
  cplx det{1.0};
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::abs(m[r * dim + col]) > std::abs(m[piv * dim + col])) piv = r;
    if (m[piv * dim + col] == cplx{}) return {};
    if (piv != col) {
      for (std::size_t c = 0; c < dim; ++c) std::swap(m[piv * dim + c], m[col * dim + c]);
      det = -det;
    }
    const cplx p = m[col * dim + col];
    det *= p;
    for (std::size_t r = col + 1; r < dim; ++r) {
      const cplx f = m[r * dim + col] / p;
      if (f == cplx{}) continue;
      for (std::size_t c = col; c < dim; ++c) m[r * dim + c] -= f * m[col * dim + c];
    }
  }
  return det;
}

cplx schur(const Partition& lambda, const ComplexMultiset& a) {
  const std::size_t len = static_cast<std::size_t>(lambda.length());
  if (len == 0) return 1.0;
  if (len > a.size()) return {};
  const int top = lambda[0] + static_cast<int>(len);
  const auto h = complete_homogeneous_upto(top, a);
  auto h_at = [&](int idx) { return idx < 0 ? cplx{} : h[idx]; };
  std::vector<cplx> m(len * len);
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j)
      m[i * len + j] = h_at(lambda[i] - static_cast<int>(i) + static_cast<int>(j));
  return determinant(std::move(m), len);
}

bool dual_pieri_check(int l, int m, const ComplexMultiset& a, double tol) {
  if (l < 1 || m < 1) throw ContractError("dual_pieri_check needs l >= 1 and m >= 1");
  const cplx lhs = elementary(l, a) * complete_homogeneous(m, a);
  const cplx rhs = schur(Partition::hook(m + 1, l - 1), a) + schur(Partition::hook(m, l), a);
  return std::abs(lhs - rhs) <= tol;
}

}  // namespace bvlab::symcore
