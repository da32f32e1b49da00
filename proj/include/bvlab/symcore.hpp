#pragma once

// Symmetric-function evaluation on small multisets of complex numbers:
// partitions, e_l, h_k, p_k, Schur polynomials (Jacobi-Trudi) and the dual
// Pieri identity e_l * h_m = s_(m+1,1^(l-1)) + s_(m,1^l).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bvlab::symcore {

using cplx = std::complex<double>;

// Largest partition weight enum_partitions accepts.
inline constexpr int kMaxPartitionWeight = 64;

class Partition {
 public:
  Partition() = default;
  // Zero entries are dropped; throws ContractError unless parts are nonincreasing.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  // lambda(i) with 0-based i; zero past the last stored part.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  friend bool operator==(const Partition&, const Partition&) = default;

  // The hook (a, 1^b) used by the dual Pieri rule; a >= 1.
  static Partition hook(int arm, int ones);

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

// A multiset of complex local parameters, stored in canonical order
// (ascending real part, then imaginary part) so equality is well defined.
class ComplexMultiset {
 public:
  ComplexMultiset() = default;
  explicit ComplexMultiset(std::vector<cplx> values);
  ComplexMultiset(std::initializer_list<cplx> values)
      : ComplexMultiset(std::vector<cplx>(values)) {}

  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  // {conj(a) : a in this}
  ComplexMultiset conjugate() const;
  // {a * conj(b) : a, b in this}, the n^2 Rankin-Selberg local roots.
  ComplexMultiset times_conjugate() const;

  friend bool operator==(const ComplexMultiset&, const ComplexMultiset&) = default;

 private:
  std::vector<cplx> values_;
};

// All partitions of k with at most max_length parts, lexicographically decreasing.
std::vector<Partition> enum_partitions(int k, int max_length);

cplx elementary(int l, const ComplexMultiset& a);
cplx power_sum(int k, const ComplexMultiset& a);
cplx complete_homogeneous(int k, const ComplexMultiset& a);

// h_0..h_kmax in one pass.
std::vector<cplx> complete_homogeneous_upto(int kmax, const ComplexMultiset& a);
// e_0..e_n.
std::vector<cplx> elementary_all(const ComplexMultiset& a);

// Schur polynomial via the Jacobi-Trudi determinant det[h_{lambda_i - i + j}].
// Zero when the partition is longer than the multiset.
cplx schur(const Partition& lambda, const ComplexMultiset& a);

// Determinant of a dense square matrix (row-major), partial-pivot LU.
cplx determinant(std::vector<cplx> m, std::size_t dim);

bool dual_pieri_check(int l, int m, const ComplexMultiset& a, double tol);

}  // namespace bvlab::symcore
