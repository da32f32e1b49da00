#pragma once

// Arithmetic functions on 1..N: factor sieve, multiplicative extension of local
// generators, Dirichlet convolution, and the exemplar coefficient tables.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "bvlab/localcoeffs.hpp"

namespace bvlab {

class ParallelMap;

enum class TableRole { lambda_pi, vonmangoldt_a_pi, mu_pi, rs_lambda, divisor, b_Fpi, alpha_Fpi, beta_Fpi, custom };

std::string_view role_name(TableRole r);

class CoefficientTable {
 public:
  CoefficientTable() = default;
  CoefficientTable(TableRole role, std::int64_t n);
  CoefficientTable(TableRole role, std::vector<cplx> values_from_1);

  TableRole role() const { return role_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()) - 1; }

  cplx& operator[](std::int64_t m) { return values_[static_cast<std::size_t>(m)]; }
  const cplx& operator[](std::int64_t m) const { return values_[static_cast<std::size_t>(m)]; }

  // Index 0 is a zero sentinel; indices 1..N hold the values.
  const std::vector<cplx>& raw() const { return values_; }

  // Real parts, same indexing (the fast path for self-dual exemplars).
  std::vector<double> real_values() const;
  double max_abs_imag() const;

  CoefficientTable with_role(TableRole role) const;

  // "m,value_re,value_im", one row per m.
  void write_csv(std::ostream& out) const;

 private:
  TableRole role_ = TableRole::custom;
  std::vector<cplx> values_{cplx{}};
};

inline constexpr std::int64_t kMaxSieveN = 100'000'000;

class FactorSieve {
 public:
  explicit FactorSieve(std::int64_t n);

  std::int64_t size() const { return n_; }
  std::int64_t spf(std::int64_t m) const { return spf_[static_cast<std::size_t>(m)]; }
  // Largest power of spf(m) dividing m.
  std::int64_t spf_power(std::int64_t m) const { return pp_[static_cast<std::size_t>(m)]; }
  bool is_prime(std::int64_t m) const { return m >= 2 && spf(m) == m; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  // Prime factorization as (p, k) pairs in ascending p.
  std::vector<std::pair<std::int64_t, int>> factor(std::int64_t m) const;

 private:
  std::int64_t n_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> pp_;
  std::vector<std::uint32_t> primes_;
};

FactorSieve build_sieve(std::int64_t n);

using LocalGenerator = std::function<cplx(std::int64_t p, int k)>;

CoefficientTable multiplicative_extend(const LocalGenerator& local, std::int64_t n, const FactorSieve& sieve,
                                       TableRole role = TableRole::custom);

CoefficientTable dirichlet_convolve(const CoefficientTable& f, const CoefficientTable& g);

// Indicator of m = 1, the convolution unit.
CoefficientTable unit_table(std::int64_t n);

// Exemplar tables. Local values are generated once per prime power.
CoefficientTable lambda_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve);
CoefficientTable mu_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve);
CoefficientTable rs_lambda_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve);
CoefficientTable divisor_table(std::int64_t n, const FactorSieve& sieve);
// Lambda(m) a_{pi x pi~}(m): log p * |a_pi(p^k)|^2 on prime powers.
CoefficientTable rs_vonmangoldt_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve);

CoefficientTable von_mangoldt_a(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve);
CoefficientTable von_mangoldt_a(const ExemplarPi& pi, std::int64_t n);

// Max deviation between (lambda_pi * log) conv mu_pi and Lambda a_pi on 1..N.
double log_deriv_deviation(const ExemplarPi& pi, std::int64_t n);
bool truncated_log_deriv_check(const ExemplarPi& pi, std::int64_t n, double tol);

}  // namespace bvlab
