#include "bvlab/dirichlet.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "bvlab/errors.hpp"

namespace bvlab {

std::string_view role_name(TableRole r) {
  switch (r) {
    case TableRole::lambda_pi: return "lambda_pi";
    case TableRole::vonmangoldt_a_pi: return "vonmangoldt_a_pi";
    case TableRole::mu_pi: return "mu_pi";
    case TableRole::rs_lambda: return "rs_lambda";
    case TableRole::divisor: return "divisor";
    case TableRole::b_Fpi: return "b_Fpi";
    case TableRole::alpha_Fpi: return "alpha_Fpi";
    case TableRole::beta_Fpi: return "beta_Fpi";
    case TableRole::custom: return "custom";
  }
  return "?";
}

CoefficientTable::CoefficientTable(TableRole role, std::int64_t n)
    : role_(role), values_(static_cast<std::size_t>(n + 1), cplx{}) {
  if (n < 0) throw ContractError("table length must be nonnegative");
}

CoefficientTable::CoefficientTable(TableRole role, std::vector<cplx> values_from_1) : role_(role) {
  values_.reserve(values_from_1.size() + 1);
  values_.push_back(cplx{});
  values_.insert(values_.end(), values_from_1.begin(), values_from_1.end());
}

std::vector<double> CoefficientTable::real_values() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
  return out;
}

double CoefficientTable::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::fabs(v.imag()));
  return m;
}

CoefficientTable CoefficientTable::with_role(TableRole role) const {
  CoefficientTable copy = *this;
  copy.role_ = role;
  return copy;
}

void CoefficientTable::write_csv(std::ostream& out) const {
  out << "m,value_re,value_im\n";
  char buf[96];
  for (std::int64_t m = 1; m <= size(); ++m) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(m), values_[m].real(),
                  values_[m].imag());
    out << buf;
  }
}

FactorSieve::FactorSieve(std::int64_t n) : n_(n) {
  if (n < 1) throw ContractError("sieve length must be >= 1");
  if (n > kMaxSieveN) throw SizeLimitError("sieve length exceeds 10^8");
  spf_.assign(static_cast<std::size_t>(n + 1), 0);
  pp_.assign(static_cast<std::size_t>(n + 1), 0);
  if (n >= 1) {
    spf_[1] = 1;
    pp_[1] = 1;
  }
  // Linear sieve: every composite is crossed out exactly once, by its least prime.
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      pp_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (const auto p : primes_) {
      if (p > spf_[i] || static_cast<std::int64_t>(p) * i > n) break;
      const std::int64_t m = static_cast<std::int64_t>(p) * i;
      spf_[m] = p;
      pp_[m] = (spf_[i] == p) ? pp_[i] * p : p;
    }
  }
}

std::vector<std::pair<std::int64_t, int>> FactorSieve::factor(std::int64_t m) const {
  std::vector<std::pair<std::int64_t, int>> out;
  while (m > 1) {
    const std::int64_t p = spf(m);
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  return out;
}

FactorSieve build_sieve(std::int64_t n) { return FactorSieve(n); }

CoefficientTable multiplicative_extend(const LocalGenerator& local, std::int64_t n, const FactorSieve& sieve,
                                       TableRole role) {
  if (n > sieve.size()) throw ContractError("multiplicative_extend: sieve shorter than table");
  CoefficientTable t(role, n);
  if (n >= 1) t[1] = 1.0;
  // Prime powers first, then every m = p^k * r with r coprime to p and r < m.
  for (const auto p32 : sieve.primes()) {
    const std::int64_t p = p32;
    if (p > n) break;
    std::int64_t q = p;
    for (int k = 1;; ++k) {
      t[q] = local(p, k);
      if (q > n / p) break;
      q *= p;
    }
  }
  for (std::int64_t m = 2; m <= n; ++m) {
    const std::int64_t pk = sieve.spf_power(m);
    if (pk != m) t[m] = t[pk] * t[m / pk];
  }
  return t;
}

CoefficientTable dirichlet_convolve(const CoefficientTable& f, const CoefficientTable& g) {
  if (f.size() != g.size()) throw ContractError("dirichlet_convolve: tables differ in length");
  const std::int64_t n = f.size();
  CoefficientTable out(TableRole::custom, n);
  for (std::int64_t d = 1; d <= n; ++d) {
    const cplx fd = f[d];
    if (fd == cplx{}) continue;
    for (std::int64_t e = 1, m = d; m <= n; ++e, m += d) out[m] += fd * g[e];
  }
  return out;
}

CoefficientTable unit_table(std::int64_t n) {
  CoefficientTable t(TableRole::custom, n);
  if (n >= 1) t[1] = 1.0;
  return t;
}

namespace {

void require_reach(const ExemplarPi& pi, std::int64_t n) {
  if (n > pi.prime_reach())
    throw RangeError("table length " + std::to_string(n) + " exceeds tau-table reach " +
                     std::to_string(pi.prime_reach()));
}

int max_exponent(std::int64_t p, std::int64_t n) {
  int k = 0;
  for (std::int64_t q = p; q <= n; ++k) {
    if (q > n / p) {
      ++k;
      break;
    }
    q *= p;
  }
  return k;
}

// Builds a multiplicative table from per-prime vectors of local values [k=0..kmax].
template <class PerPrime>
CoefficientTable extend_per_prime(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve, TableRole role,
                                  PerPrime per_prime) {
  require_reach(pi, n);
  CoefficientTable t(role, n);
  if (n >= 1) t[1] = 1.0;
  for (const auto p32 : sieve.primes()) {
    const std::int64_t p = p32;
    if (p > n) break;
    const int kmax = max_exponent(p, n);
    const std::vector<cplx> local = per_prime(satake_at(pi, p), kmax);
    std::int64_t q = p;
    for (int k = 1; k <= kmax; ++k, q *= p) t[q] = local[k];
  }
  for (std::int64_t m = 2; m <= n; ++m) {
    const std::int64_t pk = sieve.spf_power(m);
    if (pk != m) t[m] = t[pk] * t[m / pk];
  }
  return t;
}

}  // namespace

CoefficientTable lambda_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve) {
  return extend_per_prime(pi, n, sieve, TableRole::lambda_pi, [](const SatakeSet& s, int kmax) {
    return symcore::complete_homogeneous_upto(kmax, s.params());
  });
}

CoefficientTable mu_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve) {
  return extend_per_prime(pi, n, sieve, TableRole::mu_pi, [](const SatakeSet& s, int kmax) {
    std::vector<cplx> out(kmax + 1, cplx{});
    for (int k = 0; k <= kmax; ++k) out[k] = mu_pk(s, k);
    return out;
  });
}

CoefficientTable rs_lambda_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve) {
  return extend_per_prime(pi, n, sieve, TableRole::rs_lambda, [](const SatakeSet& s, int kmax) {
    // Coefficients of prod_{j,j'} (1 - a_j conj(a_j') x)^{-1}, equal to sum |s_lambda|^2.
    auto h = symcore::complete_homogeneous_upto(kmax, s.params().times_conjugate());
    for (auto& v : h) v = cplx{v.real(), 0.0};
    return h;
  });
}

CoefficientTable divisor_table(std::int64_t n, const FactorSieve& sieve) {
  return multiplicative_extend([](std::int64_t, int k) { return cplx{static_cast<double>(k + 1)}; }, n, sieve,
                               TableRole::divisor);
}

CoefficientTable von_mangoldt_a(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve) {
  require_reach(pi, n);
  CoefficientTable t(TableRole::vonmangoldt_a_pi, n);
  for (const auto p32 : sieve.primes()) {
    const std::int64_t p = p32;
    if (p > n) break;
    const SatakeSet s = satake_at(pi, p);
    const double lp = std::log(static_cast<double>(p));
    std::int64_t q = p;
    for (int k = 1;; ++k) {
      t[q] = a_pk(s, k) * lp;
      if (q > n / p) break;
      q *= p;
    }
  }
  return t;
}

CoefficientTable von_mangoldt_a(const ExemplarPi& pi, std::int64_t n) { return von_mangoldt_a(pi, n, FactorSieve(n)); }

CoefficientTable rs_vonmangoldt_table(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve) {
  require_reach(pi, n);
  CoefficientTable t(TableRole::custom, n);
  for (const auto p32 : sieve.primes()) {
    const std::int64_t p = p32;
    if (p > n) break;
    const SatakeSet s = satake_at(pi, p);
    const double lp = std::log(static_cast<double>(p));
    std::int64_t q = p;
    for (int k = 1;; ++k) {
      t[q] = rs_a_pk(s, k) * lp;
      if (q > n / p) break;
      q *= p;
    }
  }
  return t;
}

double log_deriv_deviation(const ExemplarPi& pi, std::int64_t n) {
  const FactorSieve sieve(n);
  CoefficientTable lam_log = lambda_table(pi, n, sieve);
  for (std::int64_t m = 1; m <= n; ++m) lam_log[m] *= std::log(static_cast<double>(m));
  const CoefficientTable lhs = dirichlet_convolve(lam_log, mu_table(pi, n, sieve));
  const CoefficientTable rhs = von_mangoldt_a(pi, n, sieve);
  double dev = 0.0;
  for (std::int64_t m = 1; m <= n; ++m) dev = std::max(dev, std::abs(lhs[m] - rhs[m]));
  return dev;
}

bool truncated_log_deriv_check(const ExemplarPi& pi, std::int64_t n, double tol) {
  if (n > 100'000) throw SizeLimitError("truncated_log_deriv_check: N exceeds 10^5");
  return log_deriv_deviation(pi, n) < tol;
}

}  // namespace bvlab
