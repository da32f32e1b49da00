#pragma once

// Coefficient inequalities for automorphic L-functions, checked locally from
// Satake data and globally on tables: Soundararajan's exponential lemma, the
// Rankin-Selberg dominations, the 4(n+1) Pieri bound and Pi* nonnegativity.

#include <cstdint>
#include <string>
#include <vector>

#include "bvlab/dirichlet.hpp"
#include "bvlab/report.hpp"

namespace bvlab {

class ParallelMap;

inline constexpr double kInequalitySlack = 1e-10;
inline constexpr double kLoudViolation = 1e-6;

struct FormalSeries {
  std::vector<cplx> coeffs;  // x^0 .. x^K

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// b[k] is b(k) for k = 1..K; b[0] is ignored. Returns c with
// exp(sum b(k)/k x^k) = sum c(m) x^m.
FormalSeries exp_series(const std::vector<cplx>& b);
// Inverse of exp_series: recovers b(1..K) from c (c(0) must be 1).
std::vector<cplx> log_series(const FormalSeries& c);

// Truncated product and integer power of power series.
FormalSeries series_mul(const FormalSeries& f, const FormalSeries& g);
FormalSeries series_pow(const FormalSeries& f, int e);

struct SoundResult {
  bool pass = true;
  int worst_m = 0;
  double worst_margin = 0.0;  // min over m of C(m)(1+slack) - |c(m)|^2
};

SoundResult soundararajan_detail(const std::vector<cplx>& b, int K);
bool soundararajan_check(const std::vector<cplx>& b, int K);

struct DominationEntry {
  std::string id;
  int k;
  double lhs;
  double rhs;

  double margin() const { return rhs - lhs; }
  bool pass() const;
};

// Ids: "coeffpair", "ineq-2rs", "ineq-pk", "mobius", "mobius-divisor".
std::vector<DominationEntry> check_coefficient_dominations(const SatakeSet& s, int kmax);

// Local b_pi(p^k) = sum_{l <= min(k,n)} |e_l h_{k-l}|.
double b_local(const SatakeSet& s, int k);

bool pistar_nonneg_check(const SatakeSet& s, int chi_p, int chiprime_p, int kmax);
FormalSeries pistar_series(const SatakeSet& s, int chi_p, int chiprime_p, int kmax);

// {seed, satake: [[re, im], ...], k, lhs, rhs, inequality_id}
std::string counterexample_json(std::uint64_t seed, const SatakeSet& s, int k, double lhs, double rhs,
                                const std::string& id);

// Randomized sweep over every inequality with per-trial seeds derived from root_seed.
struct InequalityTally {
  std::string id;
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double worst_margin = 0.0;
  std::string first_counterexample;  // JSON, empty when clean
};

struct InequalitySweepOptions {
  std::int64_t trials = 10'000;
  int max_rank = 4;
  int kmax = 8;
  bool bounded_mode = true;  // also exercise theta_n-bounded Satake sets
};

std::vector<InequalityTally> run_inequality_sweep(std::uint64_t root_seed, const InequalitySweepOptions& opt,
                                                  const ParallelMap& pool);

// Global forms on 1..N from exemplar tables. Each returns the minimum of
// rhs - lhs over m (scaled by max(1, rhs)).
double global_rs_domination_margin(const ExemplarPi& pi, std::int64_t n);
double global_bfpi_margin(const ExemplarPi& pi, std::int64_t n);
double global_mobius_divisor_margin(const ExemplarPi& pi, std::int64_t n);

// Columns x, ratio_b2, ratio_mu2, ratio_dmu2: the three normalized sums
// sum b^2/(x log^{4n+3} x), sum |mu|^2/x, sum d|mu|^2/(x log^n x).
ExperimentReport growth_estimates_report(const ExemplarPi& pi, const std::vector<double>& xs,
                                         double tripwire = 50.0);

}  // namespace bvlab
