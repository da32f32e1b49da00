#pragma once

// Progression sums, Riesz-smoothed sums psi_rho, Gallagher's deweighting identity,
// Bombieri-Vinogradov discrepancy curves, Siegel-Walfisz checks and the large sieve.

#include <cstdint>
#include <string>
#include <vector>

#include "bvlab/dirichlet.hpp"
#include "bvlab/report.hpp"

namespace bvlab {

class ParallelMap;

cplx progression_sum(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a);
cplx psi_rho(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a, int rho);
// Same sum rebuilt from characters: (1/phi(q)) sum_chi conj(chi(a)) sum_n t[n] chi(n).
cplx progression_via_characters(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a);

struct GallagherSides {
  double z;
  cplx integral;  // int_{y-z}^{y} t^{rho-1} psi_{rho-1}(t) dt, piecewise exact
  cplx boundary;  // (y^rho/rho) psi_rho(y) - ((y-z)^rho/rho) psi_rho(y-z)
  double relative_deviation() const;
};

GallagherSides gallagher_sides(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a, int rho, double A);
bool gallagher_identity_check(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a, int rho, double A,
                              double tol);

// D = sum_{q <= Q} max_{(a,q)=1} max_{y <= x} |sum_{m <= y, m = a (q)} t[m]|.
double bv_discrepancy(const CoefficientTable& t, double x, double Q, const ParallelMap& pool);
double bv_discrepancy(const CoefficientTable& t, double x, double Q);
// Smoothed variant: the inner sum is psi_rho(y; q, a), maximized over y = x g / 1000, g = 1..1000.
double bv_discrepancy_smoothed(const CoefficientTable& t, double x, double Q, int rho, const ParallelMap& pool);

enum class BvWeight { plain, prime, prime_log, vonmangoldt, smoothed_rho };
std::string_view weight_name(BvWeight w);
BvWeight parse_weight(std::string_view s);

struct ExperimentConfig {
  Exemplar pi = Exemplar::delta;
  double x = 1e5;
  double eta = 2.0;
  double B = 8.0;
  double A = 1.0;
  int rho = 1;
  std::uint64_t seed = 1;
  std::int64_t q_min = 1;
  std::int64_t q_max = 0;  // 0: no cap beyond Q
  BvWeight weight = BvWeight::plain;
  std::vector<double> ladder;  // empty: powers of ten from 10^3 below x, then x
};

// eta = max(2, n/2) and rho = floor(n/4) + 1 for rank n.
ExperimentConfig default_config(Exemplar pi);
double level_Q(double x, double eta, double B);
std::vector<double> geometric_ladder(double x);

struct DiscrepancyPoint {
  double x, Q, D, D_over_x;
};

struct DiscrepancyCurve {
  std::vector<DiscrepancyPoint> points;
  ExperimentConfig config;

  // Columns x,Q,D,D_over_x,pi,eta,B,A.
  ExperimentReport to_report() const;
  bool strictly_decreasing() const;
};

// Table of the requested weight on 1..n.
CoefficientTable weighted_table(const ExemplarPi& pi, BvWeight w, std::int64_t n);

DiscrepancyCurve run_bv_curve(const ExemplarPi& pi, const ExperimentConfig& cfg, const ParallelMap& pool);

// |sum Lambda a_pi - sum_{p} lambda_pi(p) log p| over n <= x in the class a mod q.
double prime_power_correction(const ExemplarPi& pi, double x, std::int64_t q, std::int64_t a);

// Columns x,q,a,ratio with ratio = |sum_{n <= x, n = a (q)} Lambda(n) a_pi(n) - M| / x for q <= (log x)^A,
// where M = x/phi(q) for zeta and 0 for the cuspidal exemplars.
ExperimentReport siegel_walfisz_check(const ExemplarPi& pi, const std::vector<double>& xs, double A);

// sum_{q <= Q} (q/phi(q)) sum*_chi |sum c(n) chi(n)|^2 / ((Q^2 + x) sum |c(n)|^2); c[0] is c(1).
double large_sieve_ratio(const std::vector<cplx>& c, std::int64_t Q);

}  // namespace bvlab
