#pragma once

// Generalized Vaughan identity for -L'/L(s, pi) and the S1..S4 split of a
// progression sum of Lambda(n) a_pi(n), with the bilinear coefficient builders.

#include <cstdint>
#include <string>
#include <vector>

#include "bvlab/dirichlet.hpp"

namespace bvlab {

struct VaughanParams {
  double X = 50.5;
  double Y = 50.5;
  double y = 1000.0;
  std::int64_t q = 1;
  std::int64_t a = 1;

  // Throws ContractError unless X = Y, 1 < X <= y, q >= 1, gcd(a, q) = 1.
  void validate() const;
};

struct VaughanDecomposition {
  cplx S1, S2, S3, S4;
  cplx direct;

  cplx combined() const { return S1 + S2 - S3 + S4; }
  double residual() const { return std::abs(combined() - direct); }
};

// lambda, mu, Lambda a and lambda*log on 1..N for one exemplar.
struct VaughanTables {
  CoefficientTable lambda;
  CoefficientTable mu;
  CoefficientTable vm;
  CoefficientTable lambda_log;

  std::int64_t size() const { return lambda.size(); }
};

VaughanTables make_vaughan_tables(const ExemplarPi& pi, std::int64_t n);

// Right side of the identity at the single integer n0 (> Y), against Lambda a(n0).
cplx vaughan_identity_rhs(const VaughanTables& t, std::int64_t n0, double X, double Y);
bool vaughan_identity_check(const ExemplarPi& pi, std::int64_t n0, double X, double Y, double tol);

VaughanDecomposition decompose(const VaughanParams& params, const VaughanTables& tables);
VaughanDecomposition decompose(const ExemplarPi& pi, const VaughanParams& params);

// S3 via alpha and S4 via beta (the regrouped forms).
cplx s3_via_alpha(const VaughanParams& params, const VaughanTables& t, const CoefficientTable& alpha);
cplx s4_via_beta(const VaughanParams& params, const VaughanTables& t, const CoefficientTable& beta);

CoefficientTable alpha_coeff(const VaughanTables& t, double X, std::int64_t n);
CoefficientTable beta_coeff(const VaughanTables& t, double X, std::int64_t n);
CoefficientTable b_coeff(const VaughanTables& t, std::int64_t n);

CoefficientTable alpha_coeff(const ExemplarPi& pi, double X, std::int64_t n);
CoefficientTable beta_coeff(const ExemplarPi& pi, double X, std::int64_t n);
CoefficientTable b_coeff(const ExemplarPi& pi, std::int64_t n);

// {q, a, y, X, S1..S4, direct, residual}; complex values as [re, im].
std::string decomposition_json(const VaughanParams& params, const VaughanDecomposition& d);

struct GrowthTripwire {
  double x;
  double vm_ratio;     // sum |Lambda a|^2 / x
  double alpha_ratio;  // sum |alpha|^2 / (x log^{n+2} x)
  double beta_ratio;   // sum |beta|^2 / (x log^{4n+3} x)
};

// alpha and beta are built with X = sqrt(x).
std::vector<GrowthTripwire> second_moment_tripwires(const ExemplarPi& pi, const std::vector<double>& xs);

std::int64_t mod_inverse(std::int64_t a, std::int64_t q);

}  // namespace bvlab
