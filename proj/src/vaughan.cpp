#include "bvlab/vaughan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "json.hpp"

#include "bvlab/errors.hpp"

namespace bvlab {

std::int64_t mod_inverse(std::int64_t a, std::int64_t q) {
  if (q == 1) return 0;
  std::int64_t r0 = q, r1 = ((a % q) + q) % q, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
  }
  if (r0 != 1) throw ContractError("mod_inverse: not a unit");
  return ((s0 % q) + q) % q;
}

void VaughanParams::validate() const {
  if (X != Y) throw ContractError("Vaughan parameters need X = Y");
  if (!(X > 1.0) || X > y) throw ContractError("Vaughan parameters need 1 < X <= y");
  if (q < 1) throw ContractError("modulus must be >= 1");
  if (std::gcd(((a % q) + q) % q, q) != 1) throw ContractError("residue not coprime to modulus");
}

VaughanTables make_vaughan_tables(const ExemplarPi& pi, std::int64_t n) {
  const FactorSieve sieve(std::max<std::int64_t>(n, 1));
  VaughanTables t{lambda_table(pi, n, sieve), mu_table(pi, n, sieve), von_mangoldt_a(pi, n, sieve), {}};
  t.lambda_log = t.lambda;
  for (std::int64_t m = 1; m <= n; ++m) t.lambda_log[m] *= std::log(static_cast<double>(m));
  return t;
}

cplx vaughan_identity_rhs(const VaughanTables& t, std::int64_t n0, double X, double Y) {
  if (static_cast<double>(n0) <= Y) throw ContractError("identity needs n0 > Y");
  if (n0 > t.size()) throw ContractError("tables shorter than n0");
  cplx first{}, second{}, third{};
  for (std::int64_t b = 1; b <= n0; ++b) {
    if (n0 % b) continue;
    const std::int64_t rest = n0 / b;
    if (b <= X) first += t.mu[b] * t.lambda_log[rest];
    for (std::int64_t c = 1; c <= rest; ++c) {
      if (rest % c || t.vm[c] == cplx{}) continue;
      const cplx term = t.lambda[rest / c] * t.mu[b] * t.vm[c];
      if (b <= X && c <= Y) second += term;
      if (b > X && c > Y) third += term;
    }
  }
  return first - second + third;
}

bool vaughan_identity_check(const ExemplarPi& pi, std::int64_t n0, double X, double Y, double tol) {
  if (static_cast<double>(n0) <= Y) throw ContractError("identity needs n0 > Y");
  const VaughanTables t = make_vaughan_tables(pi, n0);
  return std::abs(vaughan_identity_rhs(t, n0, X, Y) - t.vm[n0]) <= tol;
}

namespace {

std::int64_t ifloor(double v) { return static_cast<std::int64_t>(std::floor(v)); }

// Sum of t[m] over m <= lim with m = r (mod q), 1 <= r <= q.
cplx class_sum(const CoefficientTable& t, std::int64_t lim, std::int64_t r, std::int64_t q) {
  cplx s{};
  for (std::int64_t m = r; m <= lim; m += q) s += t[m];
  return s;
}

std::int64_t first_rep(std::int64_t r, std::int64_t q) {
  r %= q;
  return r <= 0 ? r + q : r;
}

}  // namespace

VaughanDecomposition decompose(const VaughanParams& p, const VaughanTables& t) {
  p.validate();
  const std::int64_t ylim = ifloor(p.y);
  if (ylim > t.size()) throw ContractError("decompose: tables shorter than y");
  const std::int64_t q = p.q;
  const std::int64_t a = ((p.a % q) + q) % q;
  const std::int64_t xlim = ifloor(p.X);
  const std::int64_t ylim_small = ifloor(p.Y);
  VaughanDecomposition d;

  d.direct = class_sum(t.vm, ylim, first_rep(a, q), q);
  d.S1 = class_sum(t.vm, std::min(ylim_small, ylim), first_rep(a, q), q);

  for (std::int64_t b = 1; b <= xlim; ++b) {
    if (t.mu[b] == cplx{} || std::gcd(b, q) != 1) continue;
    const std::int64_t r = first_rep(a * mod_inverse(b, q), q);
    d.S2 += t.mu[b] * class_sum(t.lambda_log, ylim / b, r, q);
  }

  for (std::int64_t b = 1; b <= xlim; ++b) {
    if (t.mu[b] == cplx{} || std::gcd(b, q) != 1) continue;
    for (std::int64_t c = 1; c <= ylim_small && b * c <= ylim; ++c) {
      if (t.vm[c] == cplx{} || std::gcd(c, q) != 1) continue;
      const std::int64_t r = first_rep(a * mod_inverse((b * c) % q, q), q);
      d.S3 += t.mu[b] * t.vm[c] * class_sum(t.lambda, ylim / (b * c), r, q);
    }
  }

  // b > X, c > Y, b c d <= y.
  for (std::int64_t b = xlim + 1; b * (ylim_small + 1) <= ylim; ++b) {
    if (t.mu[b] == cplx{} || std::gcd(b, q) != 1) continue;
    for (std::int64_t c = ylim_small + 1; b * c <= ylim; ++c) {
      if (t.vm[c] == cplx{} || std::gcd(c, q) != 1) continue;
      const std::int64_t r = first_rep(a * mod_inverse((b * c) % q, q), q);
      d.S4 += t.mu[b] * t.vm[c] * class_sum(t.lambda, ylim / (b * c), r, q);
    }
  }
  return d;
}

VaughanDecomposition decompose(const ExemplarPi& pi, const VaughanParams& params) {
  return decompose(params, make_vaughan_tables(pi, ifloor(params.y)));
}

CoefficientTable alpha_coeff(const VaughanTables& t, double X, std::int64_t n) {
  if (n > t.size()) throw ContractError("alpha_coeff: tables shorter than N");
  CoefficientTable out(TableRole::alpha_Fpi, n);
  const std::int64_t xlim = std::min(ifloor(X), n);
  for (std::int64_t b = 1; b <= xlim; ++b) {
    if (t.mu[b] == cplx{}) continue;
    for (std::int64_t c = 1; c <= xlim && b * c <= n; ++c) out[b * c] += t.mu[b] * t.vm[c];
  }
  return out;
}

CoefficientTable beta_coeff(const VaughanTables& t, double X, std::int64_t n) {
  if (n > t.size()) throw ContractError("beta_coeff: tables shorter than N");
  CoefficientTable out(TableRole::beta_Fpi, n);
  for (std::int64_t b = std::max<std::int64_t>(ifloor(X) + 1, 1); b <= n; ++b) {
    if (t.mu[b] == cplx{}) continue;
    for (std::int64_t d = 1; b * d <= n; ++d) out[b * d] += t.mu[b] * t.lambda[d];
  }
  return out;
}

CoefficientTable b_coeff(const VaughanTables& t, std::int64_t n) {
  if (n > t.size()) throw ContractError("b_coeff: tables shorter than N");
  CoefficientTable out(TableRole::b_Fpi, n);
  for (std::int64_t b = 1; b <= n; ++b) {
    const double mb = std::abs(t.mu[b]);
    if (mb == 0.0) continue;
    for (std::int64_t a = 1; a * b <= n; ++a) out[a * b] += std::abs(t.lambda[a]) * mb;
  }
  return out;
}

CoefficientTable alpha_coeff(const ExemplarPi& pi, double X, std::int64_t n) {
  return alpha_coeff(make_vaughan_tables(pi, n), X, n);
}
CoefficientTable beta_coeff(const ExemplarPi& pi, double X, std::int64_t n) {
  return beta_coeff(make_vaughan_tables(pi, n), X, n);
}
CoefficientTable b_coeff(const ExemplarPi& pi, std::int64_t n) { return b_coeff(make_vaughan_tables(pi, n), n); }

cplx s3_via_alpha(const VaughanParams& p, const VaughanTables& t, const CoefficientTable& alpha) {
  const std::int64_t ylim = ifloor(p.y);
  const std::int64_t q = p.q;
  const std::int64_t a = ((p.a % q) + q) % q;
  const std::int64_t top = std::min<std::int64_t>(ylim, std::min(alpha.size(), ifloor(p.X * p.X)));
  cplx s{};
  for (std::int64_t n = 1; n <= top; ++n) {
    if (alpha[n] == cplx{} || std::gcd(n, q) != 1) continue;
    s += alpha[n] * class_sum(t.lambda, ylim / n, first_rep(a * mod_inverse(n % q, q), q), q);
  }
  return s;
}

cplx s4_via_beta(const VaughanParams& p, const VaughanTables& t, const CoefficientTable& beta) {
  const std::int64_t ylim = ifloor(p.y);
  const std::int64_t q = p.q;
  const std::int64_t a = ((p.a % q) + q) % q;
  const std::int64_t clo = ifloor(p.Y) + 1;
  cplx s{};
  for (std::int64_t n = ifloor(p.X) + 1; n * clo <= ylim; ++n) {
    if (beta[n] == cplx{} || std::gcd(n, q) != 1) continue;
    const std::int64_t r = first_rep(a * mod_inverse(n % q, q), q);
    // c runs over (Y, y/n] in the class r.
    std::int64_t c = clo + ((r - clo) % q + q) % q;
    cplx inner{};
    for (; c <= ylim / n; c += q) inner += t.vm[c];
    s += beta[n] * inner;
  }
  return s;
}

std::string decomposition_json(const VaughanParams& p, const VaughanDecomposition& d) {
  const auto pair = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  nlohmann::json j;
  j["q"] = p.q;
  j["a"] = p.a;
  j["y"] = p.y;
  j["X"] = p.X;
  j["S1"] = pair(d.S1);
  j["S2"] = pair(d.S2);
  j["S3"] = pair(d.S3);
  j["S4"] = pair(d.S4);
  j["direct"] = pair(d.direct);
  j["residual"] = d.residual();
  return j.dump();
}

std::vector<GrowthTripwire> second_moment_tripwires(const ExemplarPi& pi, const std::vector<double>& xs) {
  std::vector<GrowthTripwire> out;
  if (xs.empty()) return out;
  const std::int64_t nmax = ifloor(*std::max_element(xs.begin(), xs.end()));
  const VaughanTables t = make_vaughan_tables(pi, nmax);
  const double n = pi.rank();
  for (const double x : xs) {
    const std::int64_t lim = ifloor(x);
    const double X = std::sqrt(x);
    const CoefficientTable alpha = alpha_coeff(t, X, lim);
    const CoefficientTable beta = beta_coeff(t, X, lim);
    double sv = 0, sa = 0, sb = 0;
    for (std::int64_t m = 1; m <= lim; ++m) {
      sv += std::norm(t.vm[m]);
      sa += std::norm(alpha[m]);
      sb += std::norm(beta[m]);
    }
    const double L = std::log(x);
    out.push_back({x, sv / x, sa / (x * std::pow(L, n + 2)), sb / (x * std::pow(L, 4 * n + 3))});
  }
  return out;
}

}  // namespace bvlab
