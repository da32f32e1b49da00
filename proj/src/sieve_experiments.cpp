#include "bvlab/sieve_experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bvlab/characters.hpp"
#include "bvlab/errors.hpp"
#include "bvlab/parallel.hpp"

namespace bvlab {

namespace {

std::int64_t ifloor(double v) { return static_cast<std::int64_t>(std::floor(v)); }

std::int64_t check_class(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a) {
  if (q < 1) throw ContractError("modulus must be >= 1");
  const std::int64_t r = ((a % q) + q) % q;
  if (std::gcd(r, q) != 1) throw ContractError("residue not coprime to modulus");
  if (ifloor(y) > t.size()) throw ContractError("y exceeds table length");
  return r;
}

std::int64_t first_in_class(std::int64_t r, std::int64_t q) { return r == 0 ? q : r; }

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

cplx progression_sum(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a) {
  const std::int64_t r = check_class(t, y, q, a);
  cplx s{};
  for (std::int64_t m = first_in_class(r, q); m <= ifloor(y); m += q) s += t[m];
  return s;
}

cplx psi_rho(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a, int rho) {
  if (rho < 0) throw ContractError("rho must be >= 0");
  if (y < 1.0) {
    check_class(t, 0.0, q, a);
    return {};
  }
  const std::int64_t r = check_class(t, y, q, a);
  cplx s{};
  for (std::int64_t m = first_in_class(r, q); m <= ifloor(y); m += q)
    s += t[m] * std::pow(1.0 - static_cast<double>(m) / y, rho);
  return s;
}

cplx progression_via_characters(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a) {
  const std::int64_t r = check_class(t, y, q, a);
  std::vector<cplx> bucket(static_cast<std::size_t>(q), cplx{});
  for (std::int64_t m = 1; m <= ifloor(y); ++m) bucket[static_cast<std::size_t>(m % q)] += t[m];
  const auto chars = enumerate_characters(q);
  cplx s{};
  for (const auto& chi : chars) {
    cplx inner{};
    for (std::int64_t b = 0; b < q; ++b) inner += chi(b) * bucket[static_cast<std::size_t>(b)];
    s += std::conj(chi(r)) * inner;
  }
  return s / static_cast<double>(chars.size());
}

double GallagherSides::relative_deviation() const {
  const double scale = std::max(std::abs(integral), std::abs(boundary));
  if (scale == 0.0) return 0.0;
  return std::abs(integral - boundary) / scale;
}

GallagherSides gallagher_sides(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a, int rho, double A) {
  if (rho < 1) throw ContractError("Gallagher identity needs rho >= 1");
  if (y < 10.0) throw ContractError("Gallagher identity needs y >= 10");
  const std::int64_t r = check_class(t, y, q, a);
  GallagherSides g;
  g.z = y / std::pow(std::log(y), A / 2.0);
  const double u = y - g.z;

  // On [j, j+1] the integrand is sum_i C(K,i) S_i (t-j)^(K-i) with
  // S_i = sum_{m <= j, m = a (q)} c_m (j-m)^i and K = rho - 1.
  const int K = rho - 1;
  std::vector<std::vector<double>> C(K + 1, std::vector<double>(K + 1, 0.0));
  for (int n = 0; n <= K; ++n)
    for (int k = 0; k <= n; ++k) C[n][k] = binom(n, k);
  std::vector<cplx> S(K + 1, cplx{}), next(K + 1);
  cplx integral{};
  const std::int64_t top = ifloor(y);
  for (std::int64_t j = 0; j <= top; ++j) {
    if (j >= 1 && ((j - r) % q == 0)) S[0] += t[j];
    const double lo = std::max(static_cast<double>(j), u);
    const double hi = std::min(static_cast<double>(j + 1), y);
    if (hi > lo) {
      const double al = lo - static_cast<double>(j), be = hi - static_cast<double>(j);
      for (int i = 0; i <= K; ++i) {
        const int d = K - i + 1;
        integral += C[K][i] * S[i] * ((std::pow(be, d) - std::pow(al, d)) / d);
      }
    }
    // Shift the centre from j to j+1.
    for (int i = 0; i <= K; ++i) {
      cplx v{};
      for (int l = 0; l <= i; ++l) v += C[i][l] * S[l];
      next[i] = v;
    }
    S.swap(next);
  }
  g.integral = integral;
  const double rd = static_cast<double>(rho);
  g.boundary = std::pow(y, rho) / rd * psi_rho(t, y, q, a, rho);
  if (u >= 1.0) g.boundary -= std::pow(u, rho) / rd * psi_rho(t, u, q, a, rho);
  return g;
}

bool gallagher_identity_check(const CoefficientTable& t, double y, std::int64_t q, std::int64_t a, int rho, double A,
                              double tol) {
  return gallagher_sides(t, y, q, a, rho, A).relative_deviation() < tol;
}

namespace {

double discrepancy_for_q(const CoefficientTable& t, std::int64_t lim, std::int64_t q) {
  std::vector<cplx> run(static_cast<std::size_t>(q), cplx{});
  std::vector<double> best(static_cast<std::size_t>(q), 0.0);
  std::int64_t r = 0;
  for (std::int64_t m = 1; m <= lim; ++m) {
    if (++r == q) r = 0;
    auto& s = run[static_cast<std::size_t>(r)];
    s += t[m];
    const double n2 = std::norm(s);
    if (n2 > best[static_cast<std::size_t>(r)]) best[static_cast<std::size_t>(r)] = n2;
  }
  double mx = 0.0;
  for (std::int64_t b = 0; b < q; ++b)
    if (std::gcd(b, q) == 1) mx = std::max(mx, best[static_cast<std::size_t>(b)]);
  return std::sqrt(mx);
}

// psi_rho(y; q, b) on a grid of y values, from per-class power sums of m.
double smoothed_discrepancy_for_q(const CoefficientTable& t, std::int64_t lim, std::int64_t q, int rho) {
  constexpr std::int64_t kGrid = 1000;
  const int R = rho;
  std::vector<cplx> sums(static_cast<std::size_t>(q * (R + 1)), cplx{});
  double mx = 0.0;
  std::int64_t m = 0;
  for (std::int64_t g = 1; g <= kGrid; ++g) {
    const double y = static_cast<double>(lim) * static_cast<double>(g) / static_cast<double>(kGrid);
    for (; m + 1 <= ifloor(y); ++m) {
      const std::int64_t n = m + 1;
      double pw = 1.0;
      for (int k = 0; k <= R; ++k, pw *= static_cast<double>(n))
        sums[static_cast<std::size_t>((n % q) * (R + 1) + k)] += t[n] * pw;
    }
    if (y < 1.0) continue;
    for (std::int64_t b = 0; b < q; ++b) {
      if (std::gcd(b, q) != 1) continue;
      cplx v{};
      double c = 1.0;
      for (int k = 0; k <= R; ++k) {
        v += c * sums[static_cast<std::size_t>(b * (R + 1) + k)];
        c *= -static_cast<double>(R - k) / ((k + 1) * y);
      }
      mx = std::max(mx, std::abs(v));
    }
  }
  return mx;
}

}  // namespace

double bv_discrepancy(const CoefficientTable& t, double x, double Q, const ParallelMap& pool) {
  const std::int64_t lim = ifloor(x);
  if (lim > t.size()) throw ContractError("x exceeds table length");
  const std::int64_t qmax = ifloor(Q);
  if (qmax < 1) return 0.0;
  std::vector<double> per(static_cast<std::size_t>(qmax), 0.0);
  pool.for_each(per.size(), [&](std::size_t i) { per[i] = discrepancy_for_q(t, lim, static_cast<std::int64_t>(i) + 1); });
  double D = 0.0;
  for (const double v : per) D += v;
  return D;
}

double bv_discrepancy(const CoefficientTable& t, double x, double Q) {
  return bv_discrepancy(t, x, Q, ParallelMap::serial());
}

double bv_discrepancy_smoothed(const CoefficientTable& t, double x, double Q, int rho, const ParallelMap& pool) {
  const std::int64_t lim = ifloor(x);
  if (lim > t.size()) throw ContractError("x exceeds table length");
  const std::int64_t qmax = ifloor(Q);
  if (qmax < 1) return 0.0;
  std::vector<double> per(static_cast<std::size_t>(qmax), 0.0);
  pool.for_each(per.size(), [&](std::size_t i) {
    per[i] = smoothed_discrepancy_for_q(t, lim, static_cast<std::int64_t>(i) + 1, rho);
  });
  double D = 0.0;
  for (const double v : per) D += v;
  return D;
}

std::string_view weight_name(BvWeight w) {
  switch (w) {
    case BvWeight::plain: return "plain";
    case BvWeight::prime: return "prime";
    case BvWeight::prime_log: return "log";
    case BvWeight::vonmangoldt: return "vonmangoldt";
    case BvWeight::smoothed_rho: return "smoothed-rho";
  }
  return "?";
}

BvWeight parse_weight(std::string_view s) {
  for (const auto w : {BvWeight::plain, BvWeight::prime, BvWeight::prime_log, BvWeight::vonmangoldt,
                       BvWeight::smoothed_rho})
    if (weight_name(w) == s) return w;
  throw ContractError("unknown weight '" + std::string(s) + "'");
}

ExperimentConfig default_config(Exemplar pi) {
  ExperimentConfig c;
  c.pi = pi;
  const int n = exemplar_rank(pi);
  c.eta = std::max(2.0, n / 2.0);
  c.rho = n / 4 + 1;
  return c;
}

double level_Q(double x, double eta, double B) { return std::pow(x, 1.0 / eta) * std::pow(std::log(x), -B); }

std::vector<double> geometric_ladder(double x) {
  std::vector<double> out;
  for (double p = 1e3; p < x * (1 - 1e-12); p *= 10.0) out.push_back(p);
  out.push_back(x);
  return out;
}

ExperimentReport DiscrepancyCurve::to_report() const {
  ExperimentReport rep("bv_curve", {"x", "Q", "D", "D_over_x", "pi", "eta", "B", "A"});
  const std::string pi(exemplar_name(config.pi));
  for (const auto& p : points) rep.add_row({p.x, p.Q, p.D, p.D_over_x, pi, config.eta, config.B, config.A});
  rep.set_meta("weight", std::string(weight_name(config.weight)));
  rep.set_meta("rho", static_cast<double>(config.rho));
  rep.set_meta("seed", std::to_string(config.seed));
  rep.note("moduli carry unit weight: over Q the narrow ray class weight h(m)/phi(m) is constant");
  return rep;
}

bool DiscrepancyCurve::strictly_decreasing() const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].D_over_x < points[i - 1].D_over_x)) return false;
  return !points.empty();
}

CoefficientTable weighted_table(const ExemplarPi& pi, BvWeight w, std::int64_t n) {
  const FactorSieve sieve(std::max<std::int64_t>(n, 1));
  switch (w) {
    case BvWeight::plain:
    case BvWeight::smoothed_rho: return lambda_table(pi, n, sieve);
    case BvWeight::vonmangoldt: return von_mangoldt_a(pi, n, sieve);
    case BvWeight::prime:
    case BvWeight::prime_log: {
      CoefficientTable t(TableRole::custom, n);
      for (const auto p32 : sieve.primes()) {
        const std::int64_t p = p32;
        if (p > n) break;
        t[p] = lambda_pk(satake_at(pi, p), 1);
        if (w == BvWeight::prime_log) t[p] *= std::log(static_cast<double>(p));
      }
      return t;
    }
  }
  throw ContractError("unknown weight");
}

DiscrepancyCurve run_bv_curve(const ExemplarPi& pi, const ExperimentConfig& cfg, const ParallelMap& pool) {
  DiscrepancyCurve curve;
  curve.config = cfg;
  const std::vector<double> ladder = cfg.ladder.empty() ? geometric_ladder(cfg.x) : cfg.ladder;
  const double xmax = *std::max_element(ladder.begin(), ladder.end());
  const CoefficientTable t = weighted_table(pi, cfg.weight, ifloor(xmax));
  for (const double x : ladder) {
    double Q = level_Q(x, cfg.eta, cfg.B);
    if (cfg.q_max > 0) Q = std::min(Q, static_cast<double>(cfg.q_max));
    double D = cfg.weight == BvWeight::smoothed_rho ? bv_discrepancy_smoothed(t, x, Q, cfg.rho, pool)
                                                    : bv_discrepancy(t, x, Q, pool);
    if (cfg.q_min > 1) {
      const double below = std::min(Q, static_cast<double>(cfg.q_min - 1));
      D -= cfg.weight == BvWeight::smoothed_rho ? bv_discrepancy_smoothed(t, x, below, cfg.rho, pool)
                                                : bv_discrepancy(t, x, below, pool);
    }
    curve.points.push_back({x, Q, D, D / x});
  }
  std::sort(curve.points.begin(), curve.points.end(),
            [](const DiscrepancyPoint& a, const DiscrepancyPoint& b) { return a.x < b.x; });
  return curve;
}

double prime_power_correction(const ExemplarPi& pi, double x, std::int64_t q, std::int64_t a) {
  const std::int64_t n = ifloor(x);
  const CoefficientTable vm = weighted_table(pi, BvWeight::vonmangoldt, n);
  const CoefficientTable pl = weighted_table(pi, BvWeight::prime_log, n);
  return std::abs(progression_sum(vm, x, q, a) - progression_sum(pl, x, q, a));
}

ExperimentReport siegel_walfisz_check(const ExemplarPi& pi, const std::vector<double>& xs, double A) {
  ExperimentReport rep("siegel_walfisz", {"x", "q", "a", "ratio"});
  rep.set_meta("pi", std::string(exemplar_name(pi.name)));
  rep.set_meta("A", A);
  if (xs.empty()) return rep;
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const CoefficientTable vm = weighted_table(pi, BvWeight::vonmangoldt, ifloor(sorted.back()));
  std::vector<double> maxima;
  for (const double x : sorted) {
    const std::int64_t qmax = ifloor(std::pow(std::log(x), A));
    double mx = 0.0;
    bool any = false;
    for (std::int64_t q = 1; q <= qmax; ++q) {
      std::vector<cplx> bucket(static_cast<std::size_t>(q), cplx{});
      for (std::int64_t m = 1; m <= ifloor(x); ++m) bucket[static_cast<std::size_t>(m % q)] += vm[m];
      for (std::int64_t b = 0; b < q; ++b) {
        if (std::gcd(b, q) != 1) continue;
        // The trivial representation carries the main term x / phi(q).
        const double main = pi.name == Exemplar::zeta ? x / static_cast<double>(euler_phi(q)) : 0.0;
        const double ratio = std::abs(bucket[static_cast<std::size_t>(b)] - main) / x;
        rep.add_row({x, q, first_in_class(b, q), ratio});
        mx = std::max(mx, ratio);
        any = true;
      }
    }
    if (!any) rep.note("x=" + format_number(x) + ": modulus range q <= (log x)^A is empty");
    maxima.push_back(any ? mx : 0.0);
  }
  bool flag = false;
  for (std::size_t i = 1; i < maxima.size(); ++i)
    if (maxima[i] >= maxima[i - 1] && maxima[i] > 0.0) flag = true;
  rep.set_flag("max_not_decreasing", flag);
  return rep;
}

double large_sieve_ratio(const std::vector<cplx>& c, std::int64_t Q) {
  const auto x = static_cast<std::int64_t>(c.size());
  if (Q > 1000) throw SizeLimitError("large_sieve_ratio: Q exceeds 10^3");
  if (x > 1'000'000) throw SizeLimitError("large_sieve_ratio: x exceeds 10^6");
  double l2 = 0.0;
  for (const auto& v : c) l2 += std::norm(v);
  if (l2 == 0.0 || Q < 1) return 0.0;
  double lhs = 0.0;
  for (std::int64_t q = 1; q <= Q; ++q) {
    std::vector<cplx> bucket(static_cast<std::size_t>(q), cplx{});
    for (std::int64_t n = 1; n <= x; ++n) bucket[static_cast<std::size_t>(n % q)] += c[static_cast<std::size_t>(n - 1)];
    double inner = 0.0;
    for (const auto& chi : primitive_characters(q)) {
      cplx s{};
      for (std::int64_t b = 0; b < q; ++b) s += chi(b) * bucket[static_cast<std::size_t>(b)];
      inner += std::norm(s);
    }
    lhs += static_cast<double>(q) / static_cast<double>(euler_phi(q)) * inner;
  }
  return lhs / ((static_cast<double>(Q) * Q + static_cast<double>(x)) * l2);
}

}  // namespace bvlab
