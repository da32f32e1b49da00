#include "bvlab/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "bvlab/errors.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/rng.hpp"
#include "json.hpp"

namespace bvlab {

FormalSeries exp_series(const std::vector<cplx>& b) {
  const int K = std::max<int>(0, static_cast<int>(b.size()) - 1);
  if (K > 64) throw SizeLimitError("exp_series: K exceeds 64");
  FormalSeries c{std::vector<cplx>(K + 1, cplx{})};
  c.coeffs[0] = 1.0;
  for (int m = 1; m <= K; ++m) {
    cplx s{};
    for (int k = 1; k <= m; ++k) s += b[k] * c.coeffs[m - k];
    c.coeffs[m] = s / static_cast<double>(m);
  }
  return c;
}

std::vector<cplx> log_series(const FormalSeries& c) {
  const int K = c.order();
  if (K < 0 || std::abs(c.coeffs[0] - 1.0) > 1e-12) throw ContractError("log_series: c(0) must be 1");
  std::vector<cplx> b(K + 1, cplx{});
  for (int m = 1; m <= K; ++m) {
    cplx s = static_cast<double>(m) * c.coeffs[m];
    for (int k = 1; k < m; ++k) s -= b[k] * c.coeffs[m - k];
    b[m] = s;
  }
  return b;
}

FormalSeries series_mul(const FormalSeries& f, const FormalSeries& g) {
  const int K = std::min(f.order(), g.order());
  FormalSeries out{std::vector<cplx>(K + 1, cplx{})};
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) out.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
  return out;
}

FormalSeries series_pow(const FormalSeries& f, int e) {
  FormalSeries out{std::vector<cplx>(f.coeffs.size(), cplx{})};
  out.coeffs[0] = 1.0;
  for (int i = 0; i < e; ++i) out = series_mul(out, f);
  return out;
}

SoundResult soundararajan_detail(const std::vector<cplx>& b, int K) {
  if (K > 64) throw SizeLimitError("soundararajan_check: K exceeds 64");
  std::vector<cplx> bb(K + 1, cplx{}), mod2(K + 1, cplx{});
  for (int k = 1; k <= K && k < static_cast<int>(b.size()); ++k) {
    bb[k] = b[k];
    mod2[k] = std::norm(b[k]);
  }
  const FormalSeries c = exp_series(bb);
  const FormalSeries C = exp_series(mod2);
  SoundResult r;
  r.worst_margin = HUGE_VAL;
  for (int m = 0; m <= K; ++m) {
    const double cap = C.coeffs[m].real();
    const double margin = cap * (1.0 + kInequalitySlack) - std::norm(c.coeffs[m]);
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_m = m;
    }
    // Absolute floor for the exact-zero cases.
    if (margin < -kInequalitySlack) r.pass = false;
  }
  return r;
}

bool soundararajan_check(const std::vector<cplx>& b, int K) { return soundararajan_detail(b, K).pass; }

bool DominationEntry::pass() const { return margin() >= -kInequalitySlack * std::max(1.0, std::fabs(rhs)); }

double b_local(const SatakeSet& s, int k) {
  const auto e = symcore::elementary_all(s.params());
  const auto h = symcore::complete_homogeneous_upto(k, s.params());
  double total = 0.0;
  for (int l = 0; l <= std::min(k, s.rank()); ++l) total += std::abs(e[l] * h[k - l]);
  return total;
}

std::vector<DominationEntry> check_coefficient_dominations(const SatakeSet& s, int kmax) {
  if (kmax > 12) throw SizeLimitError("check_coefficient_dominations: kmax exceeds 12");
  const int n = s.rank();
  const ComplexMultiset rs_roots = s.params().times_conjugate();
  FormalSeries rs{std::vector<cplx>(kmax + 1)};
  for (int k = 0; k <= kmax; ++k) rs.coeffs[k] = rs_lambda_pk(s, k);
  const FormalSeries rs_pow = series_pow(rs, n + 1);

  std::vector<DominationEntry> out;
  for (int k = 0; k <= kmax; ++k) {
    const double rsl = rs.coeffs[k].real();
    if (k >= 1) {
      out.push_back({"coeffpair", k, std::norm(a_pk(s, k)), symcore::power_sum(k, rs_roots).real()});
    }
    out.push_back({"ineq-2rs", k, std::norm(lambda_pk(s, k)), rsl});
    const double b = b_local(s, k);
    out.push_back({"ineq-pk", k, b * b, 4.0 * (n + 1) * rsl});
    const double mu2 = std::norm(mu_pk(s, k));
    out.push_back({"mobius", k, mu2, rsl});
    out.push_back({"mobius-divisor", k, (k + 1) * mu2, rs_pow.coeffs[k].real()});
  }
  return out;
}

FormalSeries pistar_series(const SatakeSet& s, int chi_p, int chiprime_p, int kmax) {
  if (kmax > 32) throw SizeLimitError("pistar_nonneg_check: kmax exceeds 32");
  for (const int v : {chi_p, chiprime_p})
    if (v < -1 || v > 1) throw ContractError("quadratic local values must lie in {-1, 0, 1}");
  std::vector<cplx> b(kmax + 1, cplx{});
  int ck = 1, cpk = 1;
  for (int k = 1; k <= kmax; ++k) {
    ck *= chi_p;
    cpk *= chiprime_p;
    b[k] = std::norm(1.0 + a_pk(s, k)) * (1.0 + ck) * (1.0 + cpk);
  }
  return exp_series(b);
}

bool pistar_nonneg_check(const SatakeSet& s, int chi_p, int chiprime_p, int kmax) {
  const FormalSeries c = pistar_series(s, chi_p, chiprime_p, kmax);
  return std::all_of(c.coeffs.begin(), c.coeffs.end(), [](cplx v) { return v.real() >= -kInequalitySlack; });
}

std::string counterexample_json(std::uint64_t seed, const SatakeSet& s, int k, double lhs, double rhs,
                                const std::string& id) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  auto sat = nlohmann::json::array();
  for (const auto& v : s.params().values()) sat.push_back({v.real(), v.imag()});
  j["satake"] = sat;
  j["k"] = k;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["inequality_id"] = id;
  return j.dump();
}

namespace {

const std::vector<std::string>& sweep_ids() {
  static const std::vector<std::string> ids = {"sound-auto", "coeffpair",      "ineq-2rs",     "ineq-pk",
                                               "mobius",     "mobius-divisor", "pistar-nonneg"};
  return ids;
}

struct TrialOutcome {
  std::vector<double> margins;  // per id, worst scaled margin
  std::vector<std::string> dumps;
};

TrialOutcome run_trial(std::uint64_t root, std::int64_t trial, const InequalitySweepOptions& opt) {
  const std::uint64_t seed = derive_seed(root, static_cast<std::uint64_t>(trial));
  Rng rng(seed);
  const auto& ids = sweep_ids();
  TrialOutcome out{std::vector<double>(ids.size(), HUGE_VAL), std::vector<std::string>(ids.size())};

  const int n = static_cast<int>(uniform_int(rng, 1, opt.max_rank));
  static const std::int64_t small_primes[] = {2, 3, 5, 7, 11, 13, 101, 997};
  const bool bounded = opt.bounded_mode && (trial % 2 == 1);
  const std::int64_t p = small_primes[uniform_int(rng, 0, 7)];
  const SatakeSet s = bounded ? random_bounded_satake(n, p, rng) : random_unitary_satake(n, rng);

  // Soundararajan on free complex b with |b(k)| <= 5.
  {
    const int K = 20;
    std::vector<cplx> b(K + 1);
    for (int k = 1; k <= K; ++k) b[k] = std::polar(uniform(rng, 0.0, 5.0), uniform(rng, -M_PI, M_PI));
    const SoundResult r = soundararajan_detail(b, K);
    out.margins[0] = r.pass ? 0.0 : r.worst_margin;
    if (!r.pass) out.dumps[0] = counterexample_json(seed, s, r.worst_m, 0.0, r.worst_margin, ids[0]);
  }
  for (const auto& e : check_coefficient_dominations(s, opt.kmax)) {
    const auto idx = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), e.id) - ids.begin());
    const double scaled = e.margin() / std::max(1.0, std::fabs(e.rhs));
    if (scaled < out.margins[idx]) {
      out.margins[idx] = scaled;
      if (!e.pass()) out.dumps[idx] = counterexample_json(seed, s, e.k, e.lhs, e.rhs, e.id);
    }
  }
  {
    const int chi = static_cast<int>(uniform_int(rng, -1, 1));
    const int chip = static_cast<int>(uniform_int(rng, -1, 1));
    const FormalSeries c = pistar_series(s, chi, chip, 16);
    double worst = HUGE_VAL;
    int worst_k = 0;
    for (int m = 0; m <= c.order(); ++m)
      if (c.coeffs[m].real() < worst) {
        worst = c.coeffs[m].real();
        worst_k = m;
      }
    const std::size_t idx = ids.size() - 1;
    out.margins[idx] = std::min(0.0, worst);
    if (worst < -kInequalitySlack) out.dumps[idx] = counterexample_json(seed, s, worst_k, -worst, 0.0, ids[idx]);
  }
  return out;
}

}  // namespace

std::vector<InequalityTally> run_inequality_sweep(std::uint64_t root_seed, const InequalitySweepOptions& opt,
                                                  const ParallelMap& pool) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(opt.trials));
  pool.for_each(outcomes.size(), [&](std::size_t i) {
    outcomes[i] = run_trial(root_seed, static_cast<std::int64_t>(i), opt);
  });
  const auto& ids = sweep_ids();
  std::vector<InequalityTally> tallies(ids.size());
  for (std::size_t j = 0; j < ids.size(); ++j) {
    tallies[j].id = ids[j];
    tallies[j].worst_margin = HUGE_VAL;
  }
  for (const auto& o : outcomes) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      auto& t = tallies[j];
      ++t.trials;
      t.worst_margin = std::min(t.worst_margin, o.margins[j]);
      if (!o.dumps[j].empty()) {
        ++t.violations;
        if (t.first_counterexample.empty()) t.first_counterexample = o.dumps[j];
      }
    }
  }
  return tallies;
}

namespace {

CoefficientTable rs_table_for(const ExemplarPi& pi, std::int64_t n, const FactorSieve& sieve) {
  return rs_lambda_table(pi, n, sieve);
}

CoefficientTable conv_power(const CoefficientTable& f, int e) {
  CoefficientTable out = unit_table(f.size());
  for (int i = 0; i < e; ++i) out = dirichlet_convolve(out, f);
  return out;
}

double scaled_margin(double lhs, double rhs) { return (rhs - lhs) / std::max(1.0, std::fabs(rhs)); }

}  // namespace

double global_rs_domination_margin(const ExemplarPi& pi, std::int64_t n) {
  const FactorSieve sieve(n);
  const CoefficientTable lam = lambda_table(pi, n, sieve);
  const CoefficientTable rs = rs_table_for(pi, n, sieve);
  double worst = HUGE_VAL;
  for (std::int64_t m = 1; m <= n; ++m) worst = std::min(worst, scaled_margin(std::norm(lam[m]), rs[m].real()));
  return worst;
}

double global_bfpi_margin(const ExemplarPi& pi, std::int64_t n) {
  const FactorSieve sieve(n);
  const CoefficientTable lam = lambda_table(pi, n, sieve);
  const CoefficientTable mu = mu_table(pi, n, sieve);
  CoefficientTable abs_lam(TableRole::custom, n), abs_mu(TableRole::custom, n);
  for (std::int64_t m = 1; m <= n; ++m) {
    abs_lam[m] = std::abs(lam[m]);
    abs_mu[m] = std::abs(mu[m]);
  }
  const CoefficientTable b = dirichlet_convolve(abs_lam, abs_mu);
  const CoefficientTable bound = conv_power(rs_table_for(pi, n, sieve), 4 * (pi.rank() + 1));
  double worst = HUGE_VAL;
  for (std::int64_t m = 1; m <= n; ++m) worst = std::min(worst, scaled_margin(std::norm(b[m]), bound[m].real()));
  return worst;
}

double global_mobius_divisor_margin(const ExemplarPi& pi, std::int64_t n) {
  const FactorSieve sieve(n);
  const CoefficientTable mu = mu_table(pi, n, sieve);
  const CoefficientTable d = divisor_table(n, sieve);
  const CoefficientTable bound = conv_power(rs_table_for(pi, n, sieve), pi.rank() + 1);
  double worst = HUGE_VAL;
  for (std::int64_t m = 1; m <= n; ++m)
    worst = std::min(worst, scaled_margin(d[m].real() * std::norm(mu[m]), bound[m].real()));
  return worst;
}

ExperimentReport growth_estimates_report(const ExemplarPi& pi, const std::vector<double>& xs, double tripwire) {
  ExperimentReport rep("growth_estimates", {"x", "ratio_b2", "ratio_mu2", "ratio_dmu2"});
  rep.set_meta("pi", std::string(exemplar_name(pi.name)));
  rep.set_meta("tripwire", tripwire);
  if (xs.empty()) return rep;
  const auto nmax = static_cast<std::int64_t>(std::floor(*std::max_element(xs.begin(), xs.end())));
  const FactorSieve sieve(std::max<std::int64_t>(nmax, 1));
  const CoefficientTable lam = lambda_table(pi, nmax, sieve);
  const CoefficientTable mu = mu_table(pi, nmax, sieve);
  const CoefficientTable d = divisor_table(nmax, sieve);
  CoefficientTable abs_lam(TableRole::custom, nmax), abs_mu(TableRole::custom, nmax);
  for (std::int64_t m = 1; m <= nmax; ++m) {
    abs_lam[m] = std::abs(lam[m]);
    abs_mu[m] = std::abs(mu[m]);
  }
  const CoefficientTable b = dirichlet_convolve(abs_lam, abs_mu);
  const double n = pi.rank();
  bool raised = false;
  for (const double x : xs) {
    const auto lim = static_cast<std::int64_t>(std::floor(x));
    double sb = 0, sm = 0, sd = 0;
    for (std::int64_t m = 1; m <= lim; ++m) {
      const double mu2 = std::norm(mu[m]);
      sb += std::norm(b[m]);
      sm += mu2;
      sd += d[m].real() * mu2;
    }
    const double L = std::log(std::max(x, 2.0));
    const double r1 = sb / (x * std::pow(L, 4 * n + 3));
    const double r2 = sm / x;
    const double r3 = sd / (x * std::pow(L, n));
    raised = raised || r1 > tripwire || r2 > tripwire || r3 > tripwire;
    rep.add_row({x, r1, r2, r3});
  }
  rep.set_flag("exceeds_tripwire", raised);
  return rep;
}

}  // namespace bvlab
