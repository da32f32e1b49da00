#include "bvlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bvlab/characters.hpp"
#include "bvlab/errors.hpp"
#include "bvlab/inequalities.hpp"
#include "bvlab/localcoeffs.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/rng.hpp"
#include "bvlab/sieve_experiments.hpp"
#include "bvlab/symcore.hpp"
#include "bvlab/vaughan.hpp"
#include "json.hpp"

namespace bvlab {

using cplx = std::complex<double>;
using nlohmann::ordered_json;

std::string_view suite_name(VerifySuite s) {
  switch (s) {
    case VerifySuite::symcore: return "symcore";
    case VerifySuite::local: return "local";
    case VerifySuite::vaughan: return "vaughan";
    case VerifySuite::inequalities: return "inequalities";
    case VerifySuite::characters: return "characters";
    case VerifySuite::all: return "all";
  }
  return "?";
}

VerifySuite parse_suite(std::string_view s) {
  for (auto v : {VerifySuite::symcore, VerifySuite::local, VerifySuite::vaughan, VerifySuite::inequalities,
                 VerifySuite::characters, VerifySuite::all})
    if (suite_name(v) == s) return v;
  throw ContractError("unknown suite: " + std::string(s));
}

std::vector<cplx> product_series(const std::vector<cplx>& a, int sign, int kmax) {
  std::vector<cplx> c(static_cast<std::size_t>(kmax) + 1, 0.0);
  c[0] = 1.0;
  for (const auto& z : a) {
    if (sign > 0) {  // multiply by (1 - z x)
      for (int k = kmax; k >= 1; --k) c[k] -= z * c[k - 1];
    } else {  // multiply by 1/(1 - z x)
      for (int k = 1; k <= kmax; ++k) c[k] += z * c[k - 1];
    }
  }
  return c;
}

namespace {

class Recorder {
 public:
  explicit Recorder(std::string suite) { r_.suite = std::move(suite); }

  void check(bool ok, const std::string& name, ordered_json detail = {}) {
    ++r_.checks;
    if (ok) return;
    if (r_.failures.size() < 20) {
      ordered_json j;
      j["suite"] = r_.suite;
      j["check"] = name;
      j["detail"] = std::move(detail);
      r_.failures.push_back(j.dump());
    } else if (r_.failures.size() == 20) {
      r_.failures.push_back(R"({"truncated":true})");
    }
  }
  void close(double a, cplx got, cplx want, double tol, const std::string& name) {
    double err = std::abs(got - want) / std::max(1.0, std::abs(want));
    check(err <= tol, name, {{"got", {got.real(), got.imag()}}, {"want", {want.real(), want.imag()}}, {"param", a}});
  }
  SuiteResult take() { return std::move(r_); }

 private:
  SuiteResult r_;
};

symcore::ComplexMultiset random_multiset(Rng& rng, int n) {
  std::vector<cplx> v;
  for (int j = 0; j < n; ++j) v.push_back(std::polar(uniform(rng, 0.2, 1.3), uniform(rng, -3.14159, 3.14159)));
  return symcore::ComplexMultiset(std::move(v));
}

}  // namespace

SuiteResult verify_symcore(std::uint64_t seed) {
  using namespace symcore;
  Recorder rec("symcore");
  for (int trial = 0; trial < 200; ++trial) {
    auto rng = make_rng(seed, 100'000 + static_cast<std::uint64_t>(trial));
    int n = static_cast<int>(uniform_int(rng, 1, 4));
    auto a = random_multiset(rng, n);
    std::vector<cplx> av(a.values().begin(), a.values().end());
    auto h = complete_homogeneous_upto(8, a);
    auto e = elementary_all(a);
    auto hs = product_series(av, -1, 8);
    auto es = product_series(av, +1, n);
    for (int k = 0; k <= 8; ++k) rec.close(k, h[k], hs[k], 1e-10, "h_k");
    for (int k = 0; k <= n; ++k) rec.close(k, e[k], (k % 2 ? -1.0 : 1.0) * es[k], 1e-10, "e_k");
    for (int k = 1; k <= 8; ++k) {
      cplx acc = 0.0;
      for (int i = 1; i <= k; ++i) acc += power_sum(i, a) * h[k - i];
      rec.close(k, acc, static_cast<double>(k) * h[k], 1e-9, "newton");
      rec.close(k, schur(Partition({k}), a), h[k], 1e-9, "schur-row");
    }
    for (int k = 1; k <= n; ++k) rec.close(k, schur(Partition(std::vector<int>(k, 1)), a), e[k], 1e-9, "schur-column");
    rec.check(std::abs(schur(Partition(std::vector<int>(n + 1, 1)), a)) == 0.0, "schur-too-long");
    for (int l = 1; l <= n; ++l)
      for (int m = 1; m <= 4; ++m) rec.check(dual_pieri_check(l, m, a, 1e-9), "dual-pieri", {{"l", l}, {"m", m}});
    auto rs = a.times_conjugate();
    auto hrs = complete_homogeneous_upto(6, rs);
    for (int k = 0; k <= 6; ++k) {
      double acc = 0.0;
      for (const auto& lam : enum_partitions(k, n)) acc += std::norm(schur(lam, a));
      rec.close(k, acc, hrs[k], 1e-9, "cauchy");
    }
  }
  return rec.take();
}

SuiteResult verify_local(std::uint64_t seed, std::shared_ptr<const TauTable> tau) {
  Recorder rec("local");
  for (int trial = 0; trial < 100; ++trial) {
    auto rng = make_rng(seed, 200'000 + static_cast<std::uint64_t>(trial));
    int n = static_cast<int>(uniform_int(rng, 1, 4));
    auto s = trial % 2 ? random_bounded_satake(n, 2 * uniform_int(rng, 1, 50) + 1, rng) : random_unitary_satake(n, rng);
    std::vector<cplx> av(s.params().values().begin(), s.params().values().end());
    auto rsroots = s.params().times_conjugate();
    std::vector<cplx> rv(rsroots.values().begin(), rsroots.values().end());
    auto lam = product_series(av, -1, 8), mu = product_series(av, +1, 8), rs = product_series(rv, -1, 8);
    for (int k = 0; k <= 8; ++k) {
      rec.close(k, lambda_pk(s, k), lam[k], 1e-9, "lambda_pk");
      rec.close(k, mu_pk(s, k), mu[k], 1e-9, "mu_pk");
      rec.close(k, rs_lambda_pk(s, k), rs[k], 1e-9, "rs_lambda_pk");
      if (k >= 1) {
        cplx pk = 0.0;
        for (auto z : av) pk += std::pow(z, k);
        rec.close(k, a_pk(s, k), pk, 1e-9, "a_pk");
        rec.close(k, rs_a_pk(s, k), std::norm(pk), 1e-9, "rs_a_pk");
      }
    }
  }
  if (tau && tau->size() >= 1000) {
    auto delta = make_exemplar(Exemplar::delta, tau);
    for (std::int64_t p : {2, 3, 5, 7, 11, 101, 997}) {
      auto s = satake_at(delta, p);
      rec.close(static_cast<double>(p), lambda_pk(s, 1), delta_normalized(*tau, p), 1e-12, "delta-satake");
      for (auto z : s.params().values()) rec.check(std::abs(std::abs(z) - 1.0) < 1e-9, "delta-unitary");
    }
  }
  return rec.take();
}

SuiteResult verify_vaughan(std::uint64_t seed, std::shared_ptr<const TauTable> tau, const ParallelMap& pool) {
  Recorder rec("vaughan");
  constexpr std::int64_t n = 10'000;
  std::vector<Exemplar> pis{Exemplar::zeta};
  if (tau && tau->size() >= n) pis = {Exemplar::zeta, Exemplar::delta, Exemplar::sym2_delta};
  for (auto e : pis) {
    auto pi = make_exemplar(e, e == Exemplar::zeta ? nullptr : tau);
    auto tables = make_vaughan_tables(pi, n);
    std::vector<VaughanParams> configs(100);
    for (std::size_t i = 0; i < configs.size(); ++i) {
      auto rng = make_rng(seed, 300'000 + 1000 * static_cast<std::uint64_t>(e) + i);
      auto& c = configs[i];
      c.q = uniform_int(rng, 1, 20);
      do c.a = uniform_int(rng, 1, c.q); while (std::gcd(c.a, c.q) != 1);
      c.X = uniform(rng, 10.0, 100.0);
      if (c.X == std::floor(c.X)) c.X += 0.5;
      c.Y = c.X;
      c.y = uniform(rng, c.X + 1.0, static_cast<double>(n));
    }
    std::vector<double> err(configs.size());
    pool.for_each(configs.size(), [&](std::size_t i) {
      auto d = decompose(configs[i], tables);
      err[i] = d.residual() / std::max(1.0, std::abs(d.direct));
    });
    for (std::size_t i = 0; i < configs.size(); ++i)
      rec.check(err[i] < 1e-8, "vaughan-identity",
                {{"pi", exemplar_name(e)}, {"q", configs[i].q}, {"a", configs[i].a}, {"X", configs[i].X},
                 {"y", configs[i].y}, {"relative_error", err[i]}});
    for (std::int64_t n0 : {101, 997, 1024, 5040}) rec.check(vaughan_identity_check(pi, n0, 30.5, 30.5, 1e-8), "pointwise-identity", {{"n0", n0}});
  }
  return rec.take();
}

SuiteResult verify_inequalities(std::uint64_t seed, const ParallelMap& pool) {
  Recorder rec("inequalities");
  for (const auto& t : run_inequality_sweep(seed, InequalitySweepOptions{}, pool)) {
    ordered_json d{{"id", t.id}, {"trials", t.trials}, {"violations", t.violations}, {"worst_margin", t.worst_margin}};
    if (!t.first_counterexample.empty()) d["counterexample"] = ordered_json::parse(t.first_counterexample);
    rec.check(t.violations == 0, t.id, d);
  }
  return rec.take();
}

SuiteResult verify_characters(std::uint64_t seed, std::int64_t qmax) {
  Recorder rec("characters");
  for (std::int64_t q = 1; q <= qmax; ++q) {
    auto chars = enumerate_characters(q);
    auto phi = euler_phi(q);
    rec.check(static_cast<std::int64_t>(chars.size()) == phi, "group-order", {{"q", q}});
    std::vector<std::vector<cplx>> vals;
    for (const auto& c : chars) vals.push_back(c.values());
    double worst = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i; j < vals.size(); ++j) {
        cplx acc = 0.0;
        for (std::int64_t a = 0; a < q; ++a) acc += vals[i][a] * std::conj(vals[j][a]);
        worst = std::max(worst, std::abs(acc - (i == j ? static_cast<double>(phi) : 0.0)));
      }
    rec.check(worst < 1e-10, "orthogonality", {{"q", q}, {"error", worst}});
    std::int64_t primitive = 0;
    for (const auto& c : chars) {
      if (q <= 64) rec.check(c.conductor() == conductor_of(c), "conductor", {{"q", q}});
      if (c.is_primitive()) {
        ++primitive;
        double g = std::norm(gauss_sum(c));
        rec.check(std::abs(g - static_cast<double>(q)) < 1e-8 * static_cast<double>(q), "gauss-sum", {{"q", q}});
      }
    }
    std::int64_t expect = 0;  // number of primitive characters = sum_{d | q} mu(d) phi(q/d)
    for (std::int64_t d = 1; d <= q; ++d)
      if (q % d == 0) expect += mobius(d) * euler_phi(q / d);
    rec.check(primitive == expect, "primitive-count", {{"q", q}, {"got", primitive}, {"want", expect}});
  }
  auto rng = make_rng(seed, 400'000);
  for (int trial = 0; trial < 50; ++trial) {
    std::int64_t d = 0;
    do d = uniform_int(rng, -2000, 2000); while (!is_fundamental_discriminant(d));
    auto chi = kronecker_character(d);
    rec.check(chi.conductor() == std::llabs(d) && chi.is_real(), "kronecker-primitive", {{"d", d}});
    rec.check(chi.parity() == (d < 0 ? -1 : 1), "kronecker-parity", {{"d", d}});
  }
  return rec.take();
}

std::vector<SuiteResult> run_verify(VerifySuite suite, std::uint64_t seed, std::shared_ptr<const TauTable> tau,
                                    const ParallelMap& pool) {
  std::vector<SuiteResult> out;
  auto want = [&](VerifySuite s) { return suite == VerifySuite::all || suite == s; };
  if (want(VerifySuite::symcore)) out.push_back(verify_symcore(seed));
  if (want(VerifySuite::local)) out.push_back(verify_local(seed, tau));
  if (want(VerifySuite::vaughan)) out.push_back(verify_vaughan(seed, tau, pool));
  if (want(VerifySuite::inequalities)) out.push_back(verify_inequalities(seed, pool));
  if (want(VerifySuite::characters)) out.push_back(verify_characters(seed));
  return out;
}

}  // namespace bvlab
