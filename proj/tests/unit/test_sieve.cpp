#include "doctest.h"

#include "bvlab/errors.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/rng.hpp"
#include "bvlab/sieve_experiments.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {
std::shared_ptr<const TauTable> tau20k() {
  static auto t = std::make_shared<const TauTable>(compute_tau_table(20'000));
  return t;
}

double bv_slow(const CoefficientTable& t, std::int64_t x, std::int64_t Q) {
  double total = 0.0;
  for (std::int64_t q = 1; q <= Q; ++q) {
    double best = 0.0;
    for (std::int64_t a = 1; a <= q; ++a) {
      if (bvtest::gcd_slow(a, q) != 1) continue;
      cplx run = 0.0;
      for (std::int64_t m = 1; m <= x; ++m) {
        if (m % q == a % q) run += t[m];
        best = std::max(best, std::abs(run));
      }
    }
    total += best;
  }
  return total;
}
}  // namespace

TEST_SUITE("sieve") {
  TEST_CASE("progression sums and their character expansion") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto t = weighted_table(pi, BvWeight::plain, 5000);
    for (auto [q, a] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {7, 3}, {12, 5}, {97, 50}}) {
      cplx direct = 0.0;
      for (std::int64_t m = a; m <= 4321; m += q) direct += t[m];
      CHECK(std::abs(progression_sum(t, 4321.5, q, a) - direct) < 1e-10);
      CHECK(std::abs(progression_via_characters(t, 4321.5, q, a) - direct) < 1e-9);
      CHECK(std::abs(psi_rho(t, 4321.5, q, a, 0) - direct) < 1e-10);
    }
    CHECK_THROWS_AS(progression_sum(t, 100, 6, 4), ContractError);
    CHECK_THROWS_AS(progression_sum(t, 6000, 6, 5), ContractError);
  }

  TEST_CASE("Gallagher identity on random configurations") {
    auto pi = make_exemplar(Exemplar::sym2_delta, tau20k());
    auto t = weighted_table(pi, BvWeight::plain, 20'000);
    for (int trial = 0; trial < 40; ++trial) {
      auto rng = make_rng(8, trial);
      std::int64_t q = uniform_int(rng, 1, 30), a = 1;
      do a = uniform_int(rng, 1, q); while (bvtest::gcd_slow(a, q) != 1);
      double y = uniform(rng, 100.0, 19'000.0);
      int rho = static_cast<int>(uniform_int(rng, 1, 3));
      auto g = gallagher_sides(t, y, q, a, rho, 1.0);
      CHECK(g.relative_deviation() < 1e-8);
      CHECK(gallagher_identity_check(t, y, q, a, rho, 1.0, 1e-8));
    }
    CHECK_THROWS_AS(gallagher_sides(t, 5.0, 1, 1, 1, 1.0), ContractError);
  }

  TEST_CASE("discrepancy against brute force") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto t = weighted_table(pi, BvWeight::plain, 400);
    CHECK(bv_discrepancy(t, 400, 6) == doctest::Approx(bv_slow(t, 400, 6)).epsilon(1e-12));
    auto big = weighted_table(pi, BvWeight::prime_log, 20'000);
    CHECK(bv_discrepancy(big, 20'000, 40, ParallelMap(2)) == bv_discrepancy(big, 20'000, 40));
    CHECK(bv_discrepancy_smoothed(big, 20'000, 10, 1, ParallelMap::serial()) >= 0.0);
  }

  TEST_CASE("configuration helpers") {
    auto c = default_config(Exemplar::sym3_delta);
    CHECK(c.eta == 2.0);
    CHECK(c.rho == 2);
    CHECK(default_config(Exemplar::zeta).rho == 1);
    CHECK(level_Q(1e6, 2.0, 1.0) == doctest::Approx(1000.0 / std::log(1e6)));
    auto lad = geometric_ladder(5e4);
    CHECK(lad == std::vector<double>{1e3, 1e4, 5e4});
    CHECK(parse_weight("smoothed-rho") == BvWeight::smoothed_rho);
    CHECK(weight_name(BvWeight::prime_log) == "log");
    CHECK_THROWS_AS(parse_weight("bogus"), ContractError);
  }

  TEST_CASE("curve report is deterministic") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto cfg = default_config(Exemplar::delta);
    cfg.x = 20'000;
    cfg.B = 1.0;
    auto a = run_bv_curve(pi, cfg, ParallelMap::serial()).to_report().to_csv();
    auto b = run_bv_curve(pi, cfg, ParallelMap(2)).to_report().to_csv();
    CHECK(a == b);
    CHECK(a.rfind("x,Q,D,D_over_x,pi,eta,B,A\n", 0) == 0);
  }

  TEST_CASE("Siegel-Walfisz ratios and prime-power correction") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto rep = siegel_walfisz_check(pi, {1e3, 1e4, 2e4}, 1.0);
    CHECK(rep.size() > 0);
    for (double r : rep.column("ratio")) CHECK(r < 0.05);
    CHECK(prime_power_correction(pi, 2e4, 1, 1) < std::sqrt(2e4) * std::log(2e4));
  }

  TEST_CASE("large sieve") {
    auto rng = make_rng(2, 0);
    std::vector<cplx> c(4000);
    for (auto& v : c) v = uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0;
    double r = large_sieve_ratio(c, 30);
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
    CHECK_THROWS_AS(large_sieve_ratio(c, 1001), SizeLimitError);
  }
}
