#include "doctest.h"

#include "bvlab/errors.hpp"
#include "bvlab/localcoeffs.hpp"
#include "bvlab/verify.hpp"
#include "support.hpp"

using namespace bvlab;

TEST_SUITE("localcoeffs") {
  TEST_CASE("theta bound") {
    CHECK(theta_bound(1) == doctest::Approx(0.0));
    CHECK(theta_bound(2) == doctest::Approx(0.3));
    CHECK(theta_bound(4) == doctest::Approx(0.5 - 1.0 / 17));
  }

  TEST_CASE("SatakeSet invariants") {
    CHECK_THROWS_AS(SatakeSet(ComplexMultiset{cplx(1.1, 0)}, SatakeMode::unitary_circle), ContractError);
    CHECK_THROWS_AS(SatakeSet(ComplexMultiset{cplx(1.0, 0)}, SatakeMode::ramanujan_bounded), ContractError);
    CHECK_THROWS_AS(SatakeSet(ComplexMultiset{cplx(3.0, 0), cplx(1, 0)}, SatakeMode::ramanujan_bounded, 5, 0.3),
                    ContractError);
    CHECK_NOTHROW(SatakeSet(ComplexMultiset{cplx(1.5, 0), cplx(1, 0)}, SatakeMode::ramanujan_bounded, 5, 0.3));
  }

  TEST_CASE("local coefficients against product expansions") {
    for (int trial = 0; trial < 100; ++trial) {
      auto rng = make_rng(5, trial);
      int n = static_cast<int>(uniform_int(rng, 1, 4));
      auto s = trial % 2 ? random_bounded_satake(n, 7, rng) : random_unitary_satake(n, rng);
      std::vector<cplx> a(s.params().values().begin(), s.params().values().end());
      auto rsm = s.params().times_conjugate();
      std::vector<cplx> r(rsm.values().begin(), rsm.values().end());
      auto lam = product_series(a, -1, 8), mu = product_series(a, 1, 8), rs = product_series(r, -1, 8);
      for (int k = 0; k <= 8; ++k) {
        CHECK(std::abs(lambda_pk(s, k) - lam[k]) <= 1e-9 * std::max(1.0, std::abs(lam[k])));
        CHECK(std::abs(mu_pk(s, k) - mu[k]) <= 1e-9 * std::max(1.0, std::abs(mu[k])));
        CHECK(rs_lambda_pk(s, k) == doctest::Approx(rs[k].real()).epsilon(1e-9));
        CHECK(rs_lambda_pk(s, k) >= 0.0);
      }
      CHECK(mu_pk(s, n + 1) == cplx(0.0));
    }
  }

  TEST_CASE("exemplars") {
    auto tau = std::make_shared<const TauTable>(compute_tau_table(2000));
    auto zeta = make_exemplar(Exemplar::zeta);
    CHECK(lambda_pk(satake_at(zeta, 7), 5) == cplx(1.0));
    auto delta = make_exemplar(Exemplar::delta, tau);
    auto sym2 = make_exemplar(Exemplar::sym2_delta, tau);
    auto sym3 = make_exemplar(Exemplar::sym3_delta, tau);
    CHECK(delta.rank() == 2);
    CHECK(sym3.rank() == 4);
    for (std::int64_t p : {2, 3, 5, 1999}) {
      double l = delta_normalized(*tau, p);
      CHECK(lambda_pk(satake_at(delta, p), 1).real() == doctest::Approx(l).epsilon(1e-12));
      CHECK(lambda_pk(satake_at(sym2, p), 1).real() == doctest::Approx(l * l - 1.0).epsilon(1e-10));
      CHECK(lambda_pk(satake_at(sym3, p), 1).real() == doctest::Approx(l * l * l - 2.0 * l).epsilon(1e-10));
    }
    CHECK_THROWS_AS(satake_at(delta, 2003), RangeError);
    CHECK_THROWS_AS(make_exemplar(Exemplar::delta), ContractError);
    CHECK(parse_exemplar("sym2-delta") == Exemplar::sym2_delta);
    CHECK_THROWS_AS(parse_exemplar("sym4-delta"), ContractError);
  }
}
