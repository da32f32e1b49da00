#include "doctest.h"

#include "bvlab/dirichlet.hpp"
#include "bvlab/errors.hpp"
#include "support.hpp"

#include <sstream>

using namespace bvlab;

namespace {
std::shared_ptr<const TauTable> small_tau() {
  static auto t = std::make_shared<const TauTable>(compute_tau_table(10'000));
  return t;
}
}  // namespace

TEST_SUITE("dirichlet") {
  TEST_CASE("sieve against trial division") {
    FactorSieve s(5000);
    for (std::int64_t m = 2; m <= 5000; ++m) {
      std::int64_t p = 2;
      while (m % p) ++p;
      CHECK(s.spf(m) == p);
      CHECK(s.is_prime(m) == bvtest::is_prime_slow(m));
    }
    CHECK(FactorSieve(10'000).primes().size() == 1229);
    auto f = s.factor(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::int64_t, int>{2, 3});
    CHECK(s.spf_power(360) == 8);
    CHECK_THROWS_AS(FactorSieve(kMaxSieveN + 1), SizeLimitError);
  }

  TEST_CASE("divisor table") {
    FactorSieve s(3000);
    auto d = divisor_table(3000, s);
    for (std::int64_t m = 1; m <= 3000; m += 7) CHECK(d[m].real() == doctest::Approx(double(bvtest::divisor_count_slow(m))));
  }

  TEST_CASE("delta lambda table is tau(n)/n^(11/2)") {
    auto pi = make_exemplar(Exemplar::delta, small_tau());
    FactorSieve s(10'000);
    auto lam = lambda_table(pi, 10'000, s);
    for (std::int64_t m = 1; m <= 10'000; m += 13) {
      double want = static_cast<double>((*small_tau())[m]) / std::pow(double(m), 5.5);
      CHECK(lam[m].real() == doctest::Approx(want).epsilon(1e-10));
    }
    CHECK(lam.max_abs_imag() < 1e-12);
  }

  TEST_CASE("lambda * mu is the identity") {
    auto tau = small_tau();
    for (auto e : {Exemplar::zeta, Exemplar::delta, Exemplar::sym3_delta}) {
      auto pi = make_exemplar(e, tau);
      FactorSieve s(3000);
      auto conv = dirichlet_convolve(lambda_table(pi, 3000, s), mu_table(pi, 3000, s));
      auto unit = unit_table(3000);
      for (std::int64_t m = 1; m <= 3000; ++m) CHECK(std::abs(conv[m] - unit[m]) < 1e-9);
    }
  }

  TEST_CASE("von Mangoldt table") {
    auto z = von_mangoldt_a(make_exemplar(Exemplar::zeta), 200);
    CHECK(z[1] == cplx(0.0));
    CHECK(z[8].real() == doctest::Approx(std::log(2.0)));
    CHECK(z[12] == cplx(0.0));
    CHECK(z[199].real() == doctest::Approx(std::log(199.0)));
    auto pi = make_exemplar(Exemplar::delta, small_tau());
    CHECK(truncated_log_deriv_check(pi, 2000, 1e-9));
    CHECK(log_deriv_deviation(make_exemplar(Exemplar::zeta), 2000) < 1e-9);
    CHECK_THROWS_AS(truncated_log_deriv_check(pi, 100'001, 1e-9), SizeLimitError);
  }

  TEST_CASE("Rankin-Selberg coefficients are nonnegative") {
    auto pi = make_exemplar(Exemplar::sym2_delta, small_tau());
    FactorSieve s(5000);
    auto rs = rs_lambda_table(pi, 5000, s);
    for (std::int64_t m = 1; m <= 5000; ++m) CHECK(rs[m].real() >= -1e-9);
    auto rv = rs_vonmangoldt_table(pi, 5000, s);
    for (std::int64_t m = 1; m <= 5000; ++m) CHECK(rv[m].real() >= -1e-9);
  }

  TEST_CASE("contracts") {
    CHECK_THROWS_AS(dirichlet_convolve(unit_table(10), unit_table(11)), ContractError);
    auto pi = make_exemplar(Exemplar::delta, small_tau());
    FactorSieve s(20'000);
    CHECK_THROWS_AS(lambda_table(pi, 20'000, s), RangeError);
    CoefficientTable t(TableRole::custom, 3);
    std::ostringstream os;
    t.write_csv(os);
    CHECK(os.str().rfind("m,value_re,value_im\n", 0) == 0);
  }
}
