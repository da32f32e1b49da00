#include "doctest.h"

#include "bvlab/characters.hpp"
#include "bvlab/dirichlet.hpp"
#include "bvlab/errors.hpp"
#include "bvlab/titchmarsh.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {
std::shared_ptr<const TauTable> tau20k() {
  static auto t = std::make_shared<const TauTable>(compute_tau_table(20'000));
  return t;
}
}  // namespace

TEST_SUITE("titchmarsh") {
  TEST_CASE("hand values") {
    auto z = make_exemplar(Exemplar::zeta);
    CHECK(shifted_sum_direct(z, 10, ShiftOver::integers) == 23.0);
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    CHECK(shifted_sum_direct(pi, 2.9) == doctest::Approx(delta_normalized(*tau20k(), 2)));
    auto r = divisor_switch_decompose(z, 10, ShiftOver::integers);
    CHECK(r.switched == r.direct);
  }

  TEST_CASE("direct sum against trial division") {
    auto pi = make_exemplar(Exemplar::sym2_delta, tau20k());
    FactorSieve s(3000);
    auto lam = lambda_table(pi, 3000, s);
    double p = 0.0, m = 0.0;
    for (std::int64_t n = 2; n <= 3000; ++n) {
      double term = lam[n].real() * double(bvtest::divisor_count_slow(n - 1));
      m += term;
      if (bvtest::is_prime_slow(n)) p += term;
    }
    CHECK(shifted_sum_direct(pi, 3000, ShiftOver::primes) == doctest::Approx(p).epsilon(1e-12));
    CHECK(shifted_sum_direct(pi, 3000, ShiftOver::integers) == doctest::Approx(m).epsilon(1e-12));
  }

  TEST_CASE("divisor switching is an identity") {
    for (auto e : {Exemplar::zeta, Exemplar::delta, Exemplar::sym2_delta, Exemplar::sym3_delta})
      for (auto over : {ShiftOver::primes, ShiftOver::integers})
        for (double x : {1e3, 1e4, 2e4}) {
          auto r = divisor_switch_decompose(make_exemplar(e, tau20k()), x, over, 1.0);
          CHECK(std::abs(r.direct - r.switched) <= 1e-9 * std::max(1.0, std::abs(r.direct)));
          CHECK(r.T1 + r.T2 + r.square_term == doctest::Approx(r.switched));
        }
  }

  TEST_CASE("square-shift term only sees p - 1 square") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto r = divisor_switch_decompose(pi, 20'000, ShiftOver::primes);
    double want = 0.0;
    for (std::int64_t k = 1; k * k + 1 <= 20'000; ++k)
      if (bvtest::is_prime_slow(k * k + 1)) want += delta_normalized(*tau20k(), k * k + 1);
    CHECK(r.square_term == doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("B moves weight between T1 and T2 only") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto a = divisor_switch_decompose(pi, 2e4, ShiftOver::primes, 0.5);
    auto b = divisor_switch_decompose(pi, 2e4, ShiftOver::primes, 8.0);
    CHECK(b.T1 == 0.0);
    CHECK(a.switched == doctest::Approx(b.switched).epsilon(1e-12));
  }

  TEST_CASE("Ramanujan sums") {
    for (std::int64_t q = 1; q <= 100; ++q)
      for (std::int64_t n = -100; n <= 100; ++n) {
        auto e = bvtest::ramanujan_exp(q, ((n % q) + q) % q);
        CHECK(double(ramanujan_sum(q, n)) == doctest::Approx(e.real()).epsilon(1e-9));
      }
    CHECK(ramanujan_sum(6, 3) == -2);
    for (std::int64_t q = 1; q <= 50; ++q) {
      CHECK(ramanujan_sum(q, 0) == euler_phi(q));
      CHECK(ramanujan_sum(q, 1) == mobius(q));
    }
  }

  TEST_CASE("normalized curve") {
    auto pi = make_exemplar(Exemplar::delta, tau20k());
    auto one = normalized_curve(pi, {1e3});
    CHECK(one.size() == 1);
    CHECK_FALSE(one.any_flag());
    CHECK(one.columns() == std::vector<std::string>{"x", "direct", "switched", "T1", "T2", "square_term", "normalized"});
    CHECK(one.number(0, "normalized") == doctest::Approx(one.number(0, "direct") / titchmarsh_scale(1e3, ShiftOver::primes)));
    CHECK_THROWS_AS(normalized_curve(pi, {1e5}), RangeError);
    CHECK(parse_shift_over("integers") == ShiftOver::integers);
  }
}
