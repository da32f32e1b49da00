#include "doctest.h"

#include "bvlab/errors.hpp"
#include "bvlab/gamma.hpp"
#include "bvlab/lfunc_afe.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/rng.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {
std::shared_ptr<const DeltaTwistEngine> engine() {
  static auto e = std::make_shared<const DeltaTwistEngine>(
      std::make_shared<const TauTable>(compute_tau_table(60'000)));
  return e;
}
}  // namespace

TEST_SUITE("lfunc") {
  TEST_CASE("log gamma") {
    for (double x = 0.1; x < 30; x += 0.37) CHECK(log_gamma(x).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
    for (cplx z : {cplx(0.5, 3), cplx(6, -20), cplx(-2.5, 1), cplx(1e-3, 50)}) {
      cplx lhs = log_gamma(z + 1.0), rhs = log_gamma(z) + std::log(z);
      CHECK(std::abs(std::exp(lhs - rhs) - 1.0) < 1e-12);
    }
    CHECK(std::exp(log_gamma(0.5)).real() == doctest::Approx(std::sqrt(std::numbers::pi)));
    CHECK(std::exp(log_gamma_C(1.0)).real() == doctest::Approx(1.0 / std::numbers::pi));
  }

  TEST_CASE("smoothing kernel") {
    SmoothingKernel k(0.5);
    CHECK(std::abs(k(1e-4) - 1.0) < 1e-6);
    CHECK(std::abs(k.quadrature(1e3, 0.1)) < 1e-8);
    CHECK(std::abs(k(1e3)) < 1e-8);
    CHECK(k.interpolation_error() < 1e-11);
    for (double y : {0.3, 0.9, 1.0, 1.7, 3.0}) {
      CHECK(std::abs(k.quadrature(y, 0.1) - k.quadrature(y, 0.05)) < 1e-9);
      CHECK(std::abs(k(y) - k.quadrature(y, 0.1)) < 1e-11);
    }
    SmoothingKernel a(cplx(0.5, 4.0)), b(cplx(0.5, -4.0));
    CHECK(std::abs(a(1.3) - std::conj(b(1.3))) < 1e-11);
    CHECK(k.quadrature(2.0, 0.1).real() < k.quadrature(1.0, 0.1).real());
    CHECK_THROWS_AS(SmoothingKernel(0.5, kDeltaShift, 3), ContractError);
  }

  TEST_CASE("root numbers") {
    auto e = engine();
    auto triv = make_afe_context(e, kronecker_character(1));
    CHECK(std::abs(triv.epsilon - 1.0) < 1e-12);
    CHECK(std::abs(triv.epsilon_numeric - 1.0) < 1e-8);
    for (std::int64_t d : {-3, 5, -4, 8, -8, 12, -23, 229}) {
      auto ctx = make_afe_context(e, kronecker_character(d));
      CHECK(std::abs(ctx.epsilon - double(d < 0 ? -1 : 1)) < 1e-12);
      CHECK(std::abs(std::abs(ctx.epsilon_numeric) - 1.0) < 1e-8);
      CHECK(std::abs(root_number(ctx, 1e-8, 0.6) - root_number(ctx, 1e-8, 0.7)) < 1e-7);
    }
    for (const auto& chi : primitive_characters(11)) {
      auto ctx = make_afe_context(e, chi);
      CHECK(std::abs(ctx.epsilon - ctx.epsilon_numeric) < 1e-6);
    }
    CHECK_THROWS_AS(make_afe_context(e, enumerate_characters(9)[0]), ContractError);
  }

  TEST_CASE("L(1, Delta) against a smoothed direct sum") {
    auto e = engine();
    auto ctx = make_afe_context(e, kronecker_character(1));
    double N = 1e5 / 6.0, acc = 0.0;
    for (std::int64_t n = 1; n <= 60'000; ++n) acc += e->lambda(n) / double(n) * std::exp(-(n / N) * (n / N));
    auto r = afe_eval(1.0, ctx);
    CHECK(std::abs(r.value - acc) < 1e-6);
    CHECK(std::isfinite(r.est_error));
    CHECK(r.truncation > 0);
  }

  TEST_CASE("absolutely convergent region against direct summation") {
    auto e = engine();
    for (std::int64_t d : {1, -7}) {
      auto ctx = make_afe_context(e, kronecker_character(d));
      auto chi = ctx.chi_values;
      cplx s(3.0, 1.0), acc = 0.0;
      for (std::int64_t n = 1; n <= 60'000; ++n)
        acc += chi[static_cast<std::size_t>(n % ctx.chi.modulus())] * e->lambda(n) * std::exp(-s * std::log(double(n)));
      CHECK(std::abs(afe_eval(s, ctx).value - acc) < 1e-9);
    }
  }

  TEST_CASE("X invariance, conjugate symmetry and the functional equation") {
    auto e = engine();
    auto rng = make_rng(12, 0);
    for (std::int64_t d : {1, -3, 13, -31}) {
      auto ctx = make_afe_context(e, kronecker_character(d));
      for (int i = 0; i < 5; ++i) {
        cplx s(uniform(rng, 0.1, 0.9), uniform(rng, -8.0, 8.0));
        CHECK(std::abs(afe_eval(s, ctx, 1.0).value - afe_eval(s, ctx, 2.0).value) < 1e-7);
        CHECK(std::abs(afe_eval(std::conj(s), ctx).value - std::conj(afe_eval(s, ctx).value)) < 1e-10);
        cplx lam = completed_L(s, ctx, 1.0), dual = completed_L(1.0 - s, ctx, 1.6);
        CHECK(std::abs(lam - ctx.epsilon * dual) < 1e-6 * std::abs(lam));
      }
    }
    auto chi = primitive_characters(7)[1];
    auto c = make_afe_context(e, chi), cb = make_afe_context(e, chi.conjugate());
    cplx s(0.5, 2.5);
    cplx lam = completed_L(s, c, 1.0), dual = completed_L(1.0 - s, cb, 1.3);
    CHECK(std::abs(lam - c.epsilon * dual) < 1e-6 * std::abs(lam));
  }

  TEST_CASE("truncation beyond the table") {
    auto small = std::make_shared<const DeltaTwistEngine>(std::make_shared<const TauTable>(compute_tau_table(500)));
    CHECK_THROWS_AS(make_afe_context(small, kronecker_character(-163)), RangeError);
  }

  TEST_CASE("second moment") {
    auto e = engine();
    auto one = second_moment_experiment(e, 0.0, {1}, false, ParallelMap::serial());
    auto ctx = make_afe_context(e, kronecker_character(1));
    CHECK(one.number(0, "moment") == doctest::Approx(std::norm(afe_eval(0.5, ctx).value)));
    auto rep = second_moment_experiment(e, 5.0, {1, 2, 10, 20}, true, ParallelMap::serial());
    for (double r : rep.column("ratio")) {
      CHECK(r > 0.0);
      CHECK(std::isfinite(r));
    }
    CHECK(rep.columns() == std::vector<std::string>{"Q", "t", "moment", "bound", "ratio"});
    CHECK_THROWS_AS(second_moment_experiment(e, 0.0, {201}, false, ParallelMap::serial()), SizeLimitError);
  }

  TEST_CASE("Siegel scan") {
    auto e = engine();
    std::vector<std::int64_t> ds{1};
    for (auto d : fundamental_discriminants(500)) ds.push_back(d);
    auto rep = siegel_scan(e, ds, ParallelMap(2));
    CHECK(rep.size() == ds.size());
    for (double v : rep.column("abs_L1")) CHECK(v > 1e-6);
    CHECK(rep.number(0, "d") == 1.0);
    CHECK_FALSE(rep.any_flag());
    CHECK_THROWS_AS(siegel_scan(e, {10'001}, ParallelMap::serial()), SizeLimitError);
  }
}
