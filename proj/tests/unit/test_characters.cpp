#include "doctest.h"

#include "bvlab/characters.hpp"
#include "bvlab/errors.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {
bool squarefree(std::int64_t m) {
  m = std::llabs(m);
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

bool fundamental_slow(std::int64_t d) {
  if (d == 1) return true;
  auto r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  auto m = d / 4, rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(m);
}
}  // namespace

TEST_SUITE("characters") {
  TEST_CASE("phi and mu against definitions") {
    for (std::int64_t n = 1; n <= 300; ++n) {
      std::int64_t phi = 0;
      for (std::int64_t a = 1; a <= n; ++a)
        if (bvtest::gcd_slow(a, n) == 1) ++phi;
      CHECK(euler_phi(n) == phi);
      std::int64_t mu = squarefree(n) ? 1 : 0;
      if (mu)
        for (std::int64_t p = 2; p <= n; ++p)
          if (n % p == 0 && bvtest::is_prime_slow(p)) mu = -mu;
      CHECK(mobius(n) == mu);
    }
  }

  TEST_CASE("orthogonality and counts") {
    for (std::int64_t q = 1; q <= 80; ++q) {
      auto chars = enumerate_characters(q);
      REQUIRE(static_cast<std::int64_t>(chars.size()) == euler_phi(q));
      CHECK(chars.front().is_principal());
      for (std::int64_t a = 1; a < q; ++a)
        for (std::int64_t b = 1; b < q; b += 3) {
          if (bvtest::gcd_slow(a, q) != 1 || bvtest::gcd_slow(b, q) != 1) continue;
          cplx acc = 0.0;
          for (const auto& c : chars) acc += c(a) * std::conj(c(b));
          CHECK(std::abs(acc - (a == b ? double(euler_phi(q)) : 0.0)) < 1e-10);
        }
    }
  }

  TEST_CASE("conductors, primitivity and Gauss sums") {
    for (std::int64_t q = 1; q <= 60; ++q) {
      for (const auto& c : enumerate_characters(q)) {
        CHECK(c.conductor() == conductor_of(c));
        auto p = primitivize(c);
        CHECK(p.is_primitive());
        CHECK(p.modulus() == c.conductor());
        for (std::int64_t n = 1; n <= 2 * q; ++n)
          if (bvtest::gcd_slow(n, q) == 1) CHECK(std::abs(p(n) - c(n)) < 1e-12);
        if (c.is_primitive()) CHECK(std::norm(gauss_sum(c)) == doctest::Approx(double(q)));
        CHECK(std::abs(c(q - 1) - double(c.parity())) < 1e-12);
      }
    }
    CHECK(primitive_characters(4).size() == 1);
    CHECK(primitive_characters(6).empty());
  }

  TEST_CASE("order-4 values are exact quarter turns") {
    for (const auto& c : enumerate_characters(5)) {
      if (c.order() != 4) continue;
      for (std::int64_t a = 1; a < 5; ++a) {
        auto v = c(a);
        CHECK((v == cplx(1, 0) || v == cplx(-1, 0) || v == cplx(0, 1) || v == cplx(0, -1)));
      }
    }
  }

  TEST_CASE("dense-valued characters") {
    auto g = enumerate_characters(7)[2];
    DirichletCharacter d(7, g.values());
    CHECK(d.conductor() == g.conductor());
    CHECK(d.order() == g.order());
    auto bad = g.values();
    bad[3] *= 2.0;
    CHECK_THROWS_AS(DirichletCharacter(7, bad), ContractError);
    CHECK(std::abs(g.conjugate()(3) - std::conj(g(3))) < 1e-15);
  }

  TEST_CASE("Kronecker symbol") {
    for (std::int64_t d = -150; d <= 150; ++d)
      for (std::int64_t n = 1; n <= 150; ++n) CHECK(kronecker(d, n) == bvtest::kronecker_slow(d, n));
  }

  TEST_CASE("fundamental discriminants") {
    for (std::int64_t d = -3000; d <= 3000; ++d) CHECK(is_fundamental_discriminant(d) == fundamental_slow(d));
    auto all = fundamental_discriminants(10'000);
    CHECK(all.size() == 6086);
    CHECK(all.front() == -3);
    for (std::int64_t d : {-4, 5, -7, 8, -8, 12, -163, 1001}) {
      auto chi = kronecker_character(d);
      CHECK(chi.conductor() == std::llabs(d));
      CHECK(chi.is_quadratic());
      CHECK(chi.parity() == (d < 0 ? -1 : 1));
    }
    CHECK_THROWS_AS(kronecker_character(9), ContractError);
  }

  TEST_CASE("sum of 1/phi") {
    double acc = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) acc += 1.0 / double(euler_phi(n));
    CHECK(phi_reciprocal_sum(1000) == doctest::Approx(acc).epsilon(1e-12));
    CHECK(phi_reciprocal_constant() == doctest::Approx(1.9435964368207592).epsilon(1e-9));
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(enumerate_characters(0), ContractError);
    CHECK_THROWS_AS(enumerate_characters(100'001), SizeLimitError);
  }
}
