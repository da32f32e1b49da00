#pragma once

// Dirichlet characters mod q: CRT enumeration from prime-power generators,
// conductor, primitivity, Kronecker symbols and Gauss sums.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace bvlab {

using cplx = std::complex<double>;

inline constexpr std::int64_t kMaxCharacterModulus = 100'000;

// Unit group (Z/q)^x written as a product of cyclic factors, with a discrete-log
// table so characters can be evaluated without materializing their values.
class CharacterGroup {
 public:
  explicit CharacterGroup(std::int64_t q);

  std::int64_t modulus() const { return q_; }
  std::int64_t order() const { return phi_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<std::int64_t>& factor_orders() const { return orders_; }
  // Prime power owning each cyclic factor (2^e contributes two factors when e >= 3).
  const std::vector<std::int64_t>& factor_prime_powers() const { return prime_powers_; }
  const std::vector<std::int64_t>& factor_primes() const { return primes_; }

  bool is_unit(std::int64_t a) const;
  // Exponent of a along factor i; a must be a unit.
  std::int64_t index(std::int64_t a, std::size_t i) const { return logs_[static_cast<std::size_t>(a) * rank() + i]; }

  // Root of unity e(k / lcm) from a fixed table, so every character sees identical bits.
  std::int64_t lcm_order() const { return lcm_; }
  cplx root(std::int64_t k) const { return roots_[static_cast<std::size_t>(((k % lcm_) + lcm_) % lcm_)]; }

 private:
  std::int64_t q_;
  std::int64_t phi_;
  std::int64_t lcm_ = 1;
  std::vector<std::int64_t> orders_, prime_powers_, primes_;
  std::vector<std::int64_t> logs_;  // -1 marks a non-unit
  std::vector<cplx> roots_;
};

class DirichletCharacter {
 public:
  DirichletCharacter() = default;
  // Group-backed character with exponent e_i along factor i.
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::int64_t> exponents);
  // Character from explicit values on 0..q-1 (0 on non-units); properties are derived.
  DirichletCharacter(std::int64_t q, std::vector<cplx> values);

  std::int64_t modulus() const { return q_; }
  std::int64_t conductor() const { return conductor_; }
  int parity() const { return parity_; }
  bool is_primitive() const { return conductor_ == q_; }
  bool is_principal() const { return order_ == 1; }
  bool is_quadratic() const { return order_ == 2; }
  std::int64_t order() const { return order_; }
  bool is_real() const { return order_ <= 2; }
  const std::vector<std::int64_t>& exponents() const { return exponents_; }

  cplx operator()(std::int64_t n) const;
  // Dense values on residues 0..q-1.
  std::vector<cplx> values() const;
  DirichletCharacter conjugate() const;

 private:
  void derive_from_values();

  std::int64_t q_ = 1;
  std::int64_t conductor_ = 1;
  int parity_ = 1;
  std::int64_t order_ = 1;
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::int64_t> exponents_;
  std::vector<cplx> dense_;
};

// All phi(q) characters; the principal character comes first.
std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);
std::vector<DirichletCharacter> primitive_characters(std::int64_t q);

// Smallest f | q such that chi is trivial on units congruent to 1 mod f.
std::int64_t conductor_of(const DirichletCharacter& chi);
// The primitive character mod conductor inducing chi.
DirichletCharacter primitivize(const DirichletCharacter& chi);

cplx gauss_sum(const DirichletCharacter& chi);

int kronecker(std::int64_t d, std::int64_t n);
bool is_fundamental_discriminant(std::int64_t d);
// Fundamental discriminants with 1 < |d| <= dmax, ordered by |d| then sign (negative first).
std::vector<std::int64_t> fundamental_discriminants(std::int64_t dmax);
// chi_d(n) = (d / n) as a character mod |d|; d must be a fundamental discriminant (d = 1 allowed).
DirichletCharacter kronecker_character(std::int64_t d);

std::int64_t euler_phi(std::int64_t n);
std::int64_t mobius(std::int64_t n);

double phi_reciprocal_sum(double x);
// zeta(2) zeta(3) / zeta(6) as prod_p (1 + 1/(p(p-1))).
double phi_reciprocal_constant();

}  // namespace bvlab
