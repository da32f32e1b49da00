#include "bvlab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bvlab/errors.hpp"

namespace bvlab {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      d.push_back(i);
      if (i * i != n) d.push_back(n / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}

std::int64_t primitive_root_prime_power(std::int64_t p, int e) {
  const std::int64_t pm1 = p - 1;
  const auto fac = factorize(pm1);
  std::int64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (const auto& [r, k] : fac)
      if (powmod(g, pm1 / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) break;
  }
  // A primitive root mod p lifts to p^e unless g^(p-1) = 1 mod p^2.
  if (e >= 2 && powmod(g, pm1, p * p) == 1) g += p;
  return g;
}

int vp(std::int64_t m, std::int64_t p) {
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw ContractError("euler_phi needs n >= 1");
  std::int64_t r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::int64_t mobius(std::int64_t n) {
  if (n < 1) throw ContractError("mobius needs n >= 1");
  std::int64_t r = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

CharacterGroup::CharacterGroup(std::int64_t q) : q_(q) {
  if (q < 1) throw ContractError("character modulus must be >= 1");
  if (q > kMaxCharacterModulus) throw SizeLimitError("character modulus exceeds 10^5");
  phi_ = euler_phi(q);
  const auto fac = factorize(q);

  // Per component: local residue -> exponents along that component's factors.
  struct Component {
    std::int64_t pe;
    std::size_t first;
    std::size_t count;
    std::vector<std::int64_t> table;  // pe * count entries
  };
  std::vector<Component> comps;
  for (const auto& [p, e] : fac) {
    const std::int64_t pe = ipow(p, e);
    Component c{pe, orders_.size(), 0, {}};
    if (p == 2 && e == 1) {
      comps.push_back(std::move(c));
      continue;
    }
    if (p == 2) {
      // (Z/2^e)^x = <-1> x <5>, the second factor absent for e = 2.
      const std::int64_t ord5 = e >= 3 ? ipow(2, e - 2) : 1;
      c.count = e >= 3 ? 2 : 1;
      c.table.assign(static_cast<std::size_t>(pe * c.count), -1);
      orders_.push_back(2);
      prime_powers_.push_back(pe);
      primes_.push_back(2);
      if (e >= 3) {
        orders_.push_back(ord5);
        prime_powers_.push_back(pe);
        primes_.push_back(2);
      }
      std::int64_t f = 1;
      for (std::int64_t k = 0; k < ord5; ++k, f = f * 5 % pe) {
        for (int s = 0; s < 2; ++s) {
          const std::int64_t r = s ? (pe - f) % pe : f;
          c.table[static_cast<std::size_t>(r * c.count)] = s;
          if (c.count == 2) c.table[static_cast<std::size_t>(r * c.count + 1)] = k;
        }
      }
    } else {
      const std::int64_t g = primitive_root_prime_power(p, e);
      const std::int64_t ord = pe / p * (p - 1);
      c.count = 1;
      c.table.assign(static_cast<std::size_t>(pe), -1);
      orders_.push_back(ord);
      prime_powers_.push_back(pe);
      primes_.push_back(p);
      std::int64_t f = 1;
      for (std::int64_t k = 0; k < ord; ++k, f = f * g % pe) c.table[static_cast<std::size_t>(f)] = k;
    }
    comps.push_back(std::move(c));
  }

  const std::size_t r = orders_.size();
  logs_.assign(static_cast<std::size_t>(q) * std::max<std::size_t>(r, 1), -1);
  for (std::int64_t a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    for (const auto& c : comps)
      for (std::size_t j = 0; j < c.count; ++j)
        logs_[static_cast<std::size_t>(a) * r + c.first + j] = c.table[static_cast<std::size_t>((a % c.pe) * c.count + j)];
    if (r == 0) logs_[static_cast<std::size_t>(a)] = 0;
  }

  for (const auto o : orders_) lcm_ = std::lcm(lcm_, o);
  roots_.resize(static_cast<std::size_t>(lcm_));
  for (std::int64_t k = 0; k < lcm_; ++k) {
    // Quarter turns are set exactly so real characters take exact values.
    if ((4 * k) % lcm_ == 0) {
      static const cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      roots_[static_cast<std::size_t>(k)] = quarter[(4 * k) / lcm_];
    } else {
      const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(lcm_);
      roots_[static_cast<std::size_t>(k)] = {std::cos(t), std::sin(t)};
    }
  }
}

bool CharacterGroup::is_unit(std::int64_t a) const {
  a %= q_;
  if (a < 0) a += q_;
  return logs_[static_cast<std::size_t>(a) * std::max<std::size_t>(rank(), 1)] >= 0;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto& ords = group_->factor_orders();
  if (exponents_.size() != ords.size()) throw ContractError("exponent vector does not match the group rank");
  q_ = group_->modulus();
  order_ = 1;
  conductor_ = 1;
  // Conductor assembled per prime from the local character orders.
  for (std::size_t i = 0; i < ords.size(); ++i) {
    exponents_[i] = ((exponents_[i] % ords[i]) + ords[i]) % ords[i];
    const std::int64_t m = ords[i] / std::gcd(exponents_[i], ords[i]);
    order_ = std::lcm(order_, m);
  }
  for (std::size_t i = 0; i < ords.size();) {
    const std::int64_t p = group_->factor_primes()[i];
    if (p != 2) {
      const std::int64_t m = ords[i] / std::gcd(exponents_[i], ords[i]);
      if (m > 1) conductor_ *= ipow(p, 1 + vp(m, p));
      ++i;
      continue;
    }
    const bool two_factors = i + 1 < ords.size() && group_->factor_primes()[i + 1] == 2;
    const bool minus_one = exponents_[i] % 2 == 1;
    std::int64_t f = minus_one ? 4 : 1;
    if (two_factors) {
      const std::int64_t m = ords[i + 1] / std::gcd(exponents_[i + 1], ords[i + 1]);
      if (m > 1) f = ipow(2, 2 + vp(m, 2));
    }
    conductor_ *= f;
    i += two_factors ? 2 : 1;
  }
  parity_ = q_ <= 2 ? 1 : ((*this)(q_ - 1).real() > 0 ? 1 : -1);
}

DirichletCharacter::DirichletCharacter(std::int64_t q, std::vector<cplx> values) : q_(q), dense_(std::move(values)) {
  if (q < 1 || static_cast<std::int64_t>(dense_.size()) != q) throw ContractError("character needs q values");
  derive_from_values();
}

void DirichletCharacter::derive_from_values() {
  for (std::int64_t a = 0; a < q_; ++a) {
    const bool unit = std::gcd(a, q_) == 1;
    const double m = std::abs(dense_[static_cast<std::size_t>(a)]);
    if (unit ? std::fabs(m - 1.0) > 1e-9 : m != 0.0) throw ContractError("values are not a character");
  }
  const std::int64_t phi = euler_phi(q_);
  order_ = phi;
  for (const auto d : divisors(phi)) {
    bool ok = true;
    for (std::int64_t a = 0; a < q_ && ok; ++a)
      if (std::gcd(a, q_) == 1 && std::abs(std::pow(dense_[static_cast<std::size_t>(a)], static_cast<int>(d)) - 1.0) > 1e-8)
        ok = false;
    if (ok) {
      order_ = d;
      break;
    }
  }
  conductor_ = conductor_of(*this);
  parity_ = q_ <= 2 ? 1 : (dense_[static_cast<std::size_t>(q_ - 1)].real() > 0 ? 1 : -1);
}

cplx DirichletCharacter::operator()(std::int64_t n) const {
  std::int64_t a = n % q_;
  if (a < 0) a += q_;
  if (!dense_.empty()) return dense_[static_cast<std::size_t>(a)];
  if (q_ == 1) return 1.0;
  const std::size_t r = group_->rank();
  if (r == 0) return std::gcd(a, q_) == 1 ? cplx{1.0} : cplx{};
  if (group_->index(a, 0) < 0) return {};
  const auto& ords = group_->factor_orders();
  const std::int64_t L = group_->lcm_order();
  std::int64_t phase = 0;
  for (std::size_t i = 0; i < r; ++i) phase = (phase + exponents_[i] * group_->index(a, i) % ords[i] * (L / ords[i])) % L;
  return group_->root(phase);
}

std::vector<cplx> DirichletCharacter::values() const {
  if (!dense_.empty()) return dense_;
  std::vector<cplx> v(static_cast<std::size_t>(q_));
  for (std::int64_t a = 0; a < q_; ++a) v[static_cast<std::size_t>(a)] = (*this)(a);
  return v;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  if (!dense_.empty()) {
    auto v = dense_;
    for (auto& z : v) z = std::conj(z);
    return DirichletCharacter(q_, std::move(v));
  }
  auto e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = -e[i];
  return DirichletCharacter(group_, std::move(e));
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
  const auto group = std::make_shared<const CharacterGroup>(q);
  const auto& ords = group->factor_orders();
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(group->order()));
  std::vector<std::int64_t> e(ords.size(), 0);
  for (;;) {
    out.emplace_back(group, e);
    std::size_t i = ords.size();
    while (i > 0) {
      --i;
      if (++e[i] < ords[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (ords.empty()) return out;
  }
}

std::vector<DirichletCharacter> primitive_characters(std::int64_t q) {
  auto all = enumerate_characters(q);
  std::vector<DirichletCharacter> out;
  for (auto& c : all)
    if (c.is_primitive()) out.push_back(std::move(c));
  return out;
}

std::int64_t conductor_of(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  for (const auto f : divisors(q)) {
    bool induced = true;
    for (std::int64_t a = 1; a < q && induced; a += f) {
      if (std::gcd(a, q) != 1) continue;
      if (std::abs(chi(a) - 1.0) > 1e-9) induced = false;
    }
    if (induced) return f;
  }
  return q;
}

DirichletCharacter primitivize(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  const std::int64_t f = chi.conductor();
  std::vector<cplx> v(static_cast<std::size_t>(f), cplx{});
  for (std::int64_t a = 0; a < f; ++a) {
    if (std::gcd(a, f) != 1) continue;
    for (std::int64_t b = a; b < a + q * f + 1; b += f)
      if (std::gcd(b, q) == 1) {
        v[static_cast<std::size_t>(a)] = chi(b);
        break;
      }
  }
  return DirichletCharacter(f, std::move(v));
}

cplx gauss_sum(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  cplx s{};
  for (std::int64_t a = 0; a < q; ++a) {
    const cplx c = chi(a);
    if (c == cplx{}) continue;
    const double t = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(q);
    s += c * cplx{std::cos(t), std::sin(t)};
  }
  return s;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -1;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    // (a/2) = +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
    const std::int64_t r = ((a % 8) + 8) % 8;
    if ((v % 2 == 1) && (r == 3 || r == 5)) result = -result;
  }
  // Jacobi symbol (a/n) for odd n > 0.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 1) return true;
  if (d == 0) return false;
  const auto squarefree = [](std::int64_t m) {
    m = m < 0 ? -m : m;
    for (std::int64_t p = 2; p * p <= m; ++p)
      if (m % (p * p) == 0) return false;
    return true;
  };
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(m);
}

std::vector<std::int64_t> fundamental_discriminants(std::int64_t dmax) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 2; a <= dmax; ++a)
    for (const std::int64_t d : {-a, a})
      if (is_fundamental_discriminant(d)) out.push_back(d);
  return out;
}

DirichletCharacter kronecker_character(std::int64_t d) {
  if (!is_fundamental_discriminant(d)) throw ContractError("not a fundamental discriminant");
  const std::int64_t q = d < 0 ? -d : d;
  if (q > kMaxCharacterModulus) throw SizeLimitError("character modulus exceeds 10^5");
  std::vector<cplx> v(static_cast<std::size_t>(q));
  for (std::int64_t a = 0; a < q; ++a) v[static_cast<std::size_t>(a)] = static_cast<double>(kronecker(d, a));
  if (q == 1) v[0] = 1.0;
  return DirichletCharacter(q, std::move(v));
}

double phi_reciprocal_sum(double x) {
  if (x > 1e7) throw SizeLimitError("phi_reciprocal_sum: x exceeds 10^7");
  if (x < 1) return 0.0;
  const auto n = static_cast<std::int64_t>(std::floor(x));
  std::vector<std::uint32_t> phi(static_cast<std::size_t>(n + 1));
  std::vector<std::uint32_t> primes;
  phi[1] = 1;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (phi[i] == 0) {
      phi[i] = static_cast<std::uint32_t>(i - 1);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (const auto p : primes) {
      const std::int64_t m = i * p;
      if (m > n) break;
      if (i % p == 0) {
        phi[m] = phi[i] * p;
        break;
      }
      phi[m] = phi[i] * (p - 1);
    }
  }
  double s = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) s += 1.0 / phi[i];
  return s;
}

double phi_reciprocal_constant() {
  // zeta(2) zeta(3) / zeta(6) = 315 zeta(3) / (2 pi^4)
  constexpr double zeta3 = 1.2020569031595942854;
  return 315.0 * zeta3 / (2.0 * std::pow(std::numbers::pi, 4));
}

}  // namespace bvlab
