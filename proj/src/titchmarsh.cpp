#include "bvlab/titchmarsh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bvlab/characters.hpp"
#include "bvlab/dirichlet.hpp"
#include "bvlab/errors.hpp"

namespace bvlab {

std::string_view shift_over_name(ShiftOver o) { return o == ShiftOver::primes ? "primes" : "integers"; }

ShiftOver parse_shift_over(std::string_view s) {
  if (s == "primes") return ShiftOver::primes;
  if (s == "integers") return ShiftOver::integers;
  throw ContractError("unknown summation range: " + std::string(s));
}

namespace {

// lambda on 1..n, zeroed off the primes when over == primes.
struct ShiftTables {
  std::vector<double> w;
  std::vector<std::int64_t> d;  // d[m] for m = 0..n-1, d[0] = 0
};

std::int64_t reach_of(const ExemplarPi& pi) {
  if (pi.name == Exemplar::zeta) return kMaxSieveN;
  if (!pi.tau) throw ContractError("exemplar needs a tau table");
  return pi.tau->size();
}

ShiftTables make_tables(const ExemplarPi& pi, std::int64_t n, ShiftOver over) {
  if (n > reach_of(pi))
    throw RangeError("x = " + std::to_string(n) + " exceeds the coefficient reach " + std::to_string(reach_of(pi)));
  FactorSieve sieve(std::max<std::int64_t>(n, 2));
  ShiftTables t;
  t.w = lambda_table(pi, std::max<std::int64_t>(n, 2), sieve).real_values();
  t.w.resize(static_cast<std::size_t>(n) + 1);
  if (over == ShiftOver::primes)
    for (std::int64_t m = 1; m <= n; ++m)
      if (!sieve.is_prime(m)) t.w[static_cast<std::size_t>(m)] = 0.0;
  t.d.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t r = 1; r <= n; ++r)
    for (std::int64_t m = r; m <= n; m += r) ++t.d[static_cast<std::size_t>(m)];
  return t;
}

double direct_from(const ShiftTables& t, std::int64_t n) {
  double acc = 0.0;
  for (std::int64_t m = 2; m <= n; ++m) acc += t.w[static_cast<std::size_t>(m)] * static_cast<double>(t.d[static_cast<std::size_t>(m - 1)]);
  return acc;
}

ShiftedSumReport decompose_from(const ShiftTables& t, std::int64_t n, double x, ShiftOver over, double B) {
  ShiftedSumReport rep;
  rep.x = x;
  rep.direct = direct_from(t, n);
  double R = x > 1.0 ? std::sqrt(x) / std::pow(std::log(x), B) : 0.0;
  // r < sqrt(m - 1) <=> r^2 + 1 < m
  for (std::int64_t r = 1; r * r + 1 < n; ++r) {
    double s = 0.0;
    for (std::int64_t m = r * r + 1 + r; m <= n; m += r) s += t.w[static_cast<std::size_t>(m)];
    (static_cast<double>(r) <= R ? rep.T1 : rep.T2) += 2.0 * s;
  }
  for (std::int64_t k = 1; k * k + 1 <= n; ++k) rep.square_term += t.w[static_cast<std::size_t>(k * k + 1)];
  rep.switched = rep.T1 + rep.T2 + rep.square_term;
  rep.normalized = rep.direct / titchmarsh_scale(x, over);
  return rep;
}

std::int64_t floor_x(double x) { return x < 1.0 ? 0 : static_cast<std::int64_t>(std::floor(x)); }

}  // namespace

double titchmarsh_scale(double x, ShiftOver over) {
  if (!(x > std::exp(1.0))) throw ContractError("normalization needs x > e");
  double ll = std::log(std::log(x));
  double s = x * ll * std::sqrt(ll);
  return over == ShiftOver::primes ? s / std::sqrt(std::log(x)) : s;
}

double shifted_sum_direct(const ExemplarPi& pi, double x, ShiftOver over) {
  auto n = floor_x(x);
  if (n < 2) return 0.0;
  return direct_from(make_tables(pi, n, over), n);
}

ShiftedSumReport divisor_switch_decompose(const ExemplarPi& pi, double x, ShiftOver over, double B) {
  auto n = floor_x(x);
  if (n < 3) throw ContractError("divisor switching needs x >= 3");
  return decompose_from(make_tables(pi, n, over), n, x, over, B);
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n) {
  if (q < 1) throw ContractError("ramanujan_sum needs q >= 1");
  std::int64_t g = std::gcd(q, n < 0 ? -n : n);  // gcd(q, 0) = q
  std::int64_t acc = 0;
  for (std::int64_t d = 1; d * d <= g; ++d) {
    if (g % d) continue;
    acc += d * mobius(q / d);
    if (d * d != g) acc += (g / d) * mobius(q / (g / d));
  }
  return acc;
}

ExperimentReport normalized_curve(const ExemplarPi& pi, const std::vector<double>& xs, ShiftOver over, double B) {
  ExperimentReport rep("titchmarsh_" + std::string(exemplar_name(pi.name)),
                       {"x", "direct", "switched", "T1", "T2", "square_term", "normalized"});
  rep.set_meta("exemplar", std::string(exemplar_name(pi.name)));
  rep.set_meta("over", std::string(shift_over_name(over)));
  rep.set_meta("B", B);
  if (xs.empty()) return rep;
  std::int64_t nmax = 0;
  for (double x : xs) nmax = std::max(nmax, floor_x(x));
  if (nmax < 3) throw ContractError("divisor switching needs x >= 3");
  auto t = make_tables(pi, nmax, over);
  bool jump = false;
  double prev = NAN;
  for (double x : xs) {
    auto r = decompose_from(t, floor_x(x), x, over, B);
    rep.add_row({r.x, r.direct, r.switched, r.T1, r.T2, r.square_term, r.normalized});
    if (std::isfinite(prev) && std::abs(r.normalized) > 1.2 * std::abs(prev)) jump = true;
    prev = r.normalized;
  }
  rep.set_flag("normalized_jump_over_20pct", jump);
  return rep;
}

}  // namespace bvlab
