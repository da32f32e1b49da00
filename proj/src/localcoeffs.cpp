#include "bvlab/localcoeffs.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bvlab/errors.hpp"

namespace bvlab {

double theta_bound(int rank) { return 0.5 - 1.0 / (rank * rank + 1.0); }

SatakeSet::SatakeSet(ComplexMultiset params, SatakeMode mode, std::int64_t prime, double theta)
    : params_(std::move(params)), mode_(mode), prime_(prime), theta_(theta) {
  switch (mode_) {
    case SatakeMode::unitary_circle:
      for (const auto& v : params_.values())
        if (std::fabs(std::abs(v) - 1.0) > 1e-12) throw ContractError("unitary SatakeSet with |alpha| != 1");
      break;
    case SatakeMode::ramanujan_bounded: {
      if (prime_ < 2) throw ContractError("bounded SatakeSet needs its prime");
      const int n = static_cast<int>(params_.size());
      if (theta_ > theta_bound(n) + 1e-15) throw ContractError("theta exceeds 1/2 - 1/(n^2+1)");
      const double cap = std::pow(static_cast<double>(prime_), theta_) * (1.0 + 1e-12);
      for (const auto& v : params_.values())
        if (std::abs(v) > cap) throw ContractError("Satake parameter exceeds p^theta");
      break;
    }
    case SatakeMode::exact_exemplar:
      break;
  }
}

std::string_view exemplar_name(Exemplar e) {
  switch (e) {
    case Exemplar::zeta: return "zeta";
    case Exemplar::delta: return "delta";
    case Exemplar::sym2_delta: return "sym2-delta";
    case Exemplar::sym3_delta: return "sym3-delta";
  }
  return "?";
}

Exemplar parse_exemplar(std::string_view name) {
  for (auto e : {Exemplar::zeta, Exemplar::delta, Exemplar::sym2_delta, Exemplar::sym3_delta})
    if (exemplar_name(e) == name) return e;
  throw ContractError("unknown representation '" + std::string(name) + "'");
}

int exemplar_rank(Exemplar e) {
  switch (e) {
    case Exemplar::zeta: return 1;
    case Exemplar::delta: return 2;
    case Exemplar::sym2_delta: return 3;
    case Exemplar::sym3_delta: return 4;
  }
  return 0;
}

std::int64_t ExemplarPi::prime_reach() const {
  if (name == Exemplar::zeta) return INT64_MAX;
  return tau ? tau->size() : 0;
}

ExemplarPi make_exemplar(Exemplar e, std::shared_ptr<const TauTable> tau) {
  if (e != Exemplar::zeta && !tau) throw ContractError("Delta-derived exemplars need a tau table");
  return ExemplarPi{e, std::move(tau)};
}

double delta_normalized(const TauTable& tau, std::int64_t p) {
  return static_cast<double>(tau.at(p)) / std::pow(static_cast<double>(p), 5.5);
}

SatakeSet satake_at(const ExemplarPi& pi, std::int64_t p) {
  if (pi.name == Exemplar::zeta) return SatakeSet(ComplexMultiset{cplx{1.0}}, SatakeMode::exact_exemplar);
  if (p < 2 || p > pi.prime_reach())
    throw RangeError("satake_at: p = " + std::to_string(p) + " outside tau table");
  const double lam = delta_normalized(*pi.tau, p);
  // alpha^2 - lam alpha + 1 = 0; alpha takes the root with nonnegative imaginary part.
  cplx disc = std::sqrt(cplx{lam * lam - 4.0, 0.0});
  if (disc.imag() < 0) disc = -disc;
  const cplx alpha = (lam + disc) / 2.0;
  const cplx beta = (lam - disc) / 2.0;
  std::vector<cplx> v;
  switch (pi.name) {
    case Exemplar::delta: v = {alpha, beta}; break;
    case Exemplar::sym2_delta: v = {alpha * alpha, cplx{1.0}, beta * beta}; break;
    case Exemplar::sym3_delta: v = {alpha * alpha * alpha, alpha, beta, beta * beta * beta}; break;
    case Exemplar::zeta: break;
  }
  return SatakeSet(ComplexMultiset(std::move(v)), SatakeMode::exact_exemplar, p);
}

cplx lambda_pk(const SatakeSet& s, int k) { return symcore::complete_homogeneous(k, s.params()); }

cplx a_pk(const SatakeSet& s, int k) { return symcore::power_sum(k, s.params()); }

cplx mu_pk(const SatakeSet& s, int k) {
  if (k > s.rank()) return {};
  const cplx e = symcore::elementary(k, s.params());
  return (k % 2 == 0) ? e : -e;
}

double rs_lambda_pk(const SatakeSet& s, int k) {
  double total = 0.0;
  for (const auto& lam : symcore::enum_partitions(k, s.rank())) total += std::norm(symcore::schur(lam, s.params()));
  return total;
}

double rs_a_pk(const SatakeSet& s, int k) { return std::norm(a_pk(s, k)); }

SatakeSet random_unitary_satake(int rank, Rng& rng) {
  std::vector<cplx> v;
  v.reserve(rank);
  for (int j = 0; j < rank; ++j) v.push_back(std::polar(1.0, uniform(rng, -std::numbers::pi, std::numbers::pi)));
  return SatakeSet(ComplexMultiset(std::move(v)), SatakeMode::unitary_circle);
}

SatakeSet random_bounded_satake(int rank, std::int64_t prime, Rng& rng) {
  const double theta = theta_bound(rank);
  const double span = theta * std::log(static_cast<double>(prime));
  std::vector<cplx> v;
  v.reserve(rank);
  for (int j = 0; j < rank; ++j) {
    const double r = std::exp(uniform(rng, -span, span));
    v.push_back(std::polar(r, uniform(rng, -std::numbers::pi, std::numbers::pi)));
  }
  return SatakeSet(ComplexMultiset(std::move(v)), SatakeMode::ramanujan_bounded, prime, theta);
}

}  // namespace bvlab
