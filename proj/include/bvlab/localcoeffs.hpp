#pragma once

// Local Dirichlet coefficients from Satake data, and the concrete exemplar
// representations: trivial (zeta), Delta, Sym^2 Delta, Sym^3 Delta.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "bvlab/rng.hpp"
#include "bvlab/symcore.hpp"
#include "bvlab/tau.hpp"

namespace bvlab {

using symcore::ComplexMultiset;
using symcore::cplx;

enum class SatakeMode { unitary_circle, ramanujan_bounded, exact_exemplar };

// theta_n = 1/2 - 1/(n^2+1), the uniform bound toward Ramanujan.
double theta_bound(int rank);

class SatakeSet {
 public:
  // Validates the mode invariant; prime is required for ramanujan_bounded.
  SatakeSet(ComplexMultiset params, SatakeMode mode, std::int64_t prime = 0, double theta = 0.0);

  const ComplexMultiset& params() const { return params_; }
  int rank() const { return static_cast<int>(params_.size()); }
  SatakeMode mode() const { return mode_; }
  std::int64_t prime() const { return prime_; }
  double theta() const { return theta_; }

 private:
  ComplexMultiset params_;
  SatakeMode mode_;
  std::int64_t prime_;
  double theta_;
};

enum class Exemplar { zeta, delta, sym2_delta, sym3_delta };

std::string_view exemplar_name(Exemplar e);
Exemplar parse_exemplar(std::string_view name);  // throws ContractError
int exemplar_rank(Exemplar e);

// An exemplar representation bound to the tau table that feeds it.
struct ExemplarPi {
  Exemplar name = Exemplar::zeta;
  std::shared_ptr<const TauTable> tau;

  int rank() const { return exemplar_rank(name); }
  // Largest prime for which satake_at works (unbounded for zeta).
  std::int64_t prime_reach() const;
};

ExemplarPi make_exemplar(Exemplar e, std::shared_ptr<const TauTable> tau = nullptr);

// lambda_Delta(p) = tau(p) / p^(11/2).
double delta_normalized(const TauTable& tau, std::int64_t p);

SatakeSet satake_at(const ExemplarPi& pi, std::int64_t p);

cplx lambda_pk(const SatakeSet& s, int k);
cplx a_pk(const SatakeSet& s, int k);
cplx mu_pk(const SatakeSet& s, int k);
double rs_lambda_pk(const SatakeSet& s, int k);
double rs_a_pk(const SatakeSet& s, int k);

// Random SatakeSets for property tests. Bounded mode draws log-radii uniformly in
// [-theta_n log p, theta_n log p].
SatakeSet random_unitary_satake(int rank, Rng& rng);
SatakeSet random_bounded_satake(int rank, std::int64_t prime, Rng& rng);

}  // namespace bvlab
