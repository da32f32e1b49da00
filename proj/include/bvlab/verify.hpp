#pragma once

// Property suites behind `bvlab verify`. Each suite is deterministic in its seed.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bvlab/tau.hpp"

namespace bvlab {

class ParallelMap;

enum class VerifySuite { symcore, local, vaughan, inequalities, characters, all };

std::string_view suite_name(VerifySuite s);
VerifySuite parse_suite(std::string_view s);  // throws ContractError

struct SuiteResult {
  std::string suite;
  std::int64_t checks = 0;
  std::vector<std::string> failures;  // one JSON object per failure, capped at 20
  bool passed() const { return failures.empty(); }
};

// Exact product expansion of prod_j (1 - a_j x)^{sign}, coefficients 0..kmax.
std::vector<std::complex<double>> product_series(const std::vector<std::complex<double>>& a, int sign, int kmax);

SuiteResult verify_symcore(std::uint64_t seed);
SuiteResult verify_local(std::uint64_t seed, std::shared_ptr<const TauTable> tau);
SuiteResult verify_vaughan(std::uint64_t seed, std::shared_ptr<const TauTable> tau, const ParallelMap& pool);
SuiteResult verify_inequalities(std::uint64_t seed, const ParallelMap& pool);
SuiteResult verify_characters(std::uint64_t seed, std::int64_t qmax = 150);

// tau must reach 10^4 for the local and vaughan suites.
std::vector<SuiteResult> run_verify(VerifySuite suite, std::uint64_t seed, std::shared_ptr<const TauTable> tau,
                                    const ParallelMap& pool);

}  // namespace bvlab
