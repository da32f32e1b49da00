#pragma once

// Shifted convolutions sum lambda(p) d(p-1) and sum lambda(m) d(m-1), directly and
// through divisor switching d(m) = 2 #{r | m, r < sqrt m} + [m is a square].

#include <cstdint>
#include <string_view>
#include <vector>

#include "bvlab/localcoeffs.hpp"
#include "bvlab/report.hpp"

namespace bvlab {

enum class ShiftOver { primes, integers };

std::string_view shift_over_name(ShiftOver o);
ShiftOver parse_shift_over(std::string_view s);  // throws ContractError

struct ShiftedSumReport {
  double x = 0.0;
  double direct = 0.0;
  double switched = 0.0;  // T1 + T2 + square_term
  double T1 = 0.0;        // moduli r <= sqrt(x) / (log x)^B
  double T2 = 0.0;        // the remaining r < sqrt(x - 1)
  double square_term = 0.0;
  double normalized = 0.0;
};

// d(0) := 0, so m = 1 never contributes. Throws RangeError beyond the coefficient reach.
double shifted_sum_direct(const ExemplarPi& pi, double x, ShiftOver over = ShiftOver::primes);

ShiftedSumReport divisor_switch_decompose(const ExemplarPi& pi, double x, ShiftOver over = ShiftOver::primes,
                                          double B = 8.0);

// x (log log x)^{3/2} / sqrt(log x) for primes, x (log log x)^{3/2} for integers.
double titchmarsh_scale(double x, ShiftOver over);

// c_q(n) = sum_{d | (q, n)} d mu(q/d).
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n);

// Columns x,direct,switched,T1,T2,square_term,normalized; flag "normalized_jump_over_20pct"
// when |normalized| grows by more than 20% between consecutive x.
ExperimentReport normalized_curve(const ExemplarPi& pi, const std::vector<double>& xs,
                                  ShiftOver over = ShiftOver::primes, double B = 8.0);

}  // namespace bvlab
