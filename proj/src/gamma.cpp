#include "bvlab/gamma.hpp"

#include <cmath>

namespace bvlab {

namespace {

constexpr double kG = 7.0;
constexpr double kCoef[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,      -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  C x = kCoef[0];
  for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
  const C t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> log_gamma_C(std::complex<double> s) {
  return std::log(2.0) - s * std::log(2.0 * M_PI) + log_gamma(s);
}

}  // namespace bvlab
