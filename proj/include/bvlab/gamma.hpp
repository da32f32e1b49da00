#pragma once

#include <complex>

namespace bvlab {

// log Gamma(z) for complex z off the poles (Lanczos, g = 7, nine terms, with
// reflection for Re z < 1/2). The imaginary part is continuous along vertical lines
// in the right half plane but not reduced mod 2 pi.
std::complex<double> log_gamma(std::complex<double> z);

// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
std::complex<double> log_gamma_C(std::complex<double> s);

}  // namespace bvlab
