#pragma once

// L(s, Delta x chi) through the approximate functional equation with the Gaussian
// regularizer G(u) = exp(u^2 / kappa): root numbers by self-consistency, the second-moment
// experiment over primitive characters and the |L(1, Delta x chi_d)| scan.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "bvlab/characters.hpp"
#include "bvlab/report.hpp"
#include "bvlab/tau.hpp"

namespace bvlab {

class ParallelMap;

inline constexpr double kDeltaShift = 5.5;  // L_inf(s) = Gamma_C(s + 11/2)
inline constexpr int kDeltaWeight = 12;
inline constexpr int kDefaultKernelOrder = 64;  // kappa

// V_s(y) = (1/2 pi i) int y^{-u} exp(u^2/kappa) gamma(s+u)/gamma(s) du/u, tabulated on a
// uniform y grid with quintic Hermite interpolation.
class SmoothingKernel {
 public:
  explicit SmoothingKernel(std::complex<double> s, double mu = kDeltaShift, int kappa = kDefaultKernelOrder);

  std::complex<double> s() const { return s_; }
  // Trapezoidal quadrature on Re u = 2 (y >= 1) or Re u = -2 plus the residue at u = 0.
  std::complex<double> quadrature(double y, double h) const;
  std::complex<double> operator()(double y) const;
  // Beyond y_end every |V| is below 1e-13.
  double y_end() const { return y_end_; }
  double interpolation_error() const { return interp_error_; }

 private:
  // Equally spaced nodes u_j = c + i j h, |j| <= m.
  struct Contour {
    double c = 0.0, h = 0.0;
    int m = 0;
    std::vector<std::complex<double>> w;
  };
  Contour contour(double c, double h) const;
  std::complex<double> sum_nodes(const Contour& ct, double y, std::complex<double>* d1 = nullptr,
                                 std::complex<double>* d2 = nullptr) const;

  std::complex<double> s_;
  double mu_;
  int kappa_;
  double half_width_;
  Contour right_, left_;
  double step_ = 0.002;
  double y_end_ = 0.0;
  std::vector<std::complex<double>> value_, d1_, d2_;
  double interp_error_ = 0.0;
};

// Normalized coefficients lambda_Delta(n) = tau(n)/n^{11/2} and cached V tables.
class DeltaTwistEngine {
 public:
  explicit DeltaTwistEngine(std::shared_ptr<const TauTable> tau, int kernel_order = kDefaultKernelOrder);

  std::int64_t reach() const { return static_cast<std::int64_t>(lambda_.size()) - 1; }
  double lambda(std::int64_t n) const { return lambda_[static_cast<std::size_t>(n)]; }
  int kernel_order() const { return kappa_; }
  const SmoothingKernel& kernel(std::complex<double> s) const;
  // lambda(n) n^{-s} for n = 0..nmax (index 0 unused).
  std::shared_ptr<const std::vector<std::complex<double>>> weighted(std::complex<double> s, std::int64_t nmax) const;

 private:
  std::vector<double> lambda_;
  int kappa_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, double>, std::unique_ptr<SmoothingKernel>> kernels_;
  mutable std::map<std::pair<double, double>, std::shared_ptr<const std::vector<std::complex<double>>>> weighted_;
};

struct AFEContext {
  int weight = kDeltaWeight;
  double mu = kDeltaShift;
  int kernel_order = kDefaultKernelOrder;
  DirichletCharacter chi;
  std::vector<std::complex<double>> chi_values, chi_bar_values;
  std::int64_t conductor = 1;  // q_chi^2
  std::complex<double> epsilon{1.0};          // closed form, used for evaluation
  std::complex<double> epsilon_numeric{1.0};  // from the self-consistency solve
  std::shared_ptr<const DeltaTwistEngine> engine;
};

struct LValueRecord {
  std::complex<double> s;
  std::complex<double> value;
  std::int64_t truncation = 0;
  double est_error = 0.0;
};

// i^k tau(chi)^2 / q for primitive chi.
std::complex<double> closed_form_root_number(const DirichletCharacter& chi, int weight = kDeltaWeight);

// Builds the context, solving for the root number and checking it against the closed
// form (InconsistencyError beyond 1e-6, or when | |eps| - 1 | > tol).
AFEContext make_afe_context(std::shared_ptr<const DeltaTwistEngine> engine, const DirichletCharacter& chi,
                            double tol = 1e-8);

// eps = (A(X1) - A(X2)) / (B(X2) - B(X1)) at s0, X1 = 1, X2 = 2, where L = A + eps B.
std::complex<double> root_number(const AFEContext& ctx, double tol, double s0 = 0.6);

std::complex<double> smoothing_V(std::complex<double> s, double y, const AFEContext& ctx);

LValueRecord afe_eval(std::complex<double> s, const AFEContext& ctx, double X = 1.0);

// Completed Lambda(s) = N^{s/2} gamma(s) L(s).
std::complex<double> completed_L(std::complex<double> s, const AFEContext& ctx, double X = 1.0);

// Columns Q,t,moment,bound,ratio; bound = (Q^2 + Q (3+|t|)) log^2(Q (3+|t|)), Q floored at 3 inside the log.
ExperimentReport second_moment_experiment(std::shared_ptr<const DeltaTwistEngine> engine, double t,
                                          const std::vector<std::int64_t>& Qs, bool quadratic_only,
                                          const ParallelMap& pool);

// Columns d,conductor,L1_re,L1_im,abs_L1; meta records the minimum and the slope of
// log(running minimum) against log(conductor).
ExperimentReport siegel_scan(std::shared_ptr<const DeltaTwistEngine> engine, const std::vector<std::int64_t>& ds,
                             const ParallelMap& pool);

}  // namespace bvlab
