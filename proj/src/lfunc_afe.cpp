#include "bvlab/lfunc_afe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bvlab/errors.hpp"
#include "bvlab/gamma.hpp"
#include "bvlab/parallel.hpp"

namespace bvlab {

using cplx = std::complex<double>;

namespace {

constexpr double kQuadStep = 0.1;
constexpr double kContour = 2.0;
constexpr double kTailCut = 1e-13;

cplx log_gamma_ratio(cplx s, cplx u, double mu) { return log_gamma_C(s + u + mu) - log_gamma_C(s + mu); }

std::pair<double, double> key_of(cplx s) { return {s.real(), s.imag()}; }

}  // namespace

SmoothingKernel::SmoothingKernel(cplx s, double mu, int kappa)
    : s_(s), mu_(mu), kappa_(kappa), half_width_(std::abs(s.imag()) + 50.0) {
  if (kappa < 2 || kappa % 2 != 0) throw ContractError("kernel order must be a positive even integer");
  right_ = contour(kContour, kQuadStep);
  left_ = contour(-kContour, kQuadStep);

  for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    cplx coarse = quadrature(y, kQuadStep), fine = quadrature(y, kQuadStep / 2);
    if (std::abs(coarse - fine) > 1e-10 * std::max(1.0, std::abs(fine)))
      throw NumericError("smoothing kernel quadrature did not converge at y = " + std::to_string(y));
  }

  y_end_ = 1.0;
  auto small = [&](double y) { return std::abs(quadrature(y, kQuadStep)) < kTailCut; };
  while (!(small(y_end_) && small(1.2 * y_end_) && small(1.5 * y_end_))) {
    y_end_ *= 1.05;
    if (y_end_ > 1e4) throw NumericError("smoothing kernel does not decay");
  }

  step_ = 0.002 * std::min(1.0, 8.0 / std::abs(s + mu));
  auto n = static_cast<std::size_t>(std::ceil(y_end_ / step_)) + 1;
  value_.assign(n + 1, 0.0);
  d1_.assign(n + 1, 0.0);
  d2_.assign(n + 1, 0.0);
  value_[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double y = static_cast<double>(i) * step_;
    value_[i] = y >= 1.0 ? sum_nodes(right_, y, &d1_[i], &d2_[i]) : 1.0 + sum_nodes(left_, y, &d1_[i], &d2_[i]);
  }
  for (std::size_t i = 0; i + 1 < n; i += 37) {
    double y = (static_cast<double>(i) + 0.5) * step_;
    interp_error_ = std::max(interp_error_, std::abs((*this)(y) - quadrature(y, kQuadStep)));
  }
}

SmoothingKernel::Contour SmoothingKernel::contour(double c, double h) const {
  Contour ct{c, h, static_cast<int>(std::ceil(half_width_ / h)), {}};
  for (int j = -ct.m; j <= ct.m; ++j) {
    cplx u(c, j * h);
    ct.w.push_back((h / (2.0 * std::numbers::pi)) *
                   std::exp(u * u / static_cast<double>(kappa_) + log_gamma_ratio(s_, u, mu_)) / u);
  }
  return ct;
}

cplx SmoothingKernel::sum_nodes(const Contour& ct, double y, cplx* d1, cplx* d2) const {
  double ly = std::log(y);
  // y^{-u_j} = y^{-c} e^{-i j h log y}, stepped by a fixed rotation
  cplx rot = std::polar(1.0, -ct.h * ly);
  cplx z = std::polar(std::exp(-ct.c * ly), ct.m * ct.h * ly);
  cplx v = 0.0, a = 0.0, b = 0.0;
  for (int j = -ct.m; j <= ct.m; ++j) {
    cplx term = ct.w[static_cast<std::size_t>(j + ct.m)] * z;
    cplx u(ct.c, j * ct.h);
    v += term;
    a -= term * u;
    b += term * u * (u + 1.0);
    z *= rot;
  }
  if (d1) *d1 = a / y;
  if (d2) *d2 = b / (y * y);
  return v;
}

cplx SmoothingKernel::quadrature(double y, double h) const {
  if (y <= 0.0) return 1.0;
  bool right = y >= 1.0;
  if (h == kQuadStep) return right ? sum_nodes(right_, y) : 1.0 + sum_nodes(left_, y);
  cplx v = sum_nodes(contour(right ? kContour : -kContour, h), y);
  return right ? v : 1.0 + v;
}

cplx SmoothingKernel::operator()(double y) const {
  if (y <= 0.0) return 1.0;
  double pos = y / step_;
  auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= value_.size()) return 0.0;
  double t = pos - static_cast<double>(i);
  double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5, h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  double g0 = 10 * t3 - 15 * t4 + 6 * t5, g1 = -4 * t3 + 7 * t4 - 3 * t5, g2 = 0.5 * (t3 - 2 * t4 + t5);
  double hh = step_ * step_;
  return h0 * value_[i] + h1 * step_ * d1_[i] + h2 * hh * d2_[i] + g0 * value_[i + 1] + g1 * step_ * d1_[i + 1] +
         g2 * hh * d2_[i + 1];
}

DeltaTwistEngine::DeltaTwistEngine(std::shared_ptr<const TauTable> tau, int kernel_order) : kappa_(kernel_order) {
  if (!tau) throw ContractError("tau table required");
  lambda_.assign(static_cast<std::size_t>(tau->size()) + 1, 0.0);
  for (std::int64_t n = 1; n <= tau->size(); ++n) {
    long double nn = static_cast<long double>(n);
    lambda_[static_cast<std::size_t>(n)] =
        static_cast<double>(static_cast<long double>((*tau)[n]) / (std::pow(nn, 5.0L) * std::sqrt(nn)));
  }
}

const SmoothingKernel& DeltaTwistEngine::kernel(cplx s) const {
  std::lock_guard lock(mu_);
  auto& slot = kernels_[key_of(s)];
  if (!slot) slot = std::make_unique<SmoothingKernel>(s, kDeltaShift, kappa_);
  return *slot;
}

std::shared_ptr<const std::vector<cplx>> DeltaTwistEngine::weighted(cplx s, std::int64_t nmax) const {
  if (nmax > reach()) throw RangeError("AFE needs lambda(n) up to " + std::to_string(nmax) + ", table reaches " +
                                       std::to_string(reach()));
  std::lock_guard lock(mu_);
  auto& slot = weighted_[key_of(s)];
  if (slot && static_cast<std::int64_t>(slot->size()) > nmax) return slot;
  std::int64_t len = std::max<std::int64_t>(nmax, slot ? 2 * static_cast<std::int64_t>(slot->size()) : 0);
  len = std::min(len, reach());
  auto v = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(len) + 1);
  for (std::int64_t n = 1; n <= len; ++n)
    (*v)[static_cast<std::size_t>(n)] = lambda_[static_cast<std::size_t>(n)] * std::exp(-s * std::log(double(n)));
  slot = v;
  return slot;
}

namespace {

struct Parts {
  cplx A, B;  // L = A + eps * B
  std::int64_t n1 = 0, n2 = 0;
  double err = 0.0;
};

Parts afe_parts(cplx s, const AFEContext& ctx, double X) {
  if (!(X > 0.0)) throw ContractError("AFE balance X must be positive");
  const auto& eng = *ctx.engine;
  const auto& k1 = eng.kernel(s);
  const auto& k2 = eng.kernel(1.0 - s);
  auto q = static_cast<double>(ctx.chi.modulus());
  double sqrtN = std::sqrt(static_cast<double>(ctx.conductor));
  Parts p;
  p.n1 = static_cast<std::int64_t>(std::floor(k1.y_end() * sqrtN / X));
  p.n2 = static_cast<std::int64_t>(std::floor(k2.y_end() * sqrtN * X));
  auto c1 = eng.weighted(s, p.n1);
  auto c2 = eng.weighted(1.0 - s, p.n2);
  auto qi = static_cast<std::int64_t>(q);

  cplx a = 0.0;
  double mass1 = 0.0;
  for (std::int64_t n = 1, r = 1 % qi; n <= p.n1; ++n) {
    const cplx& chi = ctx.chi_values[static_cast<std::size_t>(r)];
    if (chi != 0.0) {
      const cplx& c = (*c1)[static_cast<std::size_t>(n)];
      a += chi * c * k1(static_cast<double>(n) * X / sqrtN);
      mass1 += std::abs(c);
    }
    if (++r == qi) r = 0;
  }
  cplx b = 0.0;
  double mass2 = 0.0;
  for (std::int64_t n = 1, r = 1 % qi; n <= p.n2; ++n) {
    const cplx& chi = ctx.chi_bar_values[static_cast<std::size_t>(r)];
    if (chi != 0.0) {
      const cplx& c = (*c2)[static_cast<std::size_t>(n)];
      b += chi * c * k2(static_cast<double>(n) / (X * sqrtN));
      mass2 += std::abs(c);
    }
    if (++r == qi) r = 0;
  }
  cplx factor = std::exp((0.5 - s) * std::log(static_cast<double>(ctx.conductor)) +
                         log_gamma_C(1.0 - s + ctx.mu) - log_gamma_C(s + ctx.mu));
  p.A = a;
  p.B = factor * b;
  p.err = (k1.interpolation_error() + kTailCut) * mass1 +
          std::abs(factor) * (k2.interpolation_error() + kTailCut) * mass2 +
          1e-15 * (mass1 + std::abs(factor) * mass2);
  return p;
}

}  // namespace

cplx closed_form_root_number(const DirichletCharacter& chi, int weight) {
  if (!chi.is_primitive()) throw ContractError("closed-form root number needs a primitive character");
  cplx g = gauss_sum(chi);
  cplx ik = std::pow(cplx(0.0, 1.0), weight % 4);
  return ik * g * g / static_cast<double>(chi.modulus());
}

cplx root_number(const AFEContext& ctx, double tol, double s0) {
  Parts p1 = afe_parts(s0, ctx, 1.0), p2 = afe_parts(s0, ctx, 2.0);
  cplx den = p2.B - p1.B;
  if (std::abs(den) < 1e-8) throw NumericError("root number solve is ill-conditioned");
  cplx eps = (p1.A - p2.A) / den;
  if (std::abs(std::abs(eps) - 1.0) > tol)
    throw InconsistencyError("numeric root number for modulus " + std::to_string(ctx.chi.modulus()) +
                             " deviates from the unit circle by " + format_number(std::abs(eps) - 1.0));
  return eps;
}

AFEContext make_afe_context(std::shared_ptr<const DeltaTwistEngine> engine, const DirichletCharacter& chi,
                            double tol) {
  if (!engine) throw ContractError("AFE engine required");
  if (!chi.is_primitive()) throw ContractError("AFE twists need a primitive character");
  AFEContext ctx;
  ctx.chi = chi;
  ctx.chi_values = chi.values();
  ctx.chi_bar_values = ctx.chi_values;
  for (auto& v : ctx.chi_bar_values) v = std::conj(v);
  ctx.conductor = chi.modulus() * chi.modulus();
  ctx.kernel_order = engine->kernel_order();
  ctx.engine = std::move(engine);
  ctx.epsilon_numeric = root_number(ctx, tol, 0.6);
  ctx.epsilon = closed_form_root_number(chi, ctx.weight);
  if (std::abs(ctx.epsilon - ctx.epsilon_numeric) > 1e-6)
    throw InconsistencyError("root number mismatch for modulus " + std::to_string(chi.modulus()));
  return ctx;
}

cplx smoothing_V(cplx s, double y, const AFEContext& ctx) {
  SmoothingKernel k(s, ctx.mu, ctx.kernel_order);
  cplx coarse = k.quadrature(y, kQuadStep), fine = k.quadrature(y, kQuadStep / 2);
  if (std::abs(coarse - fine) > 1e-10 * std::max(1.0, std::abs(fine)))
    throw NumericError("V_s(y) quadrature did not converge");
  return fine;
}

LValueRecord afe_eval(cplx s, const AFEContext& ctx, double X) {
  Parts p = afe_parts(s, ctx, X);
  LValueRecord r;
  r.s = s;
  r.value = p.A + ctx.epsilon * p.B;
  r.truncation = std::max(p.n1, p.n2);
  r.est_error = p.err;
  return r;
}

cplx completed_L(cplx s, const AFEContext& ctx, double X) {
  cplx l = afe_eval(s, ctx, X).value;
  return std::exp(0.5 * s * std::log(static_cast<double>(ctx.conductor)) + log_gamma_C(s + ctx.mu)) * l;
}

ExperimentReport second_moment_experiment(std::shared_ptr<const DeltaTwistEngine> engine, double t,
                                          const std::vector<std::int64_t>& Qs, bool quadratic_only,
                                          const ParallelMap& pool) {
  if (Qs.empty()) throw ContractError("second moment needs at least one Q");
  std::int64_t qmax = *std::max_element(Qs.begin(), Qs.end());
  if (qmax < 1) throw ContractError("Q must be positive");
  if (qmax > 200) throw SizeLimitError("second moment is limited to Q <= 200");
  cplx s(0.5, t);
  engine->kernel(s);
  engine->kernel(1.0 - s);
  engine->kernel(0.6);
  engine->kernel(0.4);

  std::vector<double> per_q(static_cast<std::size_t>(qmax) + 1, 0.0);
  pool.for_each(static_cast<std::size_t>(qmax), [&](std::size_t i) {
    auto q = static_cast<std::int64_t>(i) + 1;
    double acc = 0.0;
    for (const auto& chi : primitive_characters(q)) {
      if (quadratic_only && !(chi.is_quadratic() || q == 1)) continue;
      auto ctx = make_afe_context(engine, chi);
      acc += std::norm(afe_eval(s, ctx).value);
    }
    per_q[i + 1] = acc;
  });

  ExperimentReport rep("second_moment", {"Q", "t", "moment", "bound", "ratio"});
  rep.set_meta("family", quadratic_only ? "quadratic" : "all-primitive");
  double lo = INFINITY, hi = 0.0;
  for (auto Q : Qs) {
    if (Q < 1) throw ContractError("Q must be positive");
    double moment = 0.0;
    for (std::int64_t q = 1; q <= Q; ++q) moment += per_q[static_cast<std::size_t>(q)];
    double qd = static_cast<double>(Q), at = 3.0 + std::abs(t);
    double lg = std::log(std::max(qd, 3.0) * at);
    double bound = (qd * qd + qd * at) * lg * lg;
    double ratio = moment / bound;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    rep.add_row({Q, t, moment, bound, ratio});
  }
  rep.set_meta("ratio_min", lo);
  rep.set_meta("ratio_max", hi);
  rep.set_flag("ratio_band_exceeds_10", !(hi <= 10.0 * lo));
  return rep;
}

ExperimentReport siegel_scan(std::shared_ptr<const DeltaTwistEngine> engine, const std::vector<std::int64_t>& ds,
                             const ParallelMap& pool) {
  for (auto d : ds)
    if (std::llabs(d) > 10'000) throw SizeLimitError("siegel scan is limited to |d| <= 10^4");
  engine->kernel(1.0);
  engine->kernel(0.0);
  engine->kernel(0.6);
  engine->kernel(0.4);
  std::vector<LValueRecord> vals(ds.size());
  pool.for_each(ds.size(), [&](std::size_t i) {
    auto ctx = make_afe_context(engine, kronecker_character(ds[i]));
    vals[i] = afe_eval(1.0, ctx);
  });

  ExperimentReport rep("siegel_scan", {"d", "conductor", "L1_re", "L1_im", "abs_L1"});
  std::vector<std::size_t> order(ds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::llabs(ds[a]) < std::llabs(ds[b]); });
  double running = INFINITY, sx = 0, sy = 0, sxx = 0, sxy = 0;
  double cnt = 0;
  bool nonpositive = false;
  for (auto i : order) {
    auto cond = std::llabs(ds[i]);
    double a = std::abs(vals[i].value);
    rep.add_row({ds[i], cond, vals[i].value.real(), vals[i].value.imag(), a});
    if (!(a > 0.0)) {
      nonpositive = true;
      continue;
    }
    running = std::min(running, a);
    double x = std::log(static_cast<double>(cond)), y = std::log(running);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  double slope = NAN;
  if (cnt >= 2 && cnt * sxx - sx * sx > 0) slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  rep.set_meta("min_abs_L1", running);
  rep.set_meta("envelope_slope", slope);
  rep.set_flag("nonpositive_value", nonpositive);
  rep.set_flag("envelope_slope_below_-0.5", !(slope >= -0.5));
  return rep;
}

}  // namespace bvlab
