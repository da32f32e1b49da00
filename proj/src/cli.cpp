#include "bvlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bvlab/characters.hpp"
#include "bvlab/errors.hpp"
#include "bvlab/lfunc_afe.hpp"
#include "bvlab/localcoeffs.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/sieve_experiments.hpp"
#include "bvlab/tau.hpp"
#include "bvlab/titchmarsh.hpp"
#include "bvlab/verify.hpp"
#include "json.hpp"

namespace bvlab {

using nlohmann::ordered_json;

namespace {

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string format = "csv";
  std::string out;
  std::string tau_cache = "bvlab-tau.bin";
  std::string manifest;
};

// Run state shared by the subcommands and the manifest writer.
struct Run {
  Common common;
  std::string subcommand;
  ordered_json config = ordered_json::object();
  ordered_json versions = ordered_json::object();
  ordered_json flags = ordered_json::object();
  ordered_json meta = ordered_json::object();
  std::vector<std::string> outputs;
  std::string started = utc_now();
  std::unique_ptr<ParallelMap> pool;

  const ParallelMap& workers() {
    if (!pool) pool = std::make_unique<ParallelMap>(common.threads);
    return *pool;
  }

  std::shared_ptr<const TauTable> tau(std::int64_t n) {
    if (n > kMaxTauN) throw SizeLimitError("tau table is limited to " + std::to_string(kMaxTauN));
    auto t = std::make_shared<TauTable>(load_or_compute_tau(n, common.tau_cache, &workers()));
    versions["tau_n"] = t->size();
    versions["tau_fnv1a"] = t->checksum_hex();
    return t;
  }

  void emit(const std::string& text, std::ostream& out) {
    if (common.out.empty()) {
      out << text;
      return;
    }
    std::ofstream f(common.out, std::ios::binary);
    if (!f) throw Error("cannot write " + common.out);
    f << text;
    outputs.push_back(common.out);
  }

  void emit(const ExperimentReport& rep, std::ostream& out) {
    for (const auto& [k, v] : rep.flags()) flags[k] = v;
    for (const auto& [k, v] : rep.meta()) meta[k] = v;
    emit(common.format == "json" ? rep.to_json() + "\n" : rep.to_csv(), out);
  }

  void write_manifest(const std::string& status, int code, const std::string& error) {
    std::string path = common.manifest;
    if (path.empty()) path = common.out.empty() ? "bvlab-manifest.json" : common.out + ".manifest.json";
    ordered_json m;
    m["subcommand"] = subcommand;
    m["status"] = status;
    m["exit_code"] = code;
    if (!error.empty()) m["error"] = error;
    m["seed"] = common.seed;
    m["threads"] = common.threads;
    m["config"] = config;
    m["versions"] = versions;
    m["versions"]["bvlab"] = kVersion;
    m["started"] = started;
    m["finished"] = utc_now();
    m["outputs"] = outputs;
    if (!meta.empty()) m["meta"] = meta;
    if (!flags.empty()) m["flags"] = flags;
    std::ofstream f(path, std::ios::binary);
    if (f) f << m.dump(2) << "\n";
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double x = std::stod(item, &pos);
    if (pos != item.size()) throw ContractError("bad number: " + item);
    v.push_back(x);
  }
  if (v.empty()) throw ContractError("empty list");
  return v;
}

// "10..100" (step = first value unless given), "10..100:5", or "10,20,30".
std::vector<std::int64_t> parse_range(const std::string& s) {
  auto dots = s.find("..");
  std::vector<std::int64_t> out;
  if (dots == std::string::npos) {
    for (double x : parse_list(s)) out.push_back(static_cast<std::int64_t>(x));
    return out;
  }
  auto colon = s.find(':', dots);
  std::int64_t lo = std::stoll(s.substr(0, dots));
  std::int64_t hi = std::stoll(s.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
  std::int64_t step = colon == std::string::npos ? lo : std::stoll(s.substr(colon + 1));
  if (lo < 1 || step < 1 || hi < lo) throw ContractError("bad range: " + s);
  for (std::int64_t q = lo; q <= hi; q += step) out.push_back(q);
  return out;
}

std::int64_t tau_need(Exemplar e, double x) {
  if (e == Exemplar::zeta) return 0;
  return static_cast<std::int64_t>(std::floor(x));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Run run;
  auto& c = run.common;
  if (const char* env = std::getenv("BVLAB_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "ignoring malformed BVLAB_SEED\n";
    }
  }

  CLI::App app{"bvlab: desk-scale experiments around Bombieri-Vinogradov for automorphic coefficients"};
  app.set_config("--config", "", "INI file of flag=value lines; command-line flags take precedence");
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "root seed (falls back to BVLAB_SEED)");
  app.add_option("--threads", c.threads, "worker threads, 0 = all cores");
  app.add_option("--format", c.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "report path (stdout when absent)");
  app.add_option("--tau-cache", c.tau_cache, "binary tau cache path, empty to disable");
  app.add_option("--manifest", c.manifest, "manifest path (default <out>.manifest.json)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"symcore", "local", "vaughan", "inequalities", "characters", "all"}));

  std::string pi_name = "delta", weight = "plain", over = "primes";
  std::vector<double> ladder;
  double x = 1e5, eta = NAN, A = 1.0, B = 8.0;
  int rho = 0;
  std::int64_t Qcap = 0, qmin = 1;
  auto* bv = app.add_subcommand("bv", "discrepancy curve D(x, Q)");
  bv->add_option("--pi", pi_name)->check(CLI::IsMember({"zeta", "delta", "sym2-delta", "sym3-delta"}));
  bv->add_option("--x", x);
  bv->add_option("--eta", eta, "level exponent, default max(2, n/2)");
  bv->add_option("--A", A);
  bv->add_option("--B", B);
  bv->add_option("--rho", rho, "smoothing order, default floor(n/4)+1");
  bv->add_option("--Q", Qcap, "cap on the modulus range");
  bv->add_option("--q-min", qmin);
  bv->add_option("--weight", weight)->check(CLI::IsMember({"plain", "prime", "log", "vonmangoldt", "smoothed-rho"}));
  bv->add_option("--ladder", ladder, "comma-separated x values")->delimiter(',');

  auto* lf = app.add_subcommand("lfunc", "L(s, Delta x chi) experiments");
  lf->require_subcommand(1);
  double s_re = 0.5, s_im = 0.0, X = 1.0, t = 0.0;
  std::int64_t d = 1, dmax = 500;
  std::string Qs = "10..100";
  bool quadratic_only = false;
  auto* ev = lf->add_subcommand("eval", "one L-value");
  ev->add_option("--s", s_re, "real part of s");
  ev->add_option("--t", s_im, "imaginary part of s");
  ev->add_option("--d", d, "fundamental discriminant of the twist");
  ev->add_option("--X", X, "balance parameter");
  auto* scan = lf->add_subcommand("siegel-scan", "|L(1, Delta x chi_d)| over fundamental discriminants");
  scan->add_option("--dmax", dmax);
  auto* sm = lf->add_subcommand("second-moment", "sum of |L(1/2+it)|^2 over primitive characters");
  sm->add_option("--Q", Qs, "10..100, 10..100:5 or a comma list");
  sm->add_option("--t", t);
  sm->add_flag("--quadratic-only", quadratic_only);

  std::vector<double> xv{1e4, 1e5};
  auto* ti = app.add_subcommand("titchmarsh", "shifted divisor sums");
  ti->add_option("--pi", pi_name)->check(CLI::IsMember({"zeta", "delta", "sym2-delta", "sym3-delta"}))->required();
  ti->add_option("--x", xv, "comma-separated x values")->delimiter(',');
  ti->add_option("--over", over)->check(CLI::IsMember({"primes", "integers"}));
  ti->add_option("--B", B);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    run.subcommand = args.empty() ? "" : args.front();
    run.write_manifest("usage_error", kExitUsage, e.what());
    return kExitUsage;
  }

  int code = kExitOk;
  try {
    if (*verify) {
      run.subcommand = "verify";
      run.config = {{"suite", suite}};
      auto which = parse_suite(suite);
      std::shared_ptr<const TauTable> tau;
      if (which == VerifySuite::all || which == VerifySuite::local || which == VerifySuite::vaughan) tau = run.tau(10'000);
      auto results = run_verify(which, c.seed, tau, run.workers());
      ordered_json summary = ordered_json::array();
      for (const auto& r : results) {
        summary.push_back({{"suite", r.suite}, {"checks", r.checks}, {"passed", r.passed()}});
        for (const auto& f : r.failures) err << f << "\n";
        if (!r.passed()) code = kExitCheckFailed;
      }
      ordered_json doc{{"seed", c.seed}, {"suites", summary}, {"passed", code == kExitOk}};
      run.emit(doc.dump(2) + "\n", out);
    } else if (*bv) {
      run.subcommand = "bv";
      auto e = parse_exemplar(pi_name);
      auto cfg = default_config(e);
      cfg.x = x;
      if (!std::isnan(eta)) cfg.eta = eta;
      cfg.A = A;
      cfg.B = B;
      if (rho > 0) cfg.rho = rho;
      cfg.seed = c.seed;
      cfg.q_min = qmin;
      cfg.q_max = Qcap;
      cfg.weight = parse_weight(weight);
      cfg.ladder = ladder;
      run.config = {{"pi", pi_name}, {"x", cfg.x}, {"eta", cfg.eta}, {"A", cfg.A}, {"B", cfg.B}, {"rho", cfg.rho},
                    {"Q", cfg.q_max}, {"q_min", cfg.q_min}, {"weight", weight}, {"ladder", cfg.ladder}};
      if (!(cfg.x >= 10.0)) throw ContractError("--x must be at least 10");
      double need = cfg.x;
      for (double v : cfg.ladder) need = std::max(need, v);
      auto pi = make_exemplar(e, e == Exemplar::zeta ? nullptr : run.tau(tau_need(e, need)));
      auto curve = run_bv_curve(pi, cfg, run.workers());
      auto rep = curve.to_report();
      rep.set_flag("not_strictly_decreasing", !curve.strictly_decreasing());
      run.emit(rep, out);
    } else if (*lf) {
      run.subcommand = "lfunc";
      if (*ev) {
        run.config = {{"mode", "eval"}, {"s_re", s_re}, {"s_im", s_im}, {"d", d}, {"X", X}};
        if (!is_fundamental_discriminant(d) && d != 1) throw ContractError("--d must be 1 or a fundamental discriminant");
        auto q = std::llabs(d);
        auto eng = std::make_shared<DeltaTwistEngine>(run.tau(std::min<std::int64_t>(kMaxTauN, 100 * q + 2000)));
        auto ctx = make_afe_context(eng, kronecker_character(d));
        auto r = afe_eval({s_re, s_im}, ctx, X);
        ExperimentReport rep("lvalue", {"d", "s_re", "s_im", "value_re", "value_im", "abs", "truncation", "est_error",
                                        "epsilon_re", "epsilon_im"});
        rep.add_row({d, s_re, s_im, r.value.real(), r.value.imag(), std::abs(r.value), r.truncation, r.est_error,
                     ctx.epsilon.real(), ctx.epsilon.imag()});
        run.emit(rep, out);
      } else if (*scan) {
        run.config = {{"mode", "siegel-scan"}, {"dmax", dmax}};
        if (dmax < 1 || dmax > 10'000) throw SizeLimitError("--dmax must lie in [1, 10^4]");
        std::vector<std::int64_t> ds{1};
        for (auto v : fundamental_discriminants(dmax)) ds.push_back(v);
        auto eng = std::make_shared<DeltaTwistEngine>(run.tau(std::min<std::int64_t>(kMaxTauN, 100 * dmax + 2000)));
        run.emit(siegel_scan(eng, ds, run.workers()), out);
      } else {
        auto qs = parse_range(Qs);
        run.config = {{"mode", "second-moment"}, {"Q", qs}, {"t", t}, {"quadratic_only", quadratic_only}};
        std::int64_t qmax = *std::max_element(qs.begin(), qs.end());
        if (qmax > 200) throw SizeLimitError("second moment is limited to Q <= 200");
        auto eng = std::make_shared<DeltaTwistEngine>(run.tau(std::min<std::int64_t>(kMaxTauN, 100 * qmax + 2000)));
        run.emit(second_moment_experiment(eng, t, qs, quadratic_only, run.workers()), out);
      }
    } else if (*ti) {
      run.subcommand = "titchmarsh";
      auto e = parse_exemplar(pi_name);
      run.config = {{"pi", pi_name}, {"x", xv}, {"over", over}, {"B", B}};
      double need = *std::max_element(xv.begin(), xv.end());
      auto pi = make_exemplar(e, e == Exemplar::zeta ? nullptr : run.tau(tau_need(e, need)));
      auto rep = normalized_curve(pi, xv, parse_shift_over(over), B);
      bool identity = true;
      for (std::size_t i = 0; i < rep.size(); ++i) {
        double dir = rep.number(i, "direct"), sw = rep.number(i, "switched");
        if (!(std::abs(dir - sw) <= 1e-6 * (1.0 + std::abs(dir)))) identity = false;
      }
      rep.set_flag("identity_failed", !identity);
      run.emit(rep, out);
      if (!identity) {
        err << R"({"check":"divisor-switching","status":"failed"})" << "\n";
        code = kExitCheckFailed;
      }
    }
  } catch (const ContractError& e) {
    err << "usage: " << e.what() << "\n";
    run.write_manifest("usage_error", kExitUsage, e.what());
    return kExitUsage;
  } catch (const SizeLimitError& e) {
    err << "usage: " << e.what() << "\n";
    run.write_manifest("usage_error", kExitUsage, e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    run.write_manifest("error", kExitRuntime, e.what());
    return kExitRuntime;
  }
  run.write_manifest(code == kExitOk ? "ok" : "check_failed", code, "");
  return code;
}

}  // namespace bvlab
