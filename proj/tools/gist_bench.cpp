// Benchmark harness: runs the solver variants on a LIBSVM file or a synthetic
// problem and writes per-variant trace CSVs plus a JSON summary. Also exposes
// the prox-vs-grid-oracle self test. Intended for scripts and CI, not
// interactive use.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gist/baselines.hpp"
#include "gist/data_io.hpp"
#include "gist/kernels.hpp"
#include "gist/losses.hpp"
#include "gist/penalties.hpp"
#include "gist/solver.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

struct VariantSpec {
  gist::StepInit step_init;
  gist::LineSearch line_search;
  bool scp = false;
  bool ms = false;
};

const std::map<std::string, VariantSpec>& variant_registry() {
  static const std::map<std::string, VariantSpec> reg{
      {"gist_1", {gist::StepInit::ConstantOne, gist::LineSearch::Monotone}},
      {"gist_prev", {gist::StepInit::PreviousT, gist::LineSearch::Monotone}},
      {"gistbb_m", {gist::StepInit::BarzilaiBorwein, gist::LineSearch::Monotone}},
      {"gistbb_nm",
       {gist::StepInit::BarzilaiBorwein, gist::LineSearch::NonMonotone}},
      {"scpbb_nm",
       {gist::StepInit::BarzilaiBorwein, gist::LineSearch::NonMonotone, true}},
      {"ms",
       {gist::StepInit::BarzilaiBorwein, gist::LineSearch::Monotone, false,
        true}},
  };
  return reg;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

struct SyntheticSpec {
  std::size_t n = 200;
  std::size_t d = 1000;
  double density = 0.01;
  std::size_t sparsity = 10;
  double noise = 0.1;
  std::uint64_t seed = 1;
};

SyntheticSpec parse_synthetic(const std::string& spec) {
  SyntheticSpec out;
  for (const auto& kv : split(spec, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--synthetic", "expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    try {
      if (key == "n")
        out.n = std::stoull(val);
      else if (key == "d")
        out.d = std::stoull(val);
      else if (key == "density")
        out.density = std::stod(val);
      else if (key == "sparsity")
        out.sparsity = std::stoull(val);
      else if (key == "noise")
        out.noise = std::stod(val);
      else if (key == "seed")
        out.seed = std::stoull(val);
      else
        throw CLI::ValidationError("--synthetic", "unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--synthetic", "bad value for '" + key + "'");
    }
  }
  return out;
}

const char* termination_name(gist::Termination t) {
  switch (t) {
    case gist::Termination::RelativeChange: return "relative_change";
    case gist::Termination::MaxIters: return "max_iters";
    case gist::Termination::LineSearchExhausted: return "line_search_exhausted";
  }
  return "unknown";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace(const std::filesystem::path& path, const gist::SolveResult& res,
                 bool with_stage) {
  std::ofstream out(path);
  out << "iter,objective,t_accepted,ls_trials,delta_w_sq,elapsed_s";
  if (with_stage) out << ",stage";
  out << '\n';
  for (const auto& rec : res.trace) {
    out << rec.k << ',' << fmt(rec.objective) << ',' << fmt(rec.t_accepted)
        << ',' << rec.line_search_trials << ',' << fmt(rec.delta_w_norm_sq)
        << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", rec.elapsed_seconds);
    out << buf;
    if (with_stage) out << ',' << rec.stage;
    out << '\n';
  }
}

struct RunOptions {
  std::string loss = "logistic";
  std::string penalty = "capped_l1";
  double lambda = 1e-4;
  double theta = 0.1;
  std::string variants = "gist_1,gist_prev,gistbb_m,gistbb_nm,scpbb_nm,ms";
  std::string data_path;
  std::string synthetic;
  std::string out_dir = ".";
  bool parallel = false;
  std::size_t ms_stages = 10;
  gist::SolverConfig base;  // sigma/m/eta/t bounds/tolerances flags land here
};

int run_benchmark(const RunOptions& opt) {
  if (opt.data_path.empty() == opt.synthetic.empty()) {
    std::cerr << "error: exactly one of --data and --synthetic is required\n";
    return kExitUsage;
  }

  const auto& registry = variant_registry();
  std::vector<std::string> variants = split(opt.variants, ',');
  for (const auto& v : variants) {
    if (!registry.count(v)) {
      std::cerr << "error: unknown variant '" << v << "'\n";
      return kExitUsage;
    }
  }

  gist::LossKind loss_kind;
  if (opt.loss == "logistic")
    loss_kind = gist::LossKind::Logistic;
  else if (opt.loss == "least_squares")
    loss_kind = gist::LossKind::LeastSquares;
  else {
    std::cerr << "error: unknown loss '" << opt.loss << "'\n";
    return kExitUsage;
  }

  gist::PenaltyFamily family;
  if (opt.penalty == "l1")
    family = gist::PenaltyFamily::L1;
  else if (opt.penalty == "lsp")
    family = gist::PenaltyFamily::Lsp;
  else if (opt.penalty == "scad")
    family = gist::PenaltyFamily::Scad;
  else if (opt.penalty == "mcp")
    family = gist::PenaltyFamily::Mcp;
  else if (opt.penalty == "capped_l1")
    family = gist::PenaltyFamily::CappedL1;
  else {
    std::cerr << "error: unknown penalty '" << opt.penalty << "'\n";
    return kExitUsage;
  }

  std::optional<gist::Penalty> penalty;
  try {
    penalty.emplace(family, opt.lambda, opt.theta);
    opt.base.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::optional<gist::Dataset> dataset;
  try {
    if (!opt.data_path.empty()) {
      std::ifstream in(opt.data_path);
      if (!in) {
        std::cerr << "error: cannot open '" << opt.data_path << "'\n";
        return kExitData;
      }
      dataset = gist::parse_libsvm(in);
    } else {
      const SyntheticSpec spec = parse_synthetic(opt.synthetic);
      dataset = gist::synthesize(spec.n, spec.d, spec.density, spec.sparsity,
                                 spec.noise, spec.seed, loss_kind)
                    .data;
    }
    if (loss_kind == gist::LossKind::Logistic)
      dataset = gist::binarize_multiclass(*dataset);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }

  const gist::Loss loss(loss_kind, dataset->x, dataset->y);
  const gist::DenseVector w0(loss.dim(), 0.0);  // zero start

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);

  json summary = json::array();
  std::mutex mu;
  bool solver_failure = false;

  auto run_one = [&](const std::string& name) {
    const VariantSpec& vs = registry.at(name);
    gist::SolverConfig cfg = opt.base;
    cfg.step_init = vs.step_init;
    cfg.line_search = vs.line_search;

    gist::SolveResult res;
    if (vs.ms) {
      gist::MsConfig ms;
      ms.outer_iters = opt.ms_stages;
      ms.inner = cfg;
      ms.inner.line_search = gist::LineSearch::Monotone;
      res = gist::ms_solve(loss, *penalty, ms, w0);
    } else if (vs.scp) {
      res = gist::scp_solve(loss, *penalty, cfg, w0);
    } else {
      res = gist::solve(loss, *penalty, cfg, w0);
    }

    write_trace(std::filesystem::path(opt.out_dir) / (name + ".trace.csv"), res,
                vs.ms);

    json entry;
    entry["variant"] = name;
    entry["final_objective"] =
        res.trace.empty() ? res.initial_objective : res.trace.back().objective;
    entry["iterations"] = res.trace.size();
    entry["termination"] = termination_name(res.termination);
    entry["residual"] = res.critical_point_residual;
    entry["config"] = {
        {"loss", opt.loss},       {"penalty", opt.penalty},
        {"lambda", opt.lambda},   {"theta", opt.theta},
        {"sigma", cfg.sigma},     {"eta", cfg.eta},
        {"m", cfg.window_m},      {"t_min", cfg.t_min},
        {"t_max", cfg.t_max},     {"rel_tol", cfg.rel_tol},
        {"max_iters", cfg.max_outer_iters},
        {"kernel_backend", std::string(gist::kernels::active_backend())},
    };
    std::scoped_lock lock(mu);
    summary.push_back(std::move(entry));
    if (res.termination == gist::Termination::LineSearchExhausted)
      solver_failure = true;
  };

  if (opt.parallel) {
    std::vector<std::thread> workers;
    workers.reserve(variants.size());
    for (const auto& name : variants) workers.emplace_back(run_one, name);
    for (auto& t : workers) t.join();
  } else {
    for (const auto& name : variants) run_one(name);
  }

  // Stable output order regardless of worker scheduling.
  std::sort(summary.begin(), summary.end(), [](const json& a, const json& b) {
    return a["variant"].get<std::string>() < b["variant"].get<std::string>();
  });
  std::ofstream out(std::filesystem::path(opt.out_dir) / "summary.json");
  out << summary.dump(2) << '\n';

  return solver_failure ? kExitSolver : 0;
}

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double grid_step = 1e-4;
};

int verify_prox(const VerifyOptions& opt) {
  using gist::Penalty;
  using gist::PenaltyFamily;
  struct FamilyCase {
    PenaltyFamily family;
    const char* name;
    double theta_lo, theta_hi;
  };
  const FamilyCase cases[] = {
      {PenaltyFamily::L1, "l1", 1.0, 1.0},
      {PenaltyFamily::Lsp, "lsp", 0.1, 10.0},
      {PenaltyFamily::Scad, "scad", 2.01, 10.0},
      {PenaltyFamily::Mcp, "mcp", 0.1, 10.0},
      {PenaltyFamily::CappedL1, "capped_l1", 0.1, 10.0},
  };

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> lam_d(0.01, 10.0);
  std::uniform_real_distribution<double> u_d(-20.0, 20.0);
  std::uniform_real_distribution<double> t_d(0.01, 100.0);

  double overall = -1.0 / 0.0;
  for (const auto& fc : cases) {
    std::uniform_real_distribution<double> theta_d(fc.theta_lo, fc.theta_hi);
    double worst = -1.0 / 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      const Penalty p(fc.family, lam_d(rng), theta_d(rng));
      const double u = u_d(rng);
      const double t = t_d(rng);
      const double w = p.prox_scalar(u, t);
      const double h_closed = gist::prox_objective(p, w, u, t);
      const double h_grid = gist::grid_prox_scan(p, u, t, opt.grid_step).h;
      worst = std::max(worst, h_closed - h_grid);
    }
    std::printf("%-10s max h-gap (closed-form minus grid): %.3e\n", fc.name,
                worst);
    overall = std::max(overall, worst);
  }
  std::printf("overall max h-gap: %.3e (threshold 1e-06, grid step %g)\n",
              overall, opt.grid_step);
  return overall <= 1e-6 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GIST benchmark harness"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "run solver variants and write traces");
  run->add_option("--loss", run_opt.loss, "logistic | least_squares");
  run->add_option("--penalty", run_opt.penalty, "l1 | lsp | scad | mcp | capped_l1");
  run->add_option("--lambda", run_opt.lambda, "regularization weight");
  run->add_option("--theta", run_opt.theta, "penalty shape parameter");
  run->add_option("--variants", run_opt.variants, "comma-separated variant list");
  run->add_option("--data", run_opt.data_path, "LIBSVM input file");
  run->add_option("--synthetic", run_opt.synthetic,
                  "synthetic problem, e.g. n=200,d=1000,density=0.01,seed=7");
  run->add_option("--out", run_opt.out_dir, "output directory");
  run->add_option("--sigma", run_opt.base.sigma, "sufficient-decrease constant");
  run->add_option("--eta", run_opt.base.eta, "line-search growth factor");
  run->add_option("--m", run_opt.base.window_m, "non-monotone window");
  run->add_option("--t-min", run_opt.base.t_min, "lower clamp for t init");
  run->add_option("--t-max", run_opt.base.t_max, "upper clamp for t init");
  run->add_option("--rel-tol", run_opt.base.rel_tol, "relative-change tolerance");
  run->add_option("--max-iters", run_opt.base.max_outer_iters, "outer iteration cap");
  run->add_option("--max-ls-trials", run_opt.base.max_line_search_trials,
                  "line-search trial cap");
  run->add_option("--ms-stages", run_opt.ms_stages, "multi-stage outer stages");
  run->add_flag("--parallel", run_opt.parallel, "run variants in worker threads");

  VerifyOptions verify_opt;
  auto* verify =
      app.add_subcommand("verify-prox", "randomized prox-vs-grid-oracle self test");
  verify->add_option("--samples", verify_opt.samples, "samples per family");
  verify->add_option("--seed", verify_opt.seed, "RNG seed");
  verify->add_option("--grid-step", verify_opt.grid_step, "oracle grid step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*run) return run_benchmark(run_opt);
  return verify_prox(verify_opt);
}
