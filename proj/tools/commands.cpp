#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "brex/certify.hpp"
#include "brex/errors.hpp"
#include "brex/io.hpp"
#include "brex/prox.hpp"
#include "brex/testoracle.hpp"
#include "cli.hpp"

namespace brex::cli {

namespace {

class CalibrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash), &used);
      if (used != slash) throw ParseError("bad number '" + s + "'");
      const std::string den_s = s.substr(slash + 1);
      const double den = std::stod(den_s, &used);
      if (used != den_s.size() || den == 0.0) throw ParseError("bad number '" + s + "'");
      return num / den;
    }
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_number(part));
  return out;
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

template <class F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const CalibrationFailure& e) {
    err << "calibration error: " << e.what() << '\n';
    return kCalibrationError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

SolverConfig solver_config(const std::string& step, double rho, int max_iter, double tol,
                           const std::string& x0, const Problem& p) {
  SolverConfig c;
  if (step == "fixed") {
    const double r = rho > 0.0 ? rho : 0.99 / lipschitz_L(p.fidelity, p.A, p.lambda2);
    c.step = FixedStep{r};
  } else if (step == "backtracking") {
    Backtracking b;
    b.rho0 = rho;
    c.step = b;
  } else {
    throw ParseError("step must be 'fixed' or 'backtracking'");
  }
  c.max_iter = max_iter;
  c.rel_tol = tol;
  if (!x0.empty()) {
    const auto v = parse_list(x0);
    if (static_cast<Eigen::Index>(v.size()) != p.cols()) throw ParseError("x0 has the wrong length");
    c.x0 = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
    for (double t : v) {
      if (!feasible(p.constraint, t)) throw DomainError("x0 lies outside the constraint set");
    }
  }
  return c;
}

Json solve_json(const Problem& p, const Relaxation& r, const SolveResult& res, bool brex_penalty, double cert_tol) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["penalty"] = brex_penalty ? "brex" : "l0";
  j["x"] = vector_to_json(res.x);
  j["J0"] = objective_J0(p, res.x);
  j["JPsi"] = objective_JPsi(p, r, res.x);
  j["iterations"] = res.iterations;
  j["stop_reason"] = to_string(res.stop_reason);
  j["step"] = res.last_step;
  j["cert"] = to_json(check_localmin_JPsi(p, r, res.x, cert_tol));
  if (brex_penalty) {
    const Vector xt = threshold_to_J0(r, res.x);
    j["x_thresholded"] = vector_to_json(xt);
    j["J0_thresholded"] = objective_J0(p, xt);
  }
  return j;
}

std::string csv_header(Eigen::Index n) {
  return n == 1 ? "x1,J0,JPsi" : "x1,x2,J0,JPsi";
}

int cmd_solve(const std::string& file, const std::string& penalty, const std::string& psi,
              const std::string& gamma, const std::string& step, double rho, int max_iter, double tol,
              const std::string& x0, double cert_tol, const std::string& trace, const std::string& out_path,
              std::ostream& out) {
  const Problem p = read_problem_file(file);
  const SolverConfig cfg = solver_config(step, rho, max_iter, tol, x0, p);
  Json calib;
  Relaxation r;
  if (penalty == "l0") {
    r = Relaxation::l0(p.lambda0, p.constraint, p.cols());
  } else if (penalty == "brex") {
    const Calibrated c = relaxation_for(p, parse_psi(psi, p), parse_gamma(gamma));
    r = c.relaxation;
    calib = to_json(c.report);
  } else {
    throw ParseError("penalty must be 'brex' or 'l0'");
  }
  const SolveResult res = solve(p, r, cfg);
  Json j = solve_json(p, r, res, penalty == "brex", cert_tol);
  if (!calib.is_null()) j["calibration"] = calib;
  if (!trace.empty()) {
    auto f = open_out(trace);
    write_trace_csv(f, res.trace);
  }
  emit(j, out_path, out);
  return kOk;
}

int cmd_calibrate(const std::string& file, const std::string& psi, const std::string& mode, double margin,
                  const std::string& out_path, std::ostream& out) {
  const Problem p = read_problem_file(file);
  CalibrationOptions opt;
  if (mode == "strict") {
    opt.mode = CalibrationMode::Strict;
    opt.margin = margin;
  } else if (mode != "thr") {
    throw ParseError("mode must be 'thr' or 'strict'");
  }
  const GeneratorFamily fam = parse_psi(psi, p);
  Calibrated c;
  try {
    c = calibrate(p, fam, opt);
  } catch (const std::exception& e) {
    throw CalibrationFailure(e.what());
  }
  emit(to_json(c.report), out_path, out);
  return kOk;
}

int cmd_landscape(const std::string& file, const std::string& psi, const std::string& gamma,
                  const std::string& range, int points, const std::string& out_path,
                  const std::string& minimizers_path, std::ostream& out) {
  const Problem p = read_problem_file(file);
  const Eigen::Index N = p.cols();
  if (N > 2) throw std::invalid_argument("landscape supports N <= 2 only");
  if (points < 3) throw ParseError("points must be >= 3");
  const Calibrated c = relaxation_for(p, parse_psi(psi, p), parse_gamma(gamma));
  const Enumeration e = enumerate_minimizers(p, static_cast<int>(N), &c.relaxation);

  double lo, hi;
  if (!range.empty()) {
    const auto v = split(range, ':');
    if (v.size() != 2) throw ParseError("range must be lo:hi");
    lo = parse_number(v[0]);
    hi = parse_number(v[1]);
    if (!(lo < hi)) throw ParseError("range needs lo < hi");
  } else {
    lo = 0.0;
    hi = 0.0;
    for (const auto& m : e.minimizers) {
      lo = std::min(lo, m.x.minCoeff());
      hi = std::max(hi, m.x.maxCoeff());
    }
    for (Eigen::Index n = 0; n < N; ++n) hi = std::max(hi, c.relaxation.alpha_plus(n));
    lo -= 0.5;
    hi += 0.5;
  }
  if (p.constraint == Constraint::NonnegReals) lo = std::max(lo, 0.0);

  std::ofstream file_out;
  std::ostream* os = &out;
  if (!out_path.empty() && out_path != "-") {
    file_out = open_out(out_path);
    os = &file_out;
  }
  os->precision(17);
  *os << csv_header(N) << '\n';
  auto at = [&](int i) { return lo + (hi - lo) * i / (points - 1); };
  Vector x(N);
  if (N == 1) {
    for (int i = 0; i < points; ++i) {
      x[0] = at(i);
      *os << x[0] << ',' << objective_J0(p, x) << ',' << objective_JPsi(p, c.relaxation, x) << '\n';
    }
  } else {
    for (int i = 0; i < points; ++i) {
      for (int k = 0; k < points; ++k) {
        x << at(i), at(k);
        *os << x[0] << ',' << x[1] << ',' << objective_J0(p, x) << ',' << objective_JPsi(p, c.relaxation, x)
            << '\n';
      }
    }
  }
  if (!minimizers_path.empty()) {
    Json j = to_json(e);
    j["calibration"] = to_json(c.report);
    emit(j, minimizers_path, out);
  }
  return kOk;
}

int cmd_enumerate(const std::string& file, int max_support, const std::string& psi, const std::string& gamma,
                  const std::string& out_path, std::ostream& out) {
  const Problem p = read_problem_file(file);
  Json j;
  if (psi.empty()) {
    j = to_json(enumerate_minimizers(p, max_support));
  } else {
    const Calibrated c = relaxation_for(p, parse_psi(psi, p), parse_gamma(gamma));
    j = to_json(enumerate_minimizers(p, max_support, &c.relaxation));
    j["calibration"] = to_json(c.report);
  }
  emit(j, out_path, out);
  return kOk;
}

Json benchmark_json(const BenchmarkReport& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["methods"] = rep.methods;
  j["instances"] = rep.runs.size();
  Json per = Json::array();
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    Json row = Json::array();
    for (std::size_t m = 0; m < rep.methods.size(); ++m) {
      const MethodRun& r = rep.runs[i][m];
      Json item = {{"method", rep.methods[m]},
                   {"J0", r.failed ? Json(nullptr) : Json(r.J0)},
                   {"rank", rep.ranks[i][m]},
                   {"seconds", r.seconds},
                   {"iterations", r.iterations},
                   {"stop_reason", r.stop_reason}};
      if (r.failed) item["error"] = r.error;
      row.push_back(item);
    }
    per.push_back(row);
  }
  j["per_instance"] = per;
  Json summary = Json::array();
  for (std::size_t m = 0; m < rep.methods.size(); ++m) {
    double mean = 0.0, sq = 0.0;
    int failures = 0;
    for (const auto& inst : rep.runs) {
      mean += inst[m].seconds;
      sq += inst[m].seconds * inst[m].seconds;
      failures += inst[m].failed ? 1 : 0;
    }
    const double n = static_cast<double>(rep.runs.size());
    mean /= n;
    const double sd = std::sqrt(std::max(0.0, sq / n - mean * mean));
    summary.push_back({{"method", rep.methods[m]},
                       {"rank_counts", rep.rank_counts[m]},
                       {"time_mean_s", mean},
                       {"time_std_s", sd},
                       {"failures", failures}});
  }
  j["summary"] = summary;
  return j;
}

int cmd_benchmark(DataGenConfig cfg, const std::string& kind, const std::string& methods, int instances,
                  const std::string& out_path, const std::string& csv_path, std::ostream& out) {
  try {
    cfg.kind = fidelity_kind_from_string(kind);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (instances < 1) throw ParseError("instances must be >= 1");
  const BenchmarkReport rep = run_benchmark(cfg, split(methods, ','), instances);
  if (!csv_path.empty()) {
    auto f = open_out(csv_path);
    f.precision(17);
    f << "instance,method,J0,rank,seconds,iterations,stop_reason\n";
    for (std::size_t i = 0; i < rep.runs.size(); ++i) {
      for (std::size_t m = 0; m < rep.methods.size(); ++m) {
        const MethodRun& r = rep.runs[i][m];
        f << i << ',' << rep.methods[m] << ',' << (r.failed ? std::string("nan") : std::to_string(r.J0)) << ','
          << rep.ranks[i][m] << ',' << r.seconds << ',' << r.iterations << ',' << r.stop_reason << '\n';
      }
    }
  }
  emit(benchmark_json(rep), out_path, out);
  return kOk;
}

int cmd_gen(DataGenConfig cfg, const std::string& kind, const std::string& out_path, const std::string& truth,
            std::ostream& out) {
  try {
    cfg.kind = fidelity_kind_from_string(kind);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const Instance inst = generate(cfg);
  emit(problem_to_json(inst.problem), out_path, out);
  if (!truth.empty()) emit(Json{{"x_true", vector_to_json(inst.x_true)}}, truth, out);
  return kOk;
}

int cmd_self_check(std::ostream& out) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  const std::vector<std::pair<GeneratorFamily, Constraint>> gens = {
      {PowerFamily{2.0}, Constraint::Reals},   {PowerFamily{1.5}, Constraint::Reals},
      {PowerFamily{4.0 / 3.0}, Constraint::Reals}, {ShannonFamily{}, Constraint::NonnegReals},
      {KLFamily{1.0, 0.1}, Constraint::NonnegReals}};
  bool all_ok = true;
  for (const auto& [fam, con] : gens) {
    const Generator g(fam, 1.5, 0.4, con);
    double worst_prox = 0.0, worst_beta = 0.0;
    for (int q = 0; q < 100; ++q) {
      const double x = U(rng);
      const double rho = 0.2 + 0.5 * (U(rng) + 3.0);
      const double u = prox_beta(g, rho, x);
      const double o = oracle_prox(g, rho, x, 4000);
      worst_prox = std::max(worst_prox, prox_objective(g, rho, x, u) - prox_objective(g, rho, x, o));
      if (feasible(con, x)) worst_beta = std::max(worst_beta, std::abs(g.beta(x) - oracle_beta(g, x)));
    }
    const bool ok = worst_prox <= 1e-8 && worst_beta <= 1e-6;
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << describe(fam) << " prox_gap=" << worst_prox << " beta_err=" << worst_beta
        << '\n';
  }
  return all_ok ? kOk : kFailure;
}

}  // namespace

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

GeneratorFamily parse_psi(const std::string& spec, const Problem& p) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "power") {
    if (arg.empty()) throw ParseError("power generator needs an exponent, e.g. power:2");
    const double pw = parse_number(arg);
    if (!(pw > 1.0)) throw ParseError("power exponent must be > 1");
    return PowerFamily{pw};
  }
  if (head == "shannon" && arg.empty()) return ShannonFamily{};
  if (head == "kl") {
    KLFamily f;
    f.y = arg.empty() ? 1.0 : parse_number(arg);
    f.b = p.fidelity.kind == FidelityKind::KL ? p.fidelity.b : 0.1;
    return f;
  }
  if (head == "matched" && arg.empty()) {
    MatchedFamily f;
    f.fidelity = p.fidelity.kind;
    return f;
  }
  throw ParseError("unknown generator '" + spec + "'");
}

GammaSpec parse_gamma(const std::string& spec) {
  GammaSpec g;
  if (spec == "thr") return g;
  if (spec.rfind("thrx", 0) == 0) {
    g.kind = GammaSpec::Kind::Scaled;
    g.factor = parse_number(spec.substr(4));
    if (!(g.factor > 0.0)) throw ParseError("gamma factor must be > 0");
    return g;
  }
  if (spec.rfind("list:", 0) == 0) {
    g.kind = GammaSpec::Kind::List;
    g.values = parse_list(spec.substr(5));
    if (g.values.empty()) throw ParseError("gamma list is empty");
    return g;
  }
  throw ParseError("gamma must be thr, thrx<factor> or list:<v1,...>");
}

Calibrated relaxation_for(const Problem& p, const GeneratorFamily& family, const GammaSpec& gamma) {
  try {
    switch (gamma.kind) {
      case GammaSpec::Kind::Threshold: return calibrate(p, family);
      case GammaSpec::Kind::Scaled:
        if (gamma.factor >= 1.0) return calibrate(p, family, {CalibrationMode::Strict, gamma.factor - 1.0});
        [[fallthrough]];
      case GammaSpec::Kind::List: {
        Vector g(p.cols());
        if (gamma.kind == GammaSpec::Kind::List) {
          if (static_cast<Eigen::Index>(gamma.values.size()) != p.cols()) {
            throw ParseError("gamma list needs one value per column");
          }
          g = Eigen::Map<const Vector>(gamma.values.data(), p.cols());
        } else {
          for (Eigen::Index n = 0; n < p.cols(); ++n) g[n] = gamma.factor * gamma_threshold(p, family, n);
        }
        return {build_relaxation(p, family, g), report_for(p, family, g)};
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw CalibrationFailure(e.what());
  }
  throw CalibrationFailure("unreachable gamma specification");
}

std::vector<int> rank_with_ties(const std::vector<double>& values, double rel_tol) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> rank(values.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    if (pos > 0) {
      const std::size_t prev = order[pos - 1];
      const double a = values[prev], b = values[i];
      const bool tie = a == b || (std::isfinite(a) && std::abs(b - a) <= rel_tol * std::max(1.0, std::abs(a)));
      if (tie) {
        rank[i] = rank[prev];
        continue;
      }
    }
    rank[i] = static_cast<int>(pos) + 1;
  }
  return rank;
}

MethodRun run_method(const Problem& p, const std::string& method, const SolverConfig& config) {
  MethodRun run;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Relaxation r;
    if (method == "l0") {
      r = Relaxation::l0(p.lambda0, p.constraint, p.cols());
    } else {
      r = relaxation_for(p, parse_psi(method, p), GammaSpec{}).relaxation;
    }
    const SolveResult res = solve(p, r, config);
    run.J0 = objective_J0(p, threshold_to_J0(r, res.x));
    run.iterations = res.iterations;
    run.stop_reason = to_string(res.stop_reason);
  } catch (const std::exception& e) {
    run.failed = true;
    run.error = e.what();
    run.J0 = std::numeric_limits<double>::infinity();
    run.stop_reason = "error";
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

BenchmarkReport run_benchmark(const DataGenConfig& config, const std::vector<std::string>& methods, int instances,
                              int threads) {
  if (methods.empty()) throw ParseError("no methods given");
  if (threads <= 0) {
    const char* env = std::getenv("BREX_THREADS");
    threads = env ? std::atoi(env) : 0;
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, instances);
  BenchmarkReport rep;
  rep.methods = methods;
  rep.runs.assign(static_cast<std::size_t>(instances), {});
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < instances; i = next++) {
      DataGenConfig c = config;
      c.seed = config.seed + static_cast<std::uint64_t>(i);
      std::vector<MethodRun> row;
      try {
        const Instance inst = generate(c);
        for (const auto& m : methods) row.push_back(run_method(inst.problem, m, SolverConfig{}));
      } catch (const std::exception& e) {
        row.assign(methods.size(), MethodRun{std::numeric_limits<double>::infinity(), 0.0, 0, "error", true,
                                             e.what()});
      }
      rep.runs[static_cast<std::size_t>(i)] = std::move(row);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  rep.rank_counts.assign(methods.size(), std::vector<int>(methods.size(), 0));
  for (const auto& row : rep.runs) {
    std::vector<double> vals;
    for (const auto& r : row) vals.push_back(r.J0);
    const auto rk = rank_with_ties(vals);
    rep.ranks.push_back(rk);
    for (std::size_t m = 0; m < methods.size(); ++m) ++rep.rank_counts[m][static_cast<std::size_t>(rk[m] - 1)];
  }
  return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"l0 Bregman relaxation: solve, calibrate, certify"};
  app.require_subcommand(1);

  std::string file, penalty = "brex", psi = "power:2", gamma = "thr", step = "backtracking", x0, trace, out_path;
  double rho = 0.0, tol = 1e-6, cert_tol = 1e-5;
  int max_iter = 5000;
  auto* solve_cmd = app.add_subcommand("solve", "run proximal gradient on J_Psi or J_0");
  solve_cmd->add_option("problem", file, "problem JSON")->required();
  solve_cmd->add_option("--penalty", penalty, "brex | l0")->capture_default_str();
  solve_cmd->add_option("--psi", psi, "power:<p> | shannon | kl[:y] | matched")->capture_default_str();
  solve_cmd->add_option("--gamma", gamma, "thr | thrx<f> | list:<v1,...>")->capture_default_str();
  solve_cmd->add_option("--step", step, "backtracking | fixed")->capture_default_str();
  solve_cmd->add_option("--rho", rho, "fixed step, or initial backtracking step (0 = automatic)");
  solve_cmd->add_option("--max-iter", max_iter)->capture_default_str();
  solve_cmd->add_option("--tol", tol, "relative iterate tolerance")->capture_default_str();
  solve_cmd->add_option("--x0", x0, "initial point v1,v2,...");
  solve_cmd->add_option("--cert-tol", cert_tol, "residual tolerance of the certificate")->capture_default_str();
  solve_cmd->add_option("--trace", trace, "CSV trace path");
  solve_cmd->add_option("-o,--out", out_path, "result JSON path (default stdout)");

  std::string mode = "thr";
  double margin = 0.0;
  auto* cal_cmd = app.add_subcommand("calibrate", "exactness thresholds for a generator family");
  cal_cmd->add_option("problem", file)->required();
  cal_cmd->add_option("--psi", psi)->capture_default_str();
  cal_cmd->add_option("--mode", mode, "thr | strict")->capture_default_str();
  cal_cmd->add_option("--margin", margin, "strict mode: gamma = (1 + margin) gamma_thr");
  cal_cmd->add_option("-o,--out", out_path);

  std::string range, minimizers;
  int points = 201;
  auto* land_cmd = app.add_subcommand("landscape", "grid of J_0 and J_Psi for N <= 2");
  land_cmd->add_option("problem", file)->required();
  land_cmd->add_option("--psi", psi)->capture_default_str();
  land_cmd->add_option("--gamma", gamma)->capture_default_str();
  land_cmd->add_option("--range", range, "lo:hi per axis (default from the minimizers)");
  land_cmd->add_option("--points", points, "grid points per axis")->capture_default_str();
  land_cmd->add_option("-o,--out", out_path, "CSV path (default stdout)");
  land_cmd->add_option("--minimizers", minimizers, "JSON path for the enumerated minimizers");

  int max_support = -1;
  std::string enum_psi, enum_gamma = "thr";
  auto* enum_cmd = app.add_subcommand("enumerate", "all local minimizers of J_0 for small N");
  enum_cmd->add_option("problem", file)->required();
  enum_cmd->add_option("--max-support", max_support, "largest support size (default N)");
  enum_cmd->add_option("--psi", enum_psi, "also report preservation under this relaxation");
  enum_cmd->add_option("--gamma", enum_gamma)->capture_default_str();
  enum_cmd->add_option("-o,--out", out_path);

  DataGenConfig gen;
  std::string kind = "LS", methods = "l0,power:2,power:1.5,power:4/3", csv, truth;
  int instances = 20;
  auto add_gen_options = [&](CLI::App* c) {
    c->add_option("--kind", kind, "LS | LR | KL")->capture_default_str();
    c->add_option("--M", gen.M)->capture_default_str();
    c->add_option("--N", gen.N)->capture_default_str();
    c->add_option("--k", gen.k, "sparsity")->capture_default_str();
    c->add_option("--eta", gen.eta, "column correlation")->capture_default_str();
    c->add_option("--tau", gen.tau, "LS SNR in dB")->capture_default_str();
    c->add_option("--s", gen.s, "LR signal scale")->capture_default_str();
    c->add_option("--alpha", gen.alpha, "KL gain")->capture_default_str();
    c->add_option("--b", gen.b, "KL background")->capture_default_str();
    c->add_option("--seed", gen.seed)->capture_default_str();
    c->add_option("--lambda0", gen.lambda0, "absolute lambda0");
    c->add_option("--lambda0-scale", gen.lambda0_scale, "lambda0 = scale * F_y(0)");
    c->add_option("--lambda2", gen.lambda2);
  };
  auto* bench_cmd = app.add_subcommand("benchmark", "rank methods by final J_0 on generated instances");
  add_gen_options(bench_cmd);
  bench_cmd->add_option("--methods", methods, "comma separated: l0 and generator specs")->capture_default_str();
  bench_cmd->add_option("--instances", instances)->capture_default_str();
  bench_cmd->add_option("-o,--out", out_path, "report JSON path (default stdout)");
  bench_cmd->add_option("--csv", csv, "per-instance CSV path");

  auto* gen_cmd = app.add_subcommand("gen", "write a generated instance as a problem file");
  add_gen_options(gen_cmd);
  gen_cmd->add_option("-o,--out", out_path);
  gen_cmd->add_option("--truth", truth, "JSON path for the ground truth x");

  auto* check_cmd = app.add_subcommand("self-check", "compare prox and beta against brute-force oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  }

  return guarded(
      [&]() -> int {
        if (solve_cmd->parsed()) {
          return cmd_solve(file, penalty, psi, gamma, step, rho, max_iter, tol, x0, cert_tol, trace, out_path, out);
        }
        if (cal_cmd->parsed()) return cmd_calibrate(file, psi, mode, margin, out_path, out);
        if (land_cmd->parsed()) return cmd_landscape(file, psi, gamma, range, points, out_path, minimizers, out);
        if (enum_cmd->parsed()) return cmd_enumerate(file, max_support, enum_psi, enum_gamma, out_path, out);
        if (bench_cmd->parsed()) return cmd_benchmark(gen, kind, methods, instances, out_path, csv, out);
        if (gen_cmd->parsed()) return cmd_gen(gen, kind, out_path, truth, out);
        if (check_cmd->parsed()) return cmd_self_check(out);
        return kParseError;
      },
      err);
}

}  // namespace brex::cli
