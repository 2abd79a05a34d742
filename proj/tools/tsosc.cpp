#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>

#include "tsosc/classify.hpp"
#include "tsosc/config.hpp"
#include "tsosc/error.hpp"
#include "tsosc/monomials.hpp"
#include "tsosc/report.hpp"
#include "tsosc/simulate.hpp"

using namespace tsosc;

namespace {

struct Shared {
  unsigned seed = 42;
  std::string json_out;
};

void emit(const Json& doc, const Shared& shared) {
  std::cout << doc.dump(2) << '\n';
  if (!shared.json_out.empty()) write_json(shared.json_out, doc);
}

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

// A random explicit scale: cumulative gaps drawn from [0.1, 2).
TimeScale random_scale(std::mt19937_64& rng, std::size_t points) {
  std::uniform_real_distribution<double> gap(0.1, 2.0);
  std::vector<double> pts{0.0};
  while (pts.size() < points) pts.push_back(pts.back() + gap(rng));
  return TimeScale::explicit_points(std::move(pts));
}

// The function to classify: samples from a CSV (columns t, value) or an
// expression over `points` scale points from t0.
struct FunctionInput {
  std::string scale = "uniform:h=1,t0=0";
  std::string expr;
  std::string csv;
  std::size_t points = 100;

  GridFn load() const {
    if (!csv.empty()) {
      const auto table = read_csv(csv);
      const auto ti = table.column("t");
      const auto vi = table.column("value");
      std::vector<double> pts, vals;
      for (const auto& row : table.rows) {
        pts.push_back(row[ti]);
        vals.push_back(row[vi]);
      }
      const auto last = static_cast<std::int64_t>(pts.size()) - 1;
      return GridFn(GridWindow(TimeScale::explicit_points(pts), 0, last), vals);
    }
    if (expr.empty()) fail(Errc::InvalidArgument, "cli::run", "give --f EXPR or --csv FILE");
    const auto [ts, t0] = parse_scale_arg(scale);
    const auto f = Expr::parse(expr);
    return GridFn::sample(GridWindow::from_point(ts, t0, points), [&](double t) { return f(t); });
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--scale", scale, "uniform:h=..,t0=.. | geometric:q=..,t0=.. | explicit:points=a;b;..");
    cmd->add_option("--f", expr, "function of t");
    cmd->add_option("--csv", csv, "CSV with columns t,value");
    cmd->add_option("--points", points, "sample count")->check(CLI::PositiveNumber);
  }
};

RunConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

InitialData initial_data(const RunConfig& cfg) {
  auto init = constant_history(cfg.spec, cfg.history.front());
  if (cfg.history.size() > 1) init.phi = GridFn(init.phi.window(), cfg.history);
  return init;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillation criteria and simulation for neutral delay dynamic equations on time scales"};
  app.require_subcommand(1);
  Shared shared;
  app.add_option("--seed", shared.seed, "seed for randomized inputs")->capture_default_str();
  app.add_option("--json", shared.json_out, "also write the JSON report here");
  app.fallthrough();

  // poly
  auto* poly = app.add_subcommand("poly", "evaluate h_k(t, s) or g_k(t, s)");
  std::string poly_scale = "uniform:h=1,t0=0";
  int poly_k = 0;
  double poly_t = 0.0;
  double poly_s = 0.0;
  std::string family = "h";
  poly->add_option("--scale", poly_scale, "time scale")->capture_default_str();
  poly->add_option("--k", poly_k, "order")->required();
  poly->add_option("--t", poly_t, "first argument")->required();
  poly->add_option("--s", poly_s, "second argument")->required();
  poly->add_option("--family", family, "h or g")->check(CLI::IsMember({"h", "g"}))->capture_default_str();

  // lemmas
  auto* lemmas = app.add_subcommand("lemmas", "check the h_k inequality lemmas on a window");
  std::string lemma_scale = "uniform:h=1,t0=0";
  std::size_t lemma_points = 30;
  int kmax = 4;
  int lmax = 4;
  std::optional<double> lemma_s;
  bool lemma_random = false;
  lemmas->add_option("--scale", lemma_scale, "time scale")->capture_default_str();
  lemmas->add_flag("--random-scale", lemma_random, "use a random explicit scale drawn from --seed");
  lemmas->add_option("--points", lemma_points, "window size")->check(CLI::Range(2, 100000))->capture_default_str();
  lemmas->add_option("--kmax", kmax, "largest k")->check(CLI::Range(0, 12))->capture_default_str();
  lemmas->add_option("--lmax", lmax, "largest l")->check(CLI::Range(0, 12))->capture_default_str();
  lemmas->add_option("--s", lemma_s, "base point (default: window start)");

  // classify / philos
  auto* classify = app.add_subcommand("classify", "Kiguradze sign pattern of sampled f");
  FunctionInput cls_in;
  int cls_n = 2;
  double strict_tol = 1e-12;
  cls_in.attach(classify);
  classify->add_option("--n", cls_n, "order")->required()->check(CLI::PositiveNumber);
  classify->add_option("--strict-tol", strict_tol, "relative sign tolerance")->capture_default_str();

  auto* philos = app.add_subcommand("philos", "dynamic Philos inequality slack");
  FunctionInput ph_in;
  int ph_n = 2;
  std::optional<double> ph_lambda;
  std::optional<double> ph_t0;
  ph_in.attach(philos);
  philos->add_option("--n", ph_n, "order")->required()->check(CLI::Range(2, 50));
  philos->add_option("--lambda", ph_lambda, "lambda in (0,1) for the lambda corollary");
  philos->add_option("--t0", ph_t0, "t0 for the lambda corollary (default: window start)");

  // criterion
  auto* criterion = app.add_subcommand("criterion", "evaluate the oscillation criteria of an equation config");
  std::string crit_config;
  std::string crit_csv;
  criterion->add_option("--config", crit_config, "equation config (JSON)")->required()->check(CLI::ExistingFile);
  criterion->add_option("--csv", crit_csv, "trace CSV prefix; writes PREFIX_{liminf,limsup,exponential}.csv");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "step the initial-value problem of an equation config");
  std::string sim_config;
  std::string sim_csv;
  std::optional<std::size_t> sim_horizon;
  bool sim_fine = false;
  simulate->add_option("--config", sim_config, "equation config (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--horizon", sim_horizon, "points from t0 (default: config horizon)");
  simulate->add_option("--csv", sim_csv, "trace CSV (index,t,x,z)");
  simulate->add_flag("--fine", sim_fine, "allow stepping a grid that approximates the real line");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "run a worked example end to end");
  std::string example;
  std::map<std::string, double> overrides;
  ReproduceOptions rep;
  std::string rep_csv;
  reproduce->add_option("--example", example, "q-difference | difference | continuous")
      ->required()
      ->check(CLI::IsMember(example_ids()));
  for (const char* key : {"q", "n", "b0", "beta0", "a0", "alpha0", "p"}) {
    reproduce->add_option_function<double>(std::string("--") + key, [&overrides, key](double v) { overrides[key] = v; },
                                           std::string("example parameter ") + key);
  }
  // "--h" would shadow the help flag
  reproduce->add_option_function<double>("--step", [&overrides](double v) { overrides["h"] = v; },
                                         "grid step h of the continuous example");
  reproduce->add_option("--horizon", rep.horizon, "simulation points (default per example)");
  reproduce->add_option("--window", rep.criterion_points, "criterion window points (default per example)");
  reproduce->add_option("--gamma", rep.gamma, "gamma in (0,1)")->capture_default_str();
  reproduce->add_flag("--fine", rep.simulate_continuous, "run criteria and a fine-grid simulation for the continuous example");
  reproduce->add_option("--csv", rep_csv, "simulation trace CSV (index,t,x,z)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*poly) {
      const auto [ts, t0] = parse_scale_arg(poly_scale);
      (void)t0;
      const double v = family == "h" ? h_poly(ts, poly_k, poly_t, poly_s) : g_poly(ts, poly_k, poly_t, poly_s);
      std::cout << number_text(v) << '\n';
      if (!shared.json_out.empty())
        write_json(shared.json_out, {{"family", family}, {"k", poly_k}, {"t", poly_t}, {"s", poly_s}, {"value", v}});
    } else if (*lemmas) {
      std::mt19937_64 rng(shared.seed);
      TimeScale ts = TimeScale::uniform(1.0);
      double t0 = 0.0;
      if (lemma_random)
        ts = random_scale(rng, lemma_points);
      else
        std::tie(ts, t0) = parse_scale_arg(lemma_scale);
      const auto w = GridWindow::from_point(ts, t0, lemma_points);
      const auto report = check_lemma_inequalities(w, kmax, lmax, lemma_s.value_or(w.front()));
      auto doc = to_json(report);
      doc["scale"] = ts.describe();
      doc["seed"] = shared.seed;
      emit(doc, shared);
    } else if (*classify) {
      const auto f = cls_in.load();
      emit({{"profile", to_json(kiguradze_profile(f, cls_n, strict_tol))}}, shared);
    } else if (*philos) {
      const auto f = ph_in.load();
      const auto profile = kiguradze_profile(f, ph_n);
      Json doc = {{"profile", to_json(profile)}, {"philos", to_json(verify_philos(f, ph_n, profile))}};
      if (ph_lambda) {
        const auto r = verify_philos_lambda(f, ph_n, *ph_lambda, ph_t0.value_or(f.point(0)), profile);
        doc["lambda"] = {{"lambda", *ph_lambda}, {"r_index", r.r_index}, {"r", r.r}, {"slack", to_json(r.slack)}};
      }
      emit(doc, shared);
    } else if (*criterion) {
      const auto cfg = load_config(crit_config);
      const auto eq = sample_equation(cfg.spec, cfg.window);
      const bool neutral = cfg.spec.range == RangeTag::R1;
      const auto win_n = criterion_windows(cfg.spec, eq, cfg.gamma, true, cfg.margin);
      const auto exp_n = criterion_exponential(cfg.spec, eq, cfg.lambda, true, cfg.margin);
      const auto win_p = criterion_windows(cfg.spec, eq, cfg.gamma, false, cfg.margin);
      const auto exp_p = criterion_exponential(cfg.spec, eq, cfg.lambda, false, cfg.margin);
      const CriterionEvidence evidence{criterion_holds(exp_n, win_n), criterion_holds(exp_p, win_p)};
      const auto div = divergence_check(cfg.spec, eq);
      const auto conclusion = conclude(cfg.spec, evidence, div.verdict);
      const auto& win = neutral ? win_n : win_p;
      const auto& ex = neutral ? exp_n : exp_p;
      if (!crit_csv.empty()) {
        write_csv(crit_csv + "_liminf.csv", criterion_table(win.liminf));
        write_csv(crit_csv + "_limsup.csv", criterion_table(win.limsup));
        write_csv(crit_csv + "_exponential.csv", criterion_table(ex));
      }
      emit({{"equation", to_json(cfg.spec)},
            {"window", cfg.window},
            {"snapped_delays", eq.snapped},
            {"neutral_variant", neutral},
            {"windows", to_json(win)},
            {"exponential", to_json(ex)},
            {"evidence", {{"neutral_satisfied", evidence.neutral_satisfied},
                          {"nonneutral_satisfied", evidence.nonneutral_satisfied}}},
            {"divergence", to_json(div)},
            {"conclusion", to_json(conclusion)},
            {"verdict", std::string(to_string(conclusion.conclusion))}},
           shared);
    } else if (*simulate) {
      const auto cfg = load_config(sim_config);
      const std::size_t horizon = sim_horizon.value_or(cfg.horizon);
      const auto tr = step_ivp(cfg.spec, initial_data(cfg), horizon, {sim_fine});
      if (!sim_csv.empty()) write_csv(sim_csv, solution_table(tr));
      SimulationSummary s;
      s.horizon = horizon;
      s.t_end = tr.z.window().back();
      s.sign_changes = tr.sign_changes.size();
      if (!tr.sign_changes.empty()) s.last_change_index = tr.sign_changes.back();
      s.trend = tr.trend;
      s.snapped = tr.snapped;
      emit({{"equation", to_json(cfg.spec)}, {"simulation", to_json(s)}}, shared);
    } else if (*reproduce) {
      const auto r = reproduce_example(example, overrides, rep);
      if (!rep_csv.empty() && r.trace) write_csv(rep_csv, solution_table(*r.trace));
      emit(to_json(r), shared);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
