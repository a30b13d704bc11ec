#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "igsub/analytics.hpp"
#include "igsub/error.hpp"
#include "igsub/jumpdist.hpp"
#include "igsub/ruin.hpp"
#include "igsub/samplers.hpp"
#include "igsub/version.hpp"

namespace igsub::cli {
namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Invalid flag combination; reported with exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// ---- RunConfig <-> JSON ----------------------------------------------------

template <class T>
void put(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const ordered_json& j, const char* key, T& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

template <class T>
void get(const ordered_json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["kind"] = c.kind;
  j["alpha"] = c.alpha;
  put(j, "eps", c.eps);
  put(j, "theta", c.theta);
  put(j, "lambda", c.lambda);
  j["horizon"] = c.horizon;
  j["t"] = c.t;
  j["steps"] = c.steps;
  j["paths"] = c.paths;
  j["seed"] = c.seed;
  j["method"] = c.method;
  j["burn_in"] = c.burn_in;
  j["thinning"] = c.thinning;
  j["k"] = c.k;
  put(j, "q", c.q);
  j["mode"] = c.mode;
  put(j, "z", c.z);
  put(j, "z_min", c.z_min);
  put(j, "z_max", c.z_max);
  j["points"] = c.points;
  j["u"] = c.u;
  j["y"] = c.y;
  j["claims"] = c.claims;
  j["c"] = c.c;
  j["ruin_horizon"] = c.ruin_horizon;
  j["rate_convention"] = c.rate_convention;
  j["residual"] = c.residual;
  j["format"] = c.format;
  return j;
}

}  // namespace

std::string to_json_text(const RunConfig& cfg) {
  return config_json(cfg).dump();
}

RunConfig from_json_text(const std::string& text) {
  const auto j = ordered_json::parse(text);
  RunConfig c;
  get(j, "command", c.command);
  get(j, "kind", c.kind);
  get(j, "alpha", c.alpha);
  get(j, "eps", c.eps);
  get(j, "theta", c.theta);
  get(j, "lambda", c.lambda);
  get(j, "horizon", c.horizon);
  get(j, "t", c.t);
  get(j, "steps", c.steps);
  get(j, "paths", c.paths);
  get(j, "seed", c.seed);
  get(j, "method", c.method);
  get(j, "burn_in", c.burn_in);
  get(j, "thinning", c.thinning);
  get(j, "k", c.k);
  get(j, "q", c.q);
  get(j, "mode", c.mode);
  get(j, "z", c.z);
  get(j, "z_min", c.z_min);
  get(j, "z_max", c.z_max);
  get(j, "points", c.points);
  get(j, "u", c.u);
  get(j, "y", c.y);
  get(j, "claims", c.claims);
  get(j, "c", c.c);
  get(j, "ruin_horizon", c.ruin_horizon);
  get(j, "rate_convention", c.rate_convention);
  get(j, "residual", c.residual);
  get(j, "format", c.format);
  return c;
}

namespace {

// ---- model construction ----------------------------------------------------

bool is_process(const std::string& kind) {
  return kind == "ping" || kind == "ping-eps" || kind == "pting";
}

std::string base_kind(const std::string& kind) {
  return is_process(kind) ? kind.substr(1) : kind;
}

SubordinatorSpec make_spec(const RunConfig& c) {
  const std::string k = base_kind(c.kind);
  if (k != "ing" && k != "ing-eps" && k != "ting")
    throw UsageError("--kind must be one of ing, ing-eps, ting, ping, "
                     "ping-eps, pting (got '" + c.kind + "')");
  if (c.eps && k != "ing-eps")
    throw UsageError("--eps is only valid with --kind ing-eps or ping-eps");
  if (c.theta && k != "ting")
    throw UsageError("--theta is only valid with --kind ting or pting");
  if (k == "ing-eps" && !c.eps)
    throw UsageError("--eps is required for --kind " + c.kind);
  if (k == "ting" && !c.theta)
    throw UsageError("--theta is required for --kind " + c.kind);
  if (k == "ing") return SubordinatorSpec::ing(c.alpha);
  if (k == "ing-eps") return SubordinatorSpec::ing_eps(c.alpha, *c.eps);
  return SubordinatorSpec::ting(c.alpha, *c.theta);
}

void check_lambda(const RunConfig& c) {
  if (is_process(c.kind) && !c.lambda)
    throw UsageError("--lambda is required for --kind " + c.kind);
  if (!is_process(c.kind) && c.lambda)
    throw UsageError("--lambda is only valid with --kind ping, ping-eps or "
                     "pting");
}

ProcessSpec make_process(const RunConfig& c) {
  if (!is_process(c.kind))
    throw UsageError("--kind must be ping, ping-eps or pting for '" +
                     c.command + "'");
  check_lambda(c);
  return ProcessSpec(make_spec(c), *c.lambda);
}

PathMethod make_method(const RunConfig& c) {
  if (c.method == "inverse") return PathMethod::Inverse;
  if (c.method == "metropolis") return PathMethod::Metropolis;
  if (c.method == "auto") return PathMethod::Automatic;
  throw UsageError("--method must be inverse, metropolis or auto");
}

MetropolisConfig make_metropolis(const RunConfig& c) {
  if (c.thinning < 1) throw UsageError("--thinning must be >= 1");
  return MetropolisConfig{c.burn_in, c.thinning};
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int k = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {k, k};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (lo < 0 || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("-k expects 'K' or 'LO..HI' with 0 <= LO <= HI (got '" +
                     text + "')");
  }
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (in >> token) {
    std::stringstream parts(token);
    std::string piece;
    while (std::getline(parts, piece, ',')) {
      if (piece.empty()) continue;
      double v = 0.0;
      const auto r = std::from_chars(piece.data(), piece.data() + piece.size(), v);
      if (r.ec != std::errc() || r.ptr != piece.data() + piece.size())
        throw UsageError("--claims: cannot parse number '" + piece + "'");
      out.push_back(v);
    }
  }
  return out;
}

ClaimDistribution make_claims(const RunConfig& c) {
  const auto colon = c.claims.find(':');
  const std::string tag = c.claims.substr(0, colon);
  const std::string body =
      colon == std::string::npos ? std::string() : c.claims.substr(colon + 1);
  if (tag == "exp") {
    const auto v = parse_numbers(body);
    if (v.size() != 1) throw UsageError("--claims exp:MEAN expects one number");
    return ClaimDistribution::exponential(v[0]);
  }
  if (tag == "list") return ClaimDistribution::empirical(parse_numbers(body));
  if (tag == "file") {
    std::ifstream in(body);
    if (!in) throw UsageError("--claims: cannot read file '" + body + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ClaimDistribution::empirical(parse_numbers(ss.str()));
  }
  throw UsageError("--claims must be exp:MEAN, list:X1,X2,... or file:PATH");
}

// ---- output ----------------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::optional<double> driving_rate;
  std::vector<std::string> notes;  // extra '#' lines in CSV
  Table table;
  ordered_json payload = ordered_json::object();
};

void write_csv(std::ostream& os, const RunConfig& c, const Report& r) {
  os << "# igsub " << kVersion << '\n';
  os << "# command: " << c.command << '\n';
  os << "# config: " << to_json_text(c) << '\n';
  if (r.driving_rate) os << "# driving_rate: " << num(*r.driving_rate) << '\n';
  for (const auto& n : r.notes) os << "# " << n << '\n';
  for (std::size_t i = 0; i < r.table.columns.size(); ++i)
    os << (i ? "," : "") << r.table.columns[i];
  os << '\n';
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void write_json(std::ostream& os, const RunConfig& c, const Report& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["igsub_version"] = kVersion;
  j["command"] = c.command;
  j["config"] = config_json(c);
  if (r.driving_rate) j["driving_rate"] = *r.driving_rate;
  j.update(r.payload);
  os << j.dump(2) << '\n';
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("IGSUB_OUTPUT_DIR"); dir && *dir)
      p = std::filesystem::path(dir) / p;
  }
  return p;
}

// ---- commands --------------------------------------------------------------

Report cmd_simulate(RunConfig& c) {
  if (c.paths == 0) c.paths = 10;
  const auto spec = make_spec(c);
  check_lambda(c);
  const auto method = make_method(c);
  const auto mh = make_metropolis(c);
  if (method == PathMethod::Inverse && spec.kind() == SubordinatorKind::TInG)
    throw UsageError("--method inverse is not available for --kind " + c.kind +
                     " (no closed-form cdf); use metropolis or auto");
  if (!(c.horizon >= 0.0)) throw UsageError("-T must be >= 0");

  Report r;
  r.driving_rate = spec.driving_rate();
  r.table.columns = {"path_id", "time", "value"};
  auto& paths = r.payload["paths"] = ordered_json::array();
  const bool process = is_process(c.kind);
  std::vector<double> grid;
  if (process) {
    if (c.steps < 1) throw UsageError("--steps must be >= 1");
    grid = uniform_grid(c.horizon, c.steps);
  }
  for (std::size_t i = 0; i < c.paths; ++i) {
    RandomSource rng(c.seed, i);
    std::vector<double> times;
    std::vector<double> values;
    if (process) {
      times = grid;
      values = subordinated_poisson_path(rng, spec, *c.lambda, grid, method, mh);
    } else {
      const auto path = subordinator_path(rng, spec, c.horizon, method, mh);
      times.push_back(0.0);
      values.push_back(0.0);
      times.insert(times.end(), path.jump_times.begin(), path.jump_times.end());
      values.insert(values.end(), path.cumulative_values.begin(),
                    path.cumulative_values.end());
      times.push_back(c.horizon);
      values.push_back(path.final_value());
    }
    for (std::size_t j = 0; j < times.size(); ++j)
      r.table.rows.push_back({std::to_string(i), num(times[j]), num(values[j])});
    paths.push_back({{"path_id", i}, {"time", times}, {"value", values}});
  }
  return r;
}

Report cmd_pdf_table(RunConfig& c, std::ostream& err) {
  if (is_process(c.kind))
    throw UsageError("pdf-table needs a subordinator --kind (ing, ing-eps, ting)");
  check_lambda(c);
  const auto spec = make_spec(c);
  const double s0 = spec.support_start();
  if (c.points < 1) throw UsageError("--points must be >= 1");
  const auto n = static_cast<double>(c.points);
  Report r;
  r.driving_rate = spec.driving_rate();
  auto& rows = r.payload["rows"] = ordered_json::array();

  if (c.mode == "pdf") {
    if (c.z) throw UsageError("--z is only valid with --mode likelihood");
    r.table.columns = {"z", "pdf"};
    std::vector<double> zs;
    if (c.z_min || c.z_max) {
      const double lo = c.z_min.value_or(s0);
      const double hi = c.z_max.value_or(lo + 10.0);
      if (!(hi >= lo)) throw UsageError("--z-max must be >= --z-min");
      for (std::size_t i = 0; i < c.points; ++i)
        zs.push_back(c.points == 1 ? lo : lo + (hi - lo) * i / (n - 1.0));
    } else {
      // The pole at s₀ is left out.
      for (std::size_t i = 1; i <= c.points; ++i) zs.push_back(s0 + 10.0 * i / n);
    }
    std::size_t dropped = 0;
    for (double z : zs) {
      if (!(z > s0)) {
        ++dropped;
        continue;
      }
      const double f = jump_pdf(spec, z);
      r.table.rows.push_back({num(z), num(f)});
      rows.push_back({{"z", z}, {"pdf", f}});
    }
    if (dropped > 0) {
      const std::string w = "warning: " + std::to_string(dropped) +
                            " grid points at or below the support start " +
                            num(s0) + " were dropped";
      err << w << '\n';
      r.notes.push_back(w);
      r.payload["warning"] = w;
    }
    return r;
  }
  if (c.mode == "likelihood") {
    if (!c.z) throw UsageError("--z is required with --mode likelihood");
    if (c.z_min || c.z_max)
      throw UsageError("--z-min/--z-max are only valid with --mode pdf");
    r.table.columns = {"alpha", "likelihood"};
    if (!(*c.z > s0)) {
      const std::string w = "warning: --z " + num(*c.z) +
                            " is not inside the support (" + num(s0) +
                            ", inf); the table is empty";
      err << w << '\n';
      r.notes.push_back(w);
      r.payload["warning"] = w;
      return r;
    }
    for (std::size_t i = 0; i < c.points; ++i) {
      const double a = c.points == 1 ? 0.5 : 0.01 + 0.98 * i / (n - 1.0);
      RunConfig at = c;
      at.alpha = a;
      const double l = jump_pdf(make_spec(at), *c.z);
      r.table.rows.push_back({num(a), num(l)});
      rows.push_back({{"alpha", a}, {"likelihood", l}});
    }
    return r;
  }
  throw UsageError("--mode must be pdf or likelihood");
}

Report cmd_pmf(RunConfig& c) {
  const auto p = make_process(c);
  const auto [lo, hi] = parse_k_range(c.k);
  const auto values = pmf_range(p, hi, c.t);
  Report r;
  r.driving_rate = p.subordinator.driving_rate();
  r.table.columns = {"k", "probability"};
  auto& rows = r.payload["rows"] = ordered_json::array();
  double partial = 0.0;
  for (int k = 0; k <= hi; ++k) partial += values[static_cast<std::size_t>(k)];
  for (int k = lo; k <= hi; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    r.table.rows.push_back({std::to_string(k), num(v)});
    rows.push_back({{"k", k}, {"probability", v}});
  }
  const std::string method =
      "k-th derivative of the pgf exp(-t phi(lambda(1-u))) at u=0, via the "
      "recurrence k b_k = sum_j j a_j b_{k-j}";
  r.notes.push_back("method: " + method);
  r.payload["method"] = method;
  r.payload["partial_sum_0_to_k_max"] = partial;
  return r;
}

Report cmd_moments(RunConfig& c) {
  Report r;
  r.table.columns = {"quantity", "value"};
  Moments m{};
  std::optional<double> frac;
  ordered_json formulas;
  if (is_process(c.kind)) {
    const auto p = make_process(c);
    r.driving_rate = p.subordinator.driving_rate();
    m = moments(p, c.t);
    formulas["mean"] = "lambda * E S(t)";
    formulas["variance"] = "lambda^2 Var S(t) + lambda E S(t)";
    if (c.q) frac = fractional_moment(LaplaceTransform::of(p, c.t), *c.q);
  } else {
    check_lambda(c);
    const auto spec = make_spec(c);
    r.driving_rate = spec.driving_rate();
    m = moments(spec, c.t);
    if (c.q) frac = fractional_moment(LaplaceTransform::of(spec, c.t), *c.q);
  }
  formulas["E S(t)"] = "t alpha theta^(alpha-1) e^(-theta)";
  formulas["Var S(t)"] =
      "t alpha theta^(alpha-1) e^(-theta) + t (1-alpha) alpha theta^(alpha-2) "
      "e^(-theta)";
  r.table.rows.push_back({"mean", num(m.mean)});
  r.table.rows.push_back({"variance", num(m.variance)});
  r.payload["mean"] = m.mean;
  r.payload["variance"] = m.variance;
  if (frac) {
    r.table.rows.push_back({"fractional_moment", num(*frac)});
    r.payload["fractional_moment"] = {{"q", *c.q}, {"value", *frac}};
  }
  r.payload["formulas"] = formulas;
  return r;
}

Report cmd_ruin(RunConfig& c) {
  if (c.paths == 0) c.paths = 10000;
  if (c.kind != "pting") throw UsageError("ruin requires --kind pting");
  const auto p = make_process(c);
  RateConvention conv;
  if (c.rate_convention == "with-alpha")
    conv = RateConvention::WithAlpha;
  else if (c.rate_convention == "without-alpha")
    conv = RateConvention::WithoutAlpha;
  else
    throw UsageError("--rate-convention must be with-alpha or without-alpha");
  RiskModelConfig cfg{c.c, c.u, make_claims(c), p};
  cfg.horizon = c.ruin_horizon;
  cfg.n_paths = c.paths;
  cfg.seed = c.seed;
  cfg.metropolis = make_metropolis(c);
  cfg.rate_convention = conv;

  Report r;
  r.driving_rate = p.subordinator.driving_rate();
  r.table.columns = {"quantity", "value", "standard_error"};
  const auto add = [&r](const std::string& name, double v,
                        std::optional<double> se = std::nullopt) {
    r.table.rows.push_back({name, num(v), se ? num(*se) : std::string()});
  };
  const double loading = premium_loading(cfg, 1.0);
  add("premium_loading", loading);
  r.payload["premium_loading"] = loading;

  const auto est = estimate_ruin_joint(cfg, c.y);
  add("horizon", est.horizon);
  add("G_mc", est.estimate, est.standard_error);
  add("psi_mc", est.psi_hat, est.psi_standard_error);
  r.payload["monte_carlo"] = {{"G", est.estimate},
                              {"G_standard_error", est.standard_error},
                              {"psi", est.psi_hat},
                              {"psi_standard_error", est.psi_standard_error},
                              {"horizon", est.horizon},
                              {"n_paths", est.n_paths},
                              {"seed", est.seed},
                              {"note", est.note}};
  r.notes.push_back("monte carlo: " + est.note);
  if (c.u == 0.0) {
    const double g0 = analytic_G0(cfg, c.y);
    const double psi0 = analytic_psi0(cfg);
    add("G_analytic", g0);
    add("psi_analytic", psi0);
    r.payload["analytic"] = {
        {"G", g0},
        {"psi", psi0},
        {"G_numeric_integral", numeric_G0(cfg, c.y)},
        {"exit_rate", ruin_exit_rate(cfg)},
        {"formula", "G(0,y) = (phi/c) int_0^inf (F(u+y)-F(u)) du, "
                    "psi(0) = (phi/c) mu"}};
  } else {
    r.payload["analytic"] = nullptr;
    r.notes.push_back("analytic values are only available at u = 0");
  }
  if (c.residual) {
    const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.2};
    const auto res = ide_residual_at_zero(cfg, c.y, grid);
    add("ide_lhs_slope", res.lhs_slope, res.lhs_standard_error);
    add("ide_rhs", res.rhs);
    add("ide_residual", res.residual, res.lhs_standard_error);
    r.payload["ide_residual"] = {{"lhs_slope", res.lhs_slope},
                                 {"lhs_standard_error", res.lhs_standard_error},
                                 {"rhs", res.rhs},
                                 {"residual", res.residual},
                                 {"u_grid", res.u_grid},
                                 {"G_mc", res.g_mc}};
  }
  r.payload["rate_convention"] = c.rate_convention;
  return r;
}

// ---- argument parsing ------------------------------------------------------

/// Flags seen on the command line, applied over a --config file.
class Overrides {
 public:
  explicit Overrides(RunConfig& flags) : flags_(flags) {}

  template <class T>
  CLI::Option* add(CLI::App& app, const std::string& name, T RunConfig::*field,
                   const std::string& help) {
    auto* opt = app.add_option(name, flags_.*field, help);
    apply_.push_back({opt, [this, field](RunConfig& dst) {
                        dst.*field = flags_.*field;
                      }});
    return opt;
  }

  CLI::Option* add(CLI::App& app, const std::string& name,
                   std::optional<double> RunConfig::*field,
                   const std::string& help) {
    auto& slot = storage_.emplace_back(0.0);
    auto* opt = app.add_option(name, slot, help);
    apply_.push_back({opt, [&slot, field](RunConfig& dst) { dst.*field = slot; }});
    return opt;
  }

  CLI::Option* flag(CLI::App& app, const std::string& name,
                    bool RunConfig::*field, const std::string& help) {
    auto* opt = app.add_flag(name, flags_.*field, help);
    apply_.push_back({opt, [this, field](RunConfig& dst) {
                        dst.*field = flags_.*field;
                      }});
    return opt;
  }

  void apply(RunConfig& dst) const {
    for (const auto& [opt, fn] : apply_)
      if (opt->count() > 0) fn(dst);
  }

 private:
  RunConfig& flags_;
  std::deque<double> storage_;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> apply_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Incomplete-gamma subordinators and time-changed Poisson "
               "processes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  RunConfig flags;
  Overrides ov(flags);
  std::string config_path;
  std::string save_config;

  ov.add(app, "--kind", &RunConfig::kind,
         "ing | ing-eps | ting | ping | ping-eps | pting");
  ov.add(app, "--alpha", &RunConfig::alpha, "index alpha in (0,1)");
  ov.add(app, "--eps", &RunConfig::eps, "minimum jump (ing-eps)");
  ov.add(app, "--theta", &RunConfig::theta, "tempering parameter (ting)");
  ov.add(app, "--lambda", &RunConfig::lambda, "outer Poisson rate (p* kinds)");
  ov.add(app, "-T", &RunConfig::horizon, "path horizon (simulate)");
  ov.add(app, "-t", &RunConfig::t, "time point (pmf, moments)");
  ov.add(app, "--steps", &RunConfig::steps, "grid steps for process paths");
  ov.add(app, "--paths", &RunConfig::paths, "number of paths");
  ov.add(app, "--seed", &RunConfig::seed, "random seed");
  ov.add(app, "--method", &RunConfig::method, "inverse | metropolis | auto");
  ov.add(app, "--burn-in", &RunConfig::burn_in, "Metropolis burn-in");
  ov.add(app, "--thinning", &RunConfig::thinning, "Metropolis thinning");
  ov.add(app, "-k", &RunConfig::k, "k or LO..HI (pmf)");
  ov.add(app, "--q", &RunConfig::q, "fractional moment order (moments)");
  ov.add(app, "--mode", &RunConfig::mode, "pdf | likelihood (pdf-table)");
  ov.add(app, "--z", &RunConfig::z, "fixed jump size (likelihood mode)");
  ov.add(app, "--z-min", &RunConfig::z_min, "first z of the pdf grid");
  ov.add(app, "--z-max", &RunConfig::z_max, "last z of the pdf grid");
  ov.add(app, "--points", &RunConfig::points, "grid points (pdf-table)");
  ov.add(app, "--u", &RunConfig::u, "initial capital (ruin)");
  ov.add(app, "--y", &RunConfig::y, "deficit bound (ruin)");
  ov.add(app, "--claims", &RunConfig::claims, "exp:MEAN | list:X,.. | file:PATH");
  ov.add(app, "--c", &RunConfig::c, "premium rate (ruin)");
  ov.add(app, "--horizon", &RunConfig::ruin_horizon,
         "ruin simulation horizon, 0 for the default");
  ov.add(app, "--rate-convention", &RunConfig::rate_convention,
         "with-alpha | without-alpha");
  ov.flag(app, "--residual", &RunConfig::residual,
          "report the integro-differential residual at u=0 (ruin)");
  ov.add(app, "--format", &RunConfig::format, "csv | json");
  ov.add(app, "--output", &RunConfig::output, "output file (default stdout)");
  app.add_option("--config", config_path, "RunConfig JSON to start from");
  app.add_option("--save-config", save_config, "write the resolved RunConfig");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "sample paths"},
      {"pdf-table", "jump pdf or likelihood table"},
      {"pmf", "pmf of the time-changed Poisson process"},
      {"moments", "mean and variance"},
      {"ruin", "ruin probability report"}};
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> argv_store{"igsub"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // --help and --version exit cleanly; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("--config: cannot read '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        cfg = from_json_text(ss.str());
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("--config: " + std::string(e.what()));
      }
    }
    ov.apply(cfg);
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.format != "csv" && cfg.format != "json")
      throw UsageError("--format must be csv or json");

    Report report;
    if (cfg.command == "simulate") report = cmd_simulate(cfg);
    else if (cfg.command == "pdf-table") report = cmd_pdf_table(cfg, err);
    else if (cfg.command == "pmf") report = cmd_pmf(cfg);
    else if (cfg.command == "moments") report = cmd_moments(cfg);
    else report = cmd_ruin(cfg);

    if (!save_config.empty()) {
      std::ofstream cf(resolve_output(save_config));
      if (!cf) throw UsageError("--save-config: cannot write '" + save_config + "'");
      cf << config_json(cfg).dump(2) << '\n';
    }
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.output.empty()) {
      file.open(resolve_output(cfg.output));
      if (!file) throw UsageError("--output: cannot write '" + cfg.output + "'");
      os = &file;
    }
    if (cfg.format == "csv") write_csv(*os, cfg, report);
    else write_json(*os, cfg, report);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace igsub::cli
