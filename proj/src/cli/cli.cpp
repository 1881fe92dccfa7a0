#include "secrelay/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <vector>

#include "secrelay/af_secrecy.hpp"
#include "secrelay/converse_bound.hpp"
#include "secrelay/df_secrecy.hpp"
#include "secrelay/errors.hpp"
#include "secrelay/fading_sim.hpp"
#include "secrelay/fractional_solver.hpp"
#include "secrelay/kernels/kernels.hpp"
#include "secrelay/verify.hpp"

namespace secrelay::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(what) + ": expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (const auto part : split(text, ',')) out.push_back(parse_double(part, what));
  return out;
}

std::vector<Strategy> parse_strategies(std::string_view text) {
  const std::string_view t = trim(text);
  if (t == "both") return {Strategy::AF, Strategy::DF};
  std::vector<Strategy> out;
  for (const auto part : split(t, ',')) out.push_back(parse_strategy(part));
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SECRELAY_SEED"); env != nullptr && *env != '\0') {
    return parse_integer<std::uint64_t>(env, "SECRELAY_SEED");
  }
  return kDefaultSeed;
}

// Writes to --out when given, to the command's stdout otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------------------
// Model selection shared by compute and sweep.

struct ModelFlags {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> mu;
  std::optional<std::string> h_r;
  std::optional<std::string> h_d;
  std::optional<std::string> h_e;
  std::optional<double> p_s;
  bool db = false;
  bool per_hop = false;
};

struct Model {
  ChannelRealization channel;
  DerivedParams params;
  double p_s = 1.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--alpha", f.alpha, "|h_d|^2 (use with --beta, --mu)");
  cmd->add_option("--beta", f.beta, "|h_e|^2");
  cmd->add_option("--mu", f.mu, "1 + P_s |h_r|^2");
  cmd->add_option("--hr", f.h_r, "source->relay gain as RE,IM (use with --hd, --he, --ps)");
  cmd->add_option("--hd", f.h_d, "relay->destination gain as RE,IM");
  cmd->add_option("--he", f.h_e, "relay->eavesdropper gain as RE,IM");
  cmd->add_option("--ps", f.p_s, "source power (W, or dBW with --db)");
  cmd->add_flag("--db", f.db, "powers are given in dBW");
  cmd->add_flag("--per-hop", f.per_hop, "report rates without the half-duplex factor 1/2");
}

double to_watts(double p, bool db) { return db ? db_to_linear(p) : p; }

Model resolve_model(const ModelFlags& f) {
  const int derived = f.alpha.has_value() + f.beta.has_value() + f.mu.has_value();
  const int gains = f.h_r.has_value() + f.h_d.has_value() + f.h_e.has_value();
  if (derived > 0 && (gains > 0 || f.p_s)) {
    throw ConfigError("give either --alpha/--beta/--mu or --hr/--hd/--he/--ps, not both");
  }
  Model m;
  if (derived > 0) {
    if (derived != 3) throw ConfigError("--alpha, --beta and --mu must be given together");
    m.params = DerivedParams{*f.alpha, *f.beta, *f.mu};
    validate(m.params);
    // A representative realization with these magnitudes (P_s = 1).
    m.channel = {Complex(std::sqrt(m.params.mu - 1.0), 0.0), Complex(std::sqrt(m.params.alpha), 0.0),
                 Complex(std::sqrt(m.params.beta), 0.0)};
    return m;
  }
  if (gains != 3 || !f.p_s) throw ConfigError("need --alpha/--beta/--mu, or --hr/--hd/--he together with --ps");
  m.channel = {parse_complex(*f.h_r), parse_complex(*f.h_d), parse_complex(*f.h_e)};
  m.p_s = to_watts(*f.p_s, f.db);
  m.params = derive_params(m.channel, PowerBudget{m.p_s, 0.0});
  return m;
}

RateConvention convention(const ModelFlags& f) {
  return f.per_hop ? RateConvention::PerHop : RateConvention::HalfDuplex;
}

SecrecyResult capacity_for(Strategy s, const DerivedParams& p, const PowerBudget& pb, RateConvention rc) {
  return s == Strategy::AF ? af_secrecy_capacity(p, pb, rc) : df_secrecy_capacity(p, pb, rc);
}

// ---------------------------------------------------------------------------
// compute

struct ComputeFlags {
  ModelFlags model;
  std::string strategy;
  double p_r = 0.0;
  std::string format = "pretty";
  std::string out_path;
  std::size_t grid_points = kDefaultGridPoints;
};

int cmd_compute(const ComputeFlags& f, std::ostream& out) {
  const Strategy strategy = parse_strategy(f.strategy);
  const Model m = resolve_model(f.model);
  const PowerBudget pb{m.p_s, to_watts(f.p_r, f.model.db)};
  validate(pb);
  const RateConvention rc = convention(f.model);
  const SecrecyResult r = capacity_for(strategy, m.params, pb, rc);

  std::vector<std::pair<std::string, std::string>> fields{
      {"strategy", std::string(to_string(strategy))},
      {"capacity", format_double(r.capacity)},
      {"x_hat", format_double(r.x_hat)},
      {"consumed_power", format_double(r.consumed_power)},
  };
  if (strategy == Strategy::AF) {
    double bound = genie_upper_bound(m.channel, m.params, pb, f.grid_points).bound_value;
    if (rc == RateConvention::PerHop) bound *= 2.0;
    const auto branch = lambda_hat_closed_form(make_problem(m.params, gain_domain(Strategy::AF, m.params, pb))).branch;
    fields.emplace_back("genie_bound", format_double(bound));
    fields.emplace_back("solver_branch", to_string(branch));
  }

  Sink sink(f.out_path, out);
  std::ostream& os = sink.get();
  if (f.format == "csv") {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].first;
    os << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].second;
    os << '\n';
  } else {
    for (const auto& [k, v] : fields) os << std::left << std::setw(16) << k << v << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  ModelFlags model;
  std::string strategy = "both";
  double pr_min = 0.0;
  std::optional<double> pr_max;
  std::optional<double> pr_step;
  std::string out_path;
};

std::vector<double> stepped_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("--pr-step must be positive");
  if (!(hi >= lo)) throw ConfigError("--pr-max must be >= --pr-min");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k) g[k] = lo + static_cast<double>(k) * step;
  return g;
}

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
  if (!f.pr_max || !f.pr_step) throw ConfigError("sweep needs --pr-max and --pr-step");
  const std::vector<Strategy> strategies = parse_strategies(f.strategy);
  const Model m = resolve_model(f.model);
  const RateConvention rc = convention(f.model);
  const std::vector<double> grid = stepped_grid(f.pr_min, *f.pr_max, *f.pr_step);

  Sink sink(f.out_path, out);
  std::ostream& os = sink.get();
  os << "strategy,p_r,capacity,x_hat,consumed_power\n";
  for (const double p : grid) {
    const PowerBudget pb{m.p_s, to_watts(p, f.model.db)};
    validate(pb);
    for (const Strategy s : strategies) {
      const SecrecyResult r = capacity_for(s, m.params, pb, rc);
      os << to_string(s) << ',' << format_double(pb.p_r) << ',' << format_double(r.capacity) << ','
         << format_double(r.x_hat) << ',' << format_double(r.consumed_power) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// montecarlo

struct MonteCarloSettings {
  double var_hr = 1.0;
  double var_he = 1.0;
  std::vector<double> sigma2_hd{1.0, 2.0, 4.0, 8.0};
  double p_s_dbw = 10.0;
  double pr_min = 0.0;
  double pr_max = 20.0;
  std::size_t pr_points = 41;
  std::size_t n_samples = 100'000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Strategy> strategies{Strategy::AF, Strategy::DF};
  bool db = false;
};

struct MonteCarloFlags {
  std::string config_path;
  std::optional<double> var_hr;
  std::optional<double> var_he;
  std::optional<std::string> sigma2_hd;
  std::optional<double> p_s_dbw;
  std::optional<double> pr_min;
  std::optional<double> pr_max;
  std::optional<std::size_t> pr_points;
  std::optional<std::size_t> n_samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  bool db = false;
  std::string out_path;
};

void apply_config(MonteCarloSettings& s, const std::map<std::string, std::string>& kv) {
  const std::map<std::string, std::function<void(std::string_view)>> setters{
      {"var_hr", [&](auto v) { s.var_hr = parse_double(v, "var_hr"); }},
      {"var_he", [&](auto v) { s.var_he = parse_double(v, "var_he"); }},
      {"sigma2_hd", [&](auto v) { s.sigma2_hd = parse_list(v, "sigma2_hd"); }},
      {"p_s_dbw", [&](auto v) { s.p_s_dbw = parse_double(v, "p_s_dbw"); }},
      {"pr_min", [&](auto v) { s.pr_min = parse_double(v, "pr_min"); }},
      {"pr_max", [&](auto v) { s.pr_max = parse_double(v, "pr_max"); }},
      {"pr_points", [&](auto v) { s.pr_points = parse_integer<std::size_t>(v, "pr_points"); }},
      {"n_samples", [&](auto v) { s.n_samples = parse_integer<std::size_t>(v, "n_samples"); }},
      {"seed", [&](auto v) { s.seed = parse_integer<std::uint64_t>(v, "seed"); }},
      {"strategies", [&](auto v) { s.strategies = parse_strategies(v); }},
      {"db", [&](auto v) {
         const auto t = trim(v);
         if (t != "true" && t != "false") throw ConfigError("db: expected true or false");
         s.db = t == "true";
       }},
  };
  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(value);
  }
}

MonteCarloSettings resolve_settings(const MonteCarloFlags& f) {
  MonteCarloSettings s;
  s.seed = default_seed();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot read config file '" + f.config_path + "'");
    apply_config(s, parse_key_values(in));
  }
  if (f.var_hr) s.var_hr = *f.var_hr;
  if (f.var_he) s.var_he = *f.var_he;
  if (f.sigma2_hd) s.sigma2_hd = parse_list(*f.sigma2_hd, "--sigma2-hd");
  if (f.p_s_dbw) s.p_s_dbw = *f.p_s_dbw;
  if (f.pr_min) s.pr_min = *f.pr_min;
  if (f.pr_max) s.pr_max = *f.pr_max;
  if (f.pr_points) s.pr_points = *f.pr_points;
  if (f.n_samples) s.n_samples = *f.n_samples;
  if (f.seed) s.seed = *f.seed;
  if (f.strategy) s.strategies = parse_strategies(*f.strategy);
  if (f.db) s.db = true;
  return s;
}

int cmd_montecarlo(const MonteCarloFlags& f, std::ostream& out) {
  const MonteCarloSettings s = resolve_settings(f);
  if (s.sigma2_hd.empty()) throw ConfigError("sigma2_hd list is empty");
  if (s.n_samples == 0) throw ConfigError("n_samples must be >= 1");

  EnsembleConfig cfg;
  cfg.var_hr = s.var_hr;
  cfg.var_he = s.var_he;
  cfg.p_s_dbw = s.p_s_dbw;
  cfg.n_samples = s.n_samples;
  cfg.seed = s.seed;
  cfg.strategies = s.strategies;
  cfg.p_r_grid = linear_grid(s.pr_min, s.pr_max, s.pr_points);
  if (s.db) {
    for (double& p : cfg.p_r_grid) p = db_to_linear(p);
  }
  for (const double v : s.sigma2_hd) {
    cfg.var_hd = v;
    validate(cfg);
  }

  Sink sink(f.out_path, out);
  std::ostream& os = sink.get();
  os << "strategy,sigma2_hd,p_r,mean_capacity,stderr_capacity,mean_consumed_power,stderr_consumed_power,"
        "n_samples,seed\n";
  for (const double v : s.sigma2_hd) {
    cfg.var_hd = v;
    for (const SweepRecord& r : ergodic_sweep(cfg)) {
      os << to_string(r.strategy) << ',' << format_double(v) << ',' << format_double(r.p_r) << ','
         << format_double(r.mean_capacity) << ',' << format_double(r.stderr_capacity) << ','
         << format_double(r.mean_consumed_power) << ',' << format_double(r.stderr_consumed_power) << ','
         << r.n_samples << ',' << r.seed << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyFlags {
  std::size_t draws = 1000;
  std::optional<std::uint64_t> seed;
  std::size_t grid_points = kDefaultGridPoints;
  bool inject_fault = false;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  VerifyOptions opts;
  opts.draws = f.draws;
  opts.seed = f.seed ? *f.seed : default_seed();
  opts.grid_points = f.grid_points;
  opts.inject_fault = f.inject_fault;
  if (opts.grid_points < 2) throw ConfigError("--grid-points must be >= 2");

  out << "# verify seed=" << opts.seed << " draws=" << opts.draws << " grid_points=" << opts.grid_points
      << " isa=" << kernels::to_string(kernels::active_isa()) << '\n';
  bool all = true;
  for (const SuiteReport& r : run_verification(opts)) {
    all = all && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << r.name
        << " worst=" << format_double(r.worst) << " tol=" << format_double(r.tolerance) << " checks=" << r.checks
        << '\n';
  }
  out << (all ? "all suites passed\n" : "verification FAILED\n");
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

Complex parse_complex(std::string_view text) {
  const auto parts = split(text, ',');
  try {
    if (parts.size() == 1) return {parse_double(parts[0], "complex"), 0.0};
    if (parts.size() == 2) return {parse_double(parts[0], "complex"), parse_double(parts[1], "complex")};
  } catch (const ConfigError& e) {
    throw InvalidInput(e.what());
  }
  throw InvalidInput("expected RE or RE,IM, got '" + std::string(text) + "'");
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError("config line " + std::to_string(lineno) + ": missing '='");
    std::string key(trim(body.substr(0, eq)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, std::string(trim(body.substr(eq + 1)))).second) {
      throw ConfigError("config key '" + key + "' repeated");
    }
  }
  return kv;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secrecy capacity of two-hop AF/DF relay wiretap channels", "secrelay"};
  app.require_subcommand(1);

  ComputeFlags cf;
  auto* compute = app.add_subcommand("compute", "capacity, optimal gain and relay power for one channel");
  add_model_flags(compute, cf.model);
  compute->add_option("--strategy", cf.strategy, "af or df")->required();
  compute->add_option("--pr", cf.p_r, "relay peak power (W, or dBW with --db)")->required();
  compute->add_option("--format", cf.format, "pretty or csv")->check(CLI::IsMember({"pretty", "csv"}));
  compute->add_option("--grid-points", cf.grid_points, "grid size for the converse bound");
  compute->add_option("--out", cf.out_path, "output file (default stdout)");

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "capacity versus relay power for a fixed channel (CSV)");
  add_model_flags(sweep, sf.model);
  sweep->add_option("--strategy", sf.strategy, "af, df or both");
  sweep->add_option("--pr-min", sf.pr_min, "first relay power");
  sweep->add_option("--pr-max", sf.pr_max, "last relay power");
  sweep->add_option("--pr-step", sf.pr_step, "relay power step");
  sweep->add_option("--out", sf.out_path, "output file (default stdout)");

  MonteCarloFlags mf;
  auto* mc = app.add_subcommand("montecarlo", "ergodic capacity and relay power over Rayleigh fading (CSV)");
  mc->add_option("--config", mf.config_path, "key=value configuration file");
  mc->add_option("--var-hr", mf.var_hr, "variance of h_r");
  mc->add_option("--var-he", mf.var_he, "variance of h_e");
  mc->add_option("--sigma2-hd", mf.sigma2_hd, "comma-separated variances of h_d");
  mc->add_option("--ps-dbw", mf.p_s_dbw, "source power in dBW");
  mc->add_option("--pr-min", mf.pr_min, "first relay power");
  mc->add_option("--pr-max", mf.pr_max, "last relay power");
  mc->add_option("--pr-points", mf.pr_points, "number of relay power points");
  mc->add_option("--samples", mf.n_samples, "realizations per curve");
  mc->add_option("--seed", mf.seed, "64-bit seed (default: $SECRELAY_SEED or built-in)");
  mc->add_option("--strategy", mf.strategy, "af, df or both");
  mc->add_flag("--db", mf.db, "relay power grid is uniform in dBW");
  mc->add_option("--out", mf.out_path, "output file (default stdout)");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "run the oracle and invariant suites");
  verify->add_option("--draws", vf.draws, "random scenarios");
  verify->add_option("--seed", vf.seed, "64-bit seed (default: $SECRELAY_SEED or built-in)");
  verify->add_option("--grid-points", vf.grid_points, "grid size of the brute-force oracle");
  verify->add_flag("--inject-fault", vf.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(cf, out);
    if (sweep->parsed()) return cmd_sweep(sf, out);
    if (mc->parsed()) return cmd_montecarlo(mf, out);
    if (verify->parsed()) return cmd_verify(vf, out);
  } catch (const std::exception& e) {
    err << "secrelay: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace secrelay::cli
