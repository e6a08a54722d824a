#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/io.hpp"
#include "mqcardinal/version.hpp"

namespace mqc::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw_validation("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

// Comma list, or "lo:hi:n" for n equispaced points.
std::vector<double> parse_points(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw_validation("points must be 'lo:hi:n'");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double n = parse_number(parts[2]);
    if (!(n >= 1.0) || n != std::floor(n)) throw_validation("points: n must be a positive integer");
    std::vector<double> xs;
    const auto count = static_cast<long>(n);
    for (long i = 0; i < count; ++i) xs.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return xs;
  }
  std::vector<double> xs;
  for (auto p : split(text, ',')) xs.push_back(parse_number(p));
  return xs;
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw_validation("window must be 'lo,hi'");
  return {parse_number(parts[0]), parse_number(parts[1])};
}

PWFunctionSpec::Kind pw_kind_from_string(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  for (auto k : {PWFunctionSpec::Kind::xi_squared_hat, PWFunctionSpec::Kind::sinc_a,
                 PWFunctionSpec::Kind::poly_times_sinc_a}) {
    if (s == to_string(k)) return k;
  }
  throw_validation("unknown band-limited function '" + s + "'");
}

std::string resolved_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  const std::string ext = std::filesystem::path(cfg.out).extension().string();
  if (ext == ".bin") return "bin";
  if (ext == ".json") return "json";
  return "csv";
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << v;
  return ss.str();
}

// Deterministic uniform draws: the top 53 bits of mt19937_64.
std::vector<double> random_points(std::uint64_t seed, int n, double lo, double hi) {
  std::mt19937_64 gen(seed);
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    xs.push_back(lo + (hi - lo) * u);
  }
  return xs;
}

struct Artifact {
  std::filesystem::path path;
  std::string content;
};

ordered_json grid_json(const GridSpec& g) {
  ordered_json j;
  j["M"] = g.M;
  j["oversample"] = g.oversample;
  j["d"] = g.d;
  j["period"] = g.period();
  j["samples_per_unit"] = g.samples_per_unit();
  j["points_per_axis"] = g.points_per_axis();
  return j;
}

ordered_json run_fundamental(const RunConfig& cfg, std::vector<Artifact>& artifacts) {
  const auto p = params_at(cfg);
  const GridSpec grid = resolved_grid(cfg, p);
  const GridFunction L = synthesize(p, grid, cfg.periodization, SynthesisOptions{cfg.memory_budget});
  const std::string fmt = resolved_format(cfg);
  if (fmt == "bin") {
    artifacts.push_back({cfg.out, io::grid_to_binary(L)});
  } else if (fmt == "csv") {
    artifacts.push_back({cfg.out, io::grid_to_csv(L)});
  } else {
    throw_validation("fundamental: output format must be csv or bin");
  }
  ordered_json res;
  res["grid"] = grid_json(grid);
  res["discretization_bound"] = L.discretization_bound();
  res["truncation_bound"] = L.truncation_bound();
  res["imag_residue"] = L.imag_residue();
  if (p.dim() == 1) {
    double defect = 0.0;
    const long kmax = grid.period() / 2 - 1;
    for (long k = -kmax; k <= kmax; ++k) defect = std::max(defect, std::abs(L.at_integer(k) - (k == 0 ? 1.0 : 0.0)));
    res["max_cardinality_defect"] = defect;
  }
  return res;
}

ordered_json run_interpolate(const RunConfig& cfg, std::vector<Artifact>& artifacts) {
  const auto p = params_at(cfg);
  if (cfg.input.empty()) throw_validation("interpolate: --input is required");
  SampleSequence y = io::sequence_from_csv(io::read_file(cfg.input));
  y.growth_class = cfg.growth_class;
  y.finite_support = cfg.finite_support;
  std::vector<double> xs = cfg.xs;
  if (cfg.random_points > 0) {
    const auto more = random_points(cfg.seed, cfg.random_points, cfg.window_lo, cfg.window_hi);
    xs.insert(xs.end(), more.begin(), more.end());
  }
  if (xs.empty()) throw_validation("interpolate: no evaluation points (use --xs or --random-points)");
  ordered_json res;
  SeriesResult r;
  if (cfg.op == "whittaker") {
    r = whittaker(y, xs);
  } else if (cfg.op == "cardinal") {
    const GridSpec grid = resolved_grid(cfg, p);
    const GridFunction L = synthesize(p, grid, cfg.periodization, SynthesisOptions{cfg.memory_budget});
    r = interpolate(L, y, xs, cfg.truncation);
    res["grid"] = grid_json(grid);
  } else {
    throw_validation("interpolate: --operator must be cardinal or whittaker");
  }
  artifacts.push_back({cfg.out, io::series_to_csv(xs, r)});
  res["radius"] = r.radius;
  res["slope"] = r.slope;
  res["max_tail_bound"] = r.tail_bounds.empty() ? 0.0 : *std::max_element(r.tail_bounds.begin(), r.tail_bounds.end());
  return res;
}

ordered_json run_coefficients(const RunConfig& cfg, std::vector<Artifact>& artifacts) {
  const auto p = params_at(cfg);
  const CoefficientSet c = coefficients(p, cfg.periodization, cfg.n_coeffs);
  const std::string fmt = resolved_format(cfg);
  if (fmt == "json") {
    artifacts.push_back({cfg.out, io::coefficients_to_json(c, p)});
  } else if (fmt == "csv") {
    artifacts.push_back({cfg.out, io::coefficients_to_csv(c)});
  } else {
    throw_validation("coefficients: output format must be csv or json");
  }
  ordered_json res;
  res["grid_size"] = c.grid_size;
  return res;
}

ordered_json run_study(const RunConfig& cfg, std::vector<Artifact>& artifacts) {
  for (std::size_t i = 0; i < cfg.cs.size(); ++i) (void)params_at(cfg, i);
  StudyReport r;
  switch (cfg.study_kind) {
    case StudyKind::sinc_convergence:
      r = sinc_convergence(cfg.alpha, cfg.cs, cfg.window_lo, cfg.window_hi, cfg.periodization);
      break;
    case StudyKind::decay_slope:
      r = decay_study(cfg.alpha, cfg.cs, cfg.window_lo, cfg.window_hi, cfg.threshold, cfg.periodization);
      break;
    case StudyKind::pw_recovery: {
      PWFunctionSpec f;
      f.kind = cfg.pw_kind;
      f.a = cfg.pw_a;
      f.k = cfg.k;
      const ErrorMetric m = cfg.metric == "l2" ? ErrorMetric::l2 : ErrorMetric::sup;
      if (cfg.metric != "l2" && cfg.metric != "sup") throw_validation("study: --metric must be sup or l2");
      r = pw_recovery(f, cfg.alpha, cfg.cs, cfg.window_lo, cfg.window_hi, m, cfg.periodization);
      break;
    }
    case StudyKind::polynomial_reproduction:
      r = polynomial_reproduction(cfg.alpha, cfg.cs, cfg.k, cfg.window_lo, cfg.window_hi, cfg.periodization);
      break;
    case StudyKind::lhat_derivative_l1:
      r = lhat_derivative_study(cfg.alpha, cfg.cs, cfg.k, cfg.periodization);
      break;
  }
  artifacts.push_back({cfg.out, io::report_to_json(r)});
  if (!cfg.metrics_csv.empty()) artifacts.push_back({cfg.metrics_csv, io::report_metrics_to_csv(r)});
  ordered_json res;
  res["all_passed"] = r.all_passed();
  return res;
}

void add_common(CLI::App* app, RunConfig& cfg, std::string& c_text, std::optional<int>& J) {
  app->add_option("--alpha", cfg.alpha, "Multiquadric exponent (not in N0)")->required();
  app->add_option("--c", c_text, "Shape parameter, or a sweep 'a,b,..' / 'start:stop:factor'");
  app->add_option("--d", cfg.d, "Dimension");
  app->add_option("--M", cfg.M, "Frequency half-extent parameter");
  app->add_option("--oversample", cfg.oversample, "Real-space period in units of M");
  app->add_option("--J", J, "Periodization radius (0 = automatic)");
  app->add_option("--tail-tol", cfg.periodization.tail_tol, "Relative periodization tail tolerance");
  app->add_option("--memory-budget", cfg.memory_budget, "Synthesis memory budget in bytes");
  app->add_option("--out", cfg.out, "Output path")->required();
  app->add_option("--format", cfg.format, "csv, bin or json (default: from extension)");
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::fundamental: return "fundamental";
    case Command::interpolate: return "interpolate";
    case Command::coefficients: return "coefficients";
    case Command::study: return "study";
  }
  return "unknown";
}

Command command_from_string(const std::string& s) {
  for (auto c : {Command::fundamental, Command::interpolate, Command::coefficients, Command::study}) {
    if (s == to_string(c)) return c;
  }
  throw_validation("unknown command '" + s + "'");
}

std::vector<double> parse_sweep(const std::string& text) {
  if (text.empty()) throw_validation("empty sweep");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw_validation("geometric sweep must be 'start:stop:factor'");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double factor = parse_number(parts[2]);
    if (!(start > 0.0) || !(factor > 1.0) || !(stop >= start)) {
      throw_validation("geometric sweep needs 0 < start <= stop and factor > 1");
    }
    std::vector<double> out;
    for (double v = start; v <= stop * (1.0 + 1e-12); v *= factor) out.push_back(v);
    return out;
  }
  std::vector<double> out;
  for (auto p : split(text, ',')) out.push_back(parse_number(p));
  return out;
}

MultiquadricParams params_at(const RunConfig& cfg, std::size_t i) {
  if (i >= cfg.cs.size()) throw_validation("no shape parameter given");
  return MultiquadricParams::make(cfg.alpha, cfg.cs[i], cfg.d);
}

GridSpec resolved_grid(const RunConfig& cfg, const MultiquadricParams& p) {
  GridSpec g = GridSpec::automatic(p);
  if (cfg.M) g.M = *cfg.M;
  if (cfg.oversample) g.oversample = *cfg.oversample;
  g.validate();
  return g;
}

std::string config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(cfg.command);
  j["alpha"] = cfg.alpha;
  j["c"] = cfg.cs;
  j["d"] = cfg.d;
  j["M"] = cfg.M ? ordered_json(*cfg.M) : ordered_json(nullptr);
  j["oversample"] = cfg.oversample ? ordered_json(*cfg.oversample) : ordered_json(nullptr);
  j["periodization"] = {{"J", cfg.periodization.J}, {"tail_tol", cfg.periodization.tail_tol}};
  j["truncation"] = {{"radius", cfg.truncation.radius},
                     {"tail_mode", cfg.truncation.tail_mode == TailMode::theorem_slope ? "theorem_slope" : "measured_slope"},
                     {"target", cfg.truncation.target}};
  j["memory_budget"] = cfg.memory_budget;
  j["input"] = cfg.input;
  j["growth_class"] = cfg.growth_class;
  j["finite_support"] = cfg.finite_support;
  j["operator"] = cfg.op;
  j["xs"] = cfg.xs;
  j["random_points"] = cfg.random_points;
  j["seed"] = cfg.seed;
  j["n_coeffs"] = cfg.n_coeffs;
  j["study_kind"] = std::string(to_string(cfg.study_kind));
  j["window"] = {cfg.window_lo, cfg.window_hi};
  j["k"] = cfg.k;
  j["threshold"] = cfg.threshold;
  j["function"] = std::string(to_string(cfg.pw_kind));
  j["a"] = cfg.pw_a;
  j["metric"] = cfg.metric;
  j["out"] = cfg.out;
  j["format"] = cfg.format;
  j["metrics_csv"] = cfg.metrics_csv;
  return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
  RunConfig cfg;
  try {
    const auto j = ordered_json::parse(text);
    cfg.command = command_from_string(j.at("command").get<std::string>());
    cfg.alpha = j.at("alpha").get<double>();
    cfg.cs = j.at("c").get<std::vector<double>>();
    cfg.d = j.at("d").get<int>();
    if (!j.at("M").is_null()) cfg.M = j.at("M").get<int>();
    if (!j.at("oversample").is_null()) cfg.oversample = j.at("oversample").get<int>();
    cfg.periodization.J = j.at("periodization").at("J").get<int>();
    cfg.periodization.tail_tol = j.at("periodization").at("tail_tol").get<double>();
    cfg.truncation.radius = j.at("truncation").at("radius").get<int>();
    cfg.truncation.tail_mode = j.at("truncation").at("tail_mode").get<std::string>() == "measured_slope"
                                   ? TailMode::measured_slope
                                   : TailMode::theorem_slope;
    cfg.truncation.target = j.at("truncation").at("target").get<double>();
    cfg.memory_budget = j.at("memory_budget").get<std::size_t>();
    cfg.input = j.at("input").get<std::string>();
    cfg.growth_class = j.at("growth_class").get<double>();
    cfg.finite_support = j.at("finite_support").get<bool>();
    cfg.op = j.at("operator").get<std::string>();
    cfg.xs = j.at("xs").get<std::vector<double>>();
    cfg.random_points = j.at("random_points").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.n_coeffs = j.at("n_coeffs").get<int>();
    cfg.study_kind = study_kind_from_string(j.at("study_kind").get<std::string>());
    cfg.window_lo = j.at("window").at(0).get<double>();
    cfg.window_hi = j.at("window").at(1).get<double>();
    cfg.k = j.at("k").get<int>();
    cfg.threshold = j.at("threshold").get<double>();
    cfg.pw_kind = pw_kind_from_string(j.at("function").get<std::string>());
    cfg.pw_a = j.at("a").get<double>();
    cfg.metric = j.at("metric").get<std::string>();
    cfg.out = j.at("out").get<std::string>();
    cfg.format = j.at("format").get<std::string>();
    cfg.metrics_csv = j.at("metrics_csv").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw_validation(std::string("configuration JSON: ") + e.what());
  }
  return cfg;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv) {
  CLI::App app{"Multiquadric cardinal interpolation: fundamental functions, interpolation and studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string c_text = "1";
  std::optional<int> J;
  std::string xs_text;
  std::string window_text;
  std::string kind_text = "sinc-convergence";
  std::string function_text = "xi-squared-hat";
  std::string tail_mode = "theorem";

  auto* fund = app.add_subcommand("fundamental", "Synthesize L on a grid (CSV x,L or binary)");
  add_common(fund, cfg, c_text, J);

  auto* interp = app.add_subcommand("interpolate", "Evaluate the interpolant of a j,y CSV sequence");
  add_common(interp, cfg, c_text, J);
  interp->add_option("--input", cfg.input, "CSV with columns j,y")->required();
  interp->add_option("--growth", cfg.growth_class, "Declared growth exponent of the data");
  interp->add_flag("--finite-support", cfg.finite_support, "Data vanish outside the stored range");
  interp->add_option("--operator", cfg.op, "cardinal or whittaker");
  interp->add_option("--xs", xs_text, "Points: 'x1,x2,..' or 'lo:hi:n'");
  interp->add_option("--random-points", cfg.random_points, "Number of seeded random points in --window");
  interp->add_option("--seed", cfg.seed, "Seed for --random-points");
  interp->add_option("--window", window_text, "Window 'lo,hi' for random points");
  interp->add_option("--radius", cfg.truncation.radius, "Truncation radius (0 = automatic)");
  interp->add_option("--tail-mode", tail_mode, "theorem or measured");

  auto* coeff = app.add_subcommand("coefficients", "Coefficients c_j of L in translates of phi");
  add_common(coeff, cfg, c_text, J);
  coeff->add_option("--n", cfg.n_coeffs, "Return c_j for |j| <= n");

  auto* study = app.add_subcommand("study", "Run a numerical study and write a JSON report");
  add_common(study, cfg, c_text, J);
  study->add_option("--kind", kind_text,
                    "sinc-convergence, decay-slope, pw-recovery, polynomial-reproduction, lhat-derivative-l1");
  study->add_option("--window", window_text, "Window 'lo,hi'");
  study->add_option("--k", cfg.k, "Polynomial degree or derivative order");
  study->add_option("--threshold", cfg.threshold, "Slope threshold for decay-slope");
  study->add_option("--function", function_text, "xi-squared-hat, sinc-a or poly-times-sinc-a");
  study->add_option("--a", cfg.pw_a, "Band of the test function");
  study->add_option("--metric", cfg.metric, "sup or l2");
  study->add_option("--metrics-csv", cfg.metrics_csv, "Also write the metric arrays as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    std::cout << kVersion << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw_validation(e.what());
  }

  const CLI::App* chosen = app.get_subcommands().front();
  cfg.command = command_from_string(chosen->get_name());
  cfg.cs = parse_sweep(c_text);
  if (J) cfg.periodization.J = *J;
  if (!xs_text.empty()) cfg.xs = parse_points(xs_text);
  if (!window_text.empty()) std::tie(cfg.window_lo, cfg.window_hi) = parse_window(window_text);
  if (cfg.command == Command::study) {
    cfg.study_kind = study_kind_from_string(kind_text);
    cfg.pw_kind = pw_kind_from_string(function_text);
  } else if (cfg.cs.size() != 1) {
    throw_validation(to_string(cfg.command) + ": --c takes a single value");
  }
  if (tail_mode == "measured") {
    cfg.truncation.tail_mode = TailMode::measured_slope;
  } else if (tail_mode != "theorem") {
    throw_validation("--tail-mode must be theorem or measured");
  }
  return cfg;
}

RunOutcome run(const RunConfig& cfg) {
  RunOutcome outcome;
  try {
    if (cfg.out.empty()) throw_validation("--out is required");
    std::vector<Artifact> artifacts;
    ordered_json results;
    switch (cfg.command) {
      case Command::fundamental: results = run_fundamental(cfg, artifacts); break;
      case Command::interpolate: results = run_interpolate(cfg, artifacts); break;
      case Command::coefficients: results = run_coefficients(cfg, artifacts); break;
      case Command::study: results = run_study(cfg, artifacts); break;
    }
    ordered_json manifest;
    manifest["tool"] = "mqcardinal";
    manifest["library_version"] = kVersion;
    manifest["config"] = ordered_json::parse(config_to_json(cfg));
    manifest["tolerances"] = {{"periodization_tail_tol", cfg.periodization.tail_tol},
                              {"resolved_J", cfg.periodization.resolved(cfg.cs.front()).J},
                              {"truncation_target", cfg.truncation.target},
                              {"imag_residue_limit", 1e-10},
                              {"growth_epsilon", 0.01}};
    manifest["results"] = results;
    ordered_json list = ordered_json::array();
    for (const auto& a : artifacts) {
      io::write_file_atomic(a.path, a.content);
      list.push_back({{"path", a.path.string()}, {"bytes", a.content.size()}, {"fnv1a64", hex(fnv1a(a.content))}});
      outcome.artifacts.push_back(a.path);
    }
    manifest["artifacts"] = std::move(list);
    std::filesystem::path mpath = cfg.out;
    mpath += ".manifest.json";
    io::write_file_atomic(mpath, manifest.dump(2) + '\n');
    outcome.artifacts.push_back(mpath);
  } catch (const BudgetError& e) {
    outcome.exit_code = 3;
    outcome.message = e.what();
  } catch (const ValidationError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const DomainError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  }
  return outcome;
}

RunOutcome replay(const std::filesystem::path& manifest, const std::optional<std::string>& out) {
  RunConfig cfg;
  try {
    const auto j = ordered_json::parse(io::read_file(manifest));
    cfg = config_from_json(j.at("config").dump());
  } catch (const nlohmann::json::exception& e) {
    return {2, {}, std::string("manifest: ") + e.what()};
  } catch (const Error& e) {
    return {2, {}, e.what()};
  }
  if (out) cfg.out = *out;
  return run(cfg);
}

int main_entry(int argc, const char* const* argv) {
  try {
    if (argc >= 2 && std::string_view(argv[1]) == "replay") {
      CLI::App app{"Re-run a manifest"};
      std::string manifest;
      std::optional<std::string> out;
      app.add_option("--manifest", manifest, "Manifest written by a previous run")->required();
      app.add_option("--out", out, "Redirect the primary output");
      try {
        app.parse(argc - 1, argv + 1);
      } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
      } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
      }
      const RunOutcome r = replay(manifest, out);
      if (r.exit_code != 0) std::cerr << "error: " << r.message << '\n';
      return r.exit_code;
    }
    const auto cfg = parse_args(argc, argv);
    if (!cfg) return 0;
    const RunOutcome r = run(*cfg);
    if (r.exit_code != 0) std::cerr << "error: " << r.message << '\n';
    return r.exit_code;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mqc::cli
