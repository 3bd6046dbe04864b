#include "annulab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "annulab/errors.hpp"
#include "annulab/io.hpp"
#include "annulab/kernels.hpp"
#include "annulab/pde.hpp"
#include "annulab/surfaces.hpp"
#include "annulab/theorems.hpp"

namespace annulab {
namespace {

using json = nlohmann::json;

// Residuals at or below this are treated as exact in convergence studies.
constexpr double roundoff_floor = 1e-10;

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::solver_divergence:
    case ErrorKind::compatibility_defect:
    case ErrorKind::not_closed:
    case ErrorKind::degenerate_immersion:
    case ErrorKind::frame_not_tangent:
      return exit_solver;
    default:
      return exit_usage;
  }
}

json parse_param_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

void apply_params(RunConfig& config, const std::vector<std::string>& pairs) {
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorKind::invalid_parameter, "--param expects key=value, got '" + p + "'");
    config.params[p.substr(0, eq)] = parse_param_value(p.substr(eq + 1));
  }
}

std::pair<double, double> parse_domain(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::invalid_parameter, "--domain expects b,a, got '" + text + "'");
  try {
    std::size_t used = 0;
    const double b = std::stod(text.substr(0, comma), &used);
    const std::string rest = text.substr(comma + 1);
    std::size_t used2 = 0;
    const double a = std::stod(rest, &used2);
    if (used != comma || used2 != rest.size()) throw std::invalid_argument("trailing");
    return {b, a};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::invalid_parameter, "--domain expects b,a, got '" + text + "'");
  }
}

// Catalog defaults for keys the user did not set.
json with_defaults(const std::string& surface, const json& params) {
  json out = params;
  for (const auto& e : catalog())
    if (e.name == surface)
      for (const auto& [key, value] : e.defaults.items())
        if (!out.contains(key)) out[key] = value;
  return out;
}

GridSpec build_grid(const std::string& surface, const json& params, const GridChoice& choice) {
  auto d = default_domain(surface, params);
  return make_grid(choice.b.value_or(d[0]), choice.a.value_or(d[1]), choice.n_s, choice.n_theta);
}

std::string file_stem(const std::string& surface, const std::string& check) { return surface + "-" + check; }

int catalog_cmd(bool as_json, std::ostream& out) {
  if (as_json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : catalog()) {
      const auto d = default_domain(e.name, e.defaults);
      arr.push_back(nlohmann::ordered_json{{"name", e.name},
                                           {"description", e.description},
                                           {"defaults", e.defaults},
                                           {"minimal", e.minimal},
                                           {"domain", {d[0], d[1]}}});
    }
    out << arr.dump(2) << "\n";
    return exit_ok;
  }
  for (const auto& e : catalog()) {
    const auto d = default_domain(e.name, e.defaults);
    out << std::left << std::setw(14) << e.name << (e.minimal ? "minimal  " : "         ") << "domain ("
        << std::setprecision(6) << d[0] << ", " << d[1] << ")  defaults " << e.defaults.dump() << "\n"
        << "              " << e.description << "\n";
  }
  return exit_ok;
}

struct WenteOptions {
  std::size_t n = 50;
  std::uint64_t seed = 7;
  std::string grid = "128x256";
  std::string domain = "1,2";
  std::optional<double> tolerance;
  std::string out;
};

int wente_cmd(const WenteOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0) {
    err << "error: --n must be at least 1\n";
    return exit_usage;
  }
  const auto [ns, nt] = parse_resolution(o.grid);
  const auto [b, a] = parse_domain(o.domain);
  const GridSpec g = make_grid(b, a, ns, nt);
  const WenteAudit audit = wente_audit(o.n, o.seed, g, o.tolerance);
  std::ostringstream csv;
  csv << "sample,seed,sup_ratio,grad_ratio\n";
  for (const auto& s : audit.samples)
    csv << s.sample << "," << s.seed << "," << format_real(s.sup_ratio) << "," << format_real(s.grad_ratio) << "\n";
  if (o.out.empty())
    out << csv.str();
  else
    write_atomic(o.out, csv.str());
  out << std::setprecision(10) << "max sup ratio " << audit.max_sup_ratio << " (constant " << wente_constant_infty
      << "), max gradient ratio " << audit.max_grad_ratio << " (constant " << wente_constant_l2 << "), tolerance "
      << audit.tolerance << "\n";
  if (!audit.passed) {
    err << "wente audit failed: worst sup-ratio seed " << audit.worst_sup_seed << ", worst gradient-ratio seed "
        << audit.worst_grad_seed << "\n";
    return exit_check_failed;
  }
  return exit_ok;
}

struct ConvergeOptions {
  std::string surface;
  std::vector<std::string> params;
  std::string metric;
  std::vector<std::string> grids{"64x128", "128x256", "256x512"};
  std::string domain;
  double min_order = 1.9;
  std::string out;
};

int converge_cmd(const ConvergeOptions& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.surface = o.surface;
  apply_params(cfg, o.params);
  cfg.params = with_defaults(cfg.surface, cfg.params);
  if (!o.domain.empty()) std::tie(cfg.grid.b, cfg.grid.a) = parse_domain(o.domain);
  if (o.grids.size() < 3) {
    err << "error: --grids needs at least three resolutions\n";
    return exit_usage;
  }
  std::vector<std::pair<std::size_t, std::size_t>> res;
  for (const auto& gtext : o.grids) res.push_back(parse_resolution(gtext));
  for (std::size_t k = 1; k < res.size(); ++k) {
    const bool doubled_s = res[k].first == 2 * res[k - 1].first || res[k].first - 1 == 2 * (res[k - 1].first - 1);
    if (!doubled_s || res[k].second != 2 * res[k - 1].second) {
      err << "error: --grids must double at each step\n";
      return exit_usage;
    }
  }
  const auto& names = convergence_metric_names();
  if (std::find(names.begin(), names.end(), o.metric) == names.end()) {
    err << "error: unknown metric: " << o.metric << "\n";
    return exit_usage;
  }

  std::ostringstream csv;
  csv << "grid,residual,order\n";
  std::vector<double> log_h, log_e;
  double prev = 0.0, prev_h = 0.0;
  bool all_exact = true;
  for (std::size_t k = 0; k < res.size(); ++k) {
    cfg.grid.n_s = res[k].first;
    cfg.grid.n_theta = res[k].second;
    const GridSpec g = build_grid(cfg.surface, cfg.params, cfg.grid);
    const Immersion imm = sample_catalog(cfg.surface, cfg.params, g);
    const double e = convergence_metric(o.metric, imm);
    const double h = std::hypot(g.ds(), g.dtheta());
    csv << res[k].first << "x" << res[k].second << "," << format_real(e) << ",";
    all_exact = all_exact && e <= roundoff_floor;
    if (k > 0) {
      if (e <= roundoff_floor && prev <= roundoff_floor)
        csv << "exact";
      else
        csv << format_real(std::log(prev / e) / std::log(prev_h / h));
    }
    csv << "\n";
    log_h.push_back(std::log(h));
    log_e.push_back(std::log(std::max(e, std::numeric_limits<double>::min())));
    prev = e;
    prev_h = h;
  }
  // Least-squares slope of log residual against log spacing.
  const double n = static_cast<double>(log_h.size());
  double mh = 0.0, me = 0.0;
  for (std::size_t k = 0; k < log_h.size(); ++k) {
    mh += log_h[k] / n;
    me += log_e[k] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < log_h.size(); ++k) {
    sxy += (log_h[k] - mh) * (log_e[k] - me);
    sxx += (log_h[k] - mh) * (log_h[k] - mh);
  }
  const double order = sxy / sxx;
  if (o.out.empty())
    out << csv.str();
  else
    write_atomic(o.out, csv.str());
  if (all_exact) {
    out << "observed order: exact (residuals at round-off)\n";
    return exit_ok;
  }
  out << "observed order: " << std::setprecision(6) << order << " (required " << o.min_order << ")\n";
  if (!(order >= o.min_order)) {
    err << "convergence order " << order << " below " << o.min_order << "\n";
    return exit_check_failed;
  }
  return exit_ok;
}

int report_cmd(const std::string& dir, bool as_csv, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    err << "error: --in: not a directory: " << dir << "\n";
    return exit_usage;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "error: --in: no reports in " << dir << "\n";
    return exit_usage;
  }
  bool failed = false;
  if (as_csv) out << csv_header() << "\n";
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      err << "error: " << f.string() << ": " << e.what() << "\n";
      return exit_usage;
    }
    if (!j.contains("check") || !j.contains("status")) continue;
    const std::string status = j["status"];
    failed = failed || status == "fail";
    const auto& g = j["grid"];
    const std::string grid = std::to_string(g["n_s"].get<std::size_t>()) + "x" + std::to_string(g["n_theta"].get<std::size_t>());
    const std::string margin = j["margin"].is_number() ? format_real(j["margin"].get<double>()) : "";
    if (as_csv) {
      out << j["surface"].get<std::string>() << "," << j["check"].get<std::string>() << ","
          << (j["passed"].get<bool>() ? "true" : "false") << "," << (j["not_applicable"].get<bool>() ? "true" : "false")
          << "," << margin << "," << format_real(j["tolerance"].get<double>()) << "," << grid << "\n";
    } else {
      out << std::left << std::setw(14) << j["surface"].get<std::string>() << std::setw(16)
          << j["check"].get<std::string>() << std::setw(16) << status << std::setw(10) << grid << margin << "\n";
    }
  }
  return failed ? exit_check_failed : exit_ok;
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text) {
  const auto x = text.find('x');
  auto bad = [&] { return Error(ErrorKind::invalid_parameter, "--grid expects NSxNTHETA, got '" + text + "'"); };
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) throw bad();
  const std::string a = text.substr(0, x), b = text.substr(x + 1);
  if (!std::all_of(a.begin(), a.end(), ::isdigit) || !std::all_of(b.begin(), b.end(), ::isdigit)) throw bad();
  return {std::stoul(a), std::stoul(b)};
}

void apply_config_file(RunConfig& config, const json& file) {
  if (!file.is_object()) throw Error(ErrorKind::invalid_parameter, "config: top level must be an object");
  for (const auto& [key, value] : file.items()) {
    try {
      if (key == "surface") {
        config.surface = value.get<std::string>();
      } else if (key == "params") {
        if (!value.is_object()) throw Error(ErrorKind::invalid_parameter, "config key 'params' must be an object");
        config.params = value;
      } else if (key == "grid") {
        if (value.is_string()) {
          std::tie(config.grid.n_s, config.grid.n_theta) = parse_resolution(value.get<std::string>());
        } else {
          if (value.contains("b")) config.grid.b = value.at("b").get<double>();
          if (value.contains("a")) config.grid.a = value.at("a").get<double>();
          if (value.contains("n_s")) config.grid.n_s = value.at("n_s").get<std::size_t>();
          if (value.contains("n_theta")) config.grid.n_theta = value.at("n_theta").get<std::size_t>();
        }
      } else if (key == "checks") {
        config.checks = value.get<std::vector<std::string>>();
      } else if (key == "tolerance") {
        config.tolerance = value.get<double>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "output") {
        config.output = value.get<std::string>();
      } else if (key == "formats") {
        const auto f = value.get<std::vector<std::string>>();
        config.formats = std::set<std::string>(f.begin(), f.end());
      } else {
        throw Error(ErrorKind::invalid_parameter, "config: unknown key '" + key + "'");
      }
    } catch (const json::exception&) {
      throw Error(ErrorKind::invalid_parameter, "config key '" + key + "' has the wrong type");
    }
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& known = check_names();
  std::vector<std::string> checks = config.checks.empty() ? known : config.checks;
  for (const auto& c : checks)
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      err << "error: --checks: unknown check: " << c << "\n";
      return exit_usage;
    }
  for (const auto& f : config.formats)
    if (f != "json" && f != "csv" && f != "mesh") {
      err << "error: --format: unknown format: " << f << "\n";
      return exit_usage;
    }
  if (config.surface.empty()) {
    err << "error: --surface is required\n";
    return exit_usage;
  }

  Immersion imm = [&] {
    const json params = with_defaults(config.surface, config.params);
    const GridSpec g = build_grid(config.surface, params, config.grid);
    return sample_catalog(config.surface, params, g);
  }();

  std::error_code ec;
  std::filesystem::create_directories(config.output, ec);
  if (ec) {
    err << "error: --out: cannot create " << config.output.string() << ": " << ec.message() << "\n";
    return exit_usage;
  }

  CheckOptions opts;
  opts.tolerance = config.tolerance;
  opts.seed = config.seed;
  bool failed = false;
  std::ostringstream summary;
  summary << csv_header() << "\n";
  for (const auto& c : checks) {
    const CheckReport r = run_check(c, imm, opts);
    out << to_text(r);
    failed = failed || !r.passed();
    if (config.formats.count("json"))
      write_atomic(config.output / (file_stem(config.surface, c) + ".json"), to_json(r).dump(2) + "\n");
    summary << to_csv_row(r) << "\n";
  }
  if (config.formats.count("csv")) write_atomic(config.output / "summary.csv", summary.str());
  if (config.formats.count("mesh")) {
    write_atomic(config.output / (config.surface + ".obj"), obj_mesh(imm.f));
    write_atomic(config.output / (config.surface + "-u.csv"), fields_csv({{"u", &imm.u}}));
  }
  return failed ? exit_check_failed : exit_ok;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"annulab: conformal annuli, Coulomb frames and Wente estimates"};
  app.require_subcommand(1);

  bool catalog_json = false;
  auto* cat = app.add_subcommand("catalog", "list catalog surfaces");
  cat->add_flag("--json", catalog_json, "machine-readable listing");

  RunConfig cfg;
  std::vector<std::string> params, checks, formats;
  std::string grid, domain, config_path, output;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run theorem checks on a surface");
  verify->add_option("--surface", cfg.surface, "catalog surface name");
  verify->add_option("--param", params, "surface parameter key=value (repeatable)");
  verify->add_option("--grid", grid, "resolution NSxNTHETA (default 128x256)");
  verify->add_option("--domain", domain, "radii b,a (default: per surface)");
  verify->add_option("--checks", checks, "comma-separated checks")->delimiter(',');
  verify->add_option("--tolerance", tolerance, "override the grid tolerance");
  verify->add_option("--seed", seed, "seed for random gauges");
  verify->add_option("--out", output, "output directory (default annulab-out)");
  verify->add_option("--format", formats, "json,csv,mesh")->delimiter(',');
  verify->add_option("--config", config_path, "JSON config file; flags override it");

  WenteOptions wo;
  auto* wente = app.add_subcommand("wente", "audit the Wente constants on random pairs");
  wente->add_option("--n", wo.n, "number of samples");
  wente->add_option("--seed", wo.seed, "first seed");
  wente->add_option("--grid", wo.grid, "resolution NSxNTHETA");
  wente->add_option("--domain", wo.domain, "radii b,a");
  wente->add_option("--tolerance", wo.tolerance, "override the grid tolerance");
  wente->add_option("--out", wo.out, "CSV file (default stdout)");

  ConvergeOptions co;
  auto* converge = app.add_subcommand("converge", "observed convergence order under grid doubling");
  converge->add_option("--surface", co.surface, "catalog surface name")->required();
  converge->add_option("--param", co.params, "surface parameter key=value (repeatable)");
  converge->add_option("--metric", co.metric, "quantity that vanishes under refinement")->required();
  converge->add_option("--grids", co.grids, "comma-separated resolutions, each doubling")->delimiter(',');
  converge->add_option("--domain", co.domain, "radii b,a");
  converge->add_option("--min-order", co.min_order, "required order");
  converge->add_option("--out", co.out, "CSV file (default stdout)");

  std::string report_dir;
  bool report_csv = false;
  auto* report = app.add_subcommand("report", "summarize JSON reports in a directory");
  report->add_option("--in", report_dir, "directory written by verify")->required();
  report->add_flag("--csv", report_csv, "CSV instead of a table");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  kernels::configure_threads_from_env();
  try {
    if (*cat) return catalog_cmd(catalog_json, out);
    if (*wente) return wente_cmd(wo, out, err);
    if (*converge) return converge_cmd(co, out, err);
    if (*report) return report_cmd(report_dir, report_csv, out, err);

    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        err << "error: --config: cannot read " << config_path << "\n";
        return exit_usage;
      }
      json file;
      try {
        file = json::parse(in);
      } catch (const json::parse_error& e) {
        err << "error: --config: " << e.what() << "\n";
        return exit_usage;
      }
      const std::string surface_flag = cfg.surface;
      apply_config_file(cfg, file);
      if (!surface_flag.empty()) cfg.surface = surface_flag;
    }
    apply_params(cfg, params);
    if (!grid.empty()) std::tie(cfg.grid.n_s, cfg.grid.n_theta) = parse_resolution(grid);
    if (!domain.empty()) std::tie(cfg.grid.b, cfg.grid.a) = parse_domain(domain);
    if (!checks.empty()) cfg.checks = checks;
    if (tolerance) cfg.tolerance = tolerance;
    if (verify->count("--seed")) cfg.seed = seed;
    if (!output.empty()) cfg.output = output;
    if (!formats.empty()) cfg.formats = std::set<std::string>(formats.begin(), formats.end());
    return run(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace annulab
