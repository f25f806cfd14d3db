#ifndef BELLTOMO_TOOLS_CLI_COMMANDS_HPP
#define BELLTOMO_TOOLS_CLI_COMMANDS_HPP

// Subcommands of the belltomo executable. Everything runs through run_cli so
// the tests can drive the tool in-process.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "belltomo/belltomo.hpp"

namespace belltomo::cli {

using Json = nlohmann::ordered_json;

inline std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct RunConfig {
  std::string command;
  std::string scheme = "spin";
  int n = 2;
  std::string ineq = "mermin";
  std::optional<double> bin;
  double box = 2.0;
  int grid = 0;
  std::size_t coarse_points = 20000;
  bool random_coarse = false;
  std::uint64_t seed = 1;
  std::string format;
  std::string out;
  std::string filter = "all";
  double xmin = -3.0;
  double xmax = 3.0;
  int steps = 601;
  std::string input;
  std::string state;
  double j = 0.5;
  int nodes = 16;
  std::vector<std::string> settings;
  bool from_tomogram = false;

  // Canonical argument list; running `belltomo <argv...>` reproduces the artifact.
  std::vector<std::string> argv() const {
    std::vector<std::string> a{command};
    auto add = [&a](const std::string& flag, const std::string& value) {
      a.push_back(flag);
      a.push_back(value);
    };
    if (command == "inequalities") {
      add("--n", std::to_string(n));
      add("--filter", filter);
    } else if (command == "vertices") {
      add("--n", std::to_string(n));
    } else if (command == "violate") {
      add("--scheme", scheme);
      add("--n", std::to_string(n));
      add("--ineq", ineq);
      if (bin) add("--bin", shortest(*bin));
      add("--box", shortest(box));
      add("--grid", std::to_string(grid));
      add("--coarse-points", std::to_string(coarse_points));
      if (random_coarse) a.push_back("--random-coarse");
      add("--seed", std::to_string(seed));
    } else if (command == "correlate") {
      add("--scheme", scheme);
      add("--n", std::to_string(n));
      if (bin) add("--bin", shortest(*bin));
      for (const auto& s : settings) add("--setting", s);
      if (from_tomogram) a.push_back("--from-tomogram");
    } else if (command == "scan-fn") {
      add("--n", std::to_string(n));
      add("--xmin", shortest(xmin));
      add("--xmax", shortest(xmax));
      add("--steps", std::to_string(steps));
    } else if (command == "reconstruct") {
      if (!input.empty()) add("--input", input);
      if (!state.empty()) {
        add("--state", state);
        add("--j", shortest(j));
      }
      add("--nodes", std::to_string(nodes));
    }
    add("--format", format);
    if (!out.empty()) add("--out", out);
    return a;
  }

  Json to_json() const {
    Json j_out;
    j_out["command"] = command;
    j_out["argv"] = argv();
    return j_out;
  }
};

// ---------------------------------------------------------------------------
// Argument helpers
// ---------------------------------------------------------------------------

inline std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": not a number: '" + cell + "'");
    }
  }
  return out;
}

inline PartySetting parse_setting(Scheme scheme, const std::string& text) {
  const std::vector<double> v = parse_numbers(text, "--setting");
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidInput("--setting: values must be finite");
  switch (scheme) {
    case Scheme::spin:
      if (v.size() == 2) return EulerAngles{v[0], v[1], 0.0};
      if (v.size() == 3) return EulerAngles{v[0], v[1], v[2]};
      throw InvalidInput("--setting: spin expects phi,psi[,theta]");
    case Scheme::optical:
      if (v.size() == 1) return OpticalPhase{v[0]};
      throw InvalidInput("--setting: optical expects theta");
    case Scheme::photon_number:
      if (v.size() == 1) return Displacement{v[0], 0.0};
      if (v.size() == 2) return Displacement{v[0], v[1]};
      throw InvalidInput("--setting: pn expects re,im");
  }
  throw InvalidInput("--setting: unknown scheme");
}

inline SchemeConfig scheme_config(Scheme scheme, std::optional<double> bin) {
  switch (scheme) {
    case Scheme::spin:
      if (bin) throw InvalidInput("--bin has no meaning for the spin scheme");
      return SchemeConfig::spin();
    case Scheme::optical:
      if (bin && !std::isfinite(*bin)) throw InvalidInput("--bin: threshold must be finite");
      return SchemeConfig::optical(bin.value_or(0.0));
    case Scheme::photon_number: {
      const double m = bin.value_or(0.0);
      if (m < 0 || m != std::floor(m)) throw InvalidInput("--bin: pn cutoff must be a nonnegative integer");
      return SchemeConfig::photon_number(static_cast<int>(m));
    }
  }
  throw InvalidInput("unknown scheme");
}

struct Selected {
  BellExpression expr;
  std::optional<BellInequality> ineq;
};

/// mermin | index:<k> | c:<string of + and ->
inline Selected select_inequality(const std::string& sel, int n) {
  if (sel == "mermin") return {mermin_inequality(n), std::nullopt};
  if (sel.rfind("index:", 0) == 0) {
    const std::string digits = sel.substr(6);
    std::uint64_t k = 0;
    const auto r = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || r.ec != std::errc() || r.ptr != digits.data() + digits.size())
      throw InvalidInput("--ineq: bad index '" + digits + "'");
    BellInequality b = inequality_from_index(k, n);
    return {to_expression(b, sel), b};
  }
  if (sel.rfind("c:", 0) == 0) {
    std::vector<int> c;
    for (char ch : sel.substr(2)) {
      if (ch == '+') c.push_back(1);
      else if (ch == '-') c.push_back(-1);
      else throw InvalidInput("--ineq: c string may only contain + and -");
    }
    BellInequality b = inequality_from_c(c, n);
    return {to_expression(b, sel), b};
  }
  throw InvalidInput("--ineq must be mermin, index:<k> or c:<+-...>");
}

inline Json setting_json(const PartySetting& s) {
  Json j;
  if (const auto* e = std::get_if<EulerAngles>(&s)) {
    j["phi"] = e->phi;
    j["psi"] = e->psi;
    j["theta"] = e->theta;
  } else if (const auto* o = std::get_if<OpticalPhase>(&s)) {
    j["theta"] = o->theta;
  } else {
    const auto& a = std::get<Displacement>(s);
    j["re"] = a.real();
    j["im"] = a.imag();
  }
  return j;
}

inline Json inequality_json(const BellInequality& b) {
  Json j;
  j["index"] = b.index;
  j["c"] = b.c;
  j["a"] = b.a;
  j["bound"] = b.bound;
  j["trivial"] = b.trivial;
  return j;
}

inline std::string join(const auto& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

inline Json envelope(const RunConfig& cfg, Json result, Json residuals) {
  Json j;
  j["config"] = cfg.to_json();
  j["result"] = std::move(result);
  j["residuals"] = std::move(residuals);
  j["version"] = kVersion;
  return j;
}

// Appended after CSV data so the header stays on the first line.
inline void csv_trailer(std::ostream& os, const RunConfig& cfg) {
  os << "# config " << cfg.to_json().dump() << '\n';
  os << "# version " << kVersion << '\n';
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : stream_(&fallback) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open output file '" + cfg.out + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw Error("write to output failed");
  }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline void require_format(const RunConfig& cfg, bool csv_ok) {
  if (cfg.format != "json" && cfg.format != "csv") throw InvalidInput("--format must be json or csv");
  if (cfg.format == "csv" && !csv_ok) throw InvalidInput("--format csv is not available for " + cfg.command);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline void cmd_inequalities(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, true);
  if (cfg.n > kMaxEnumeratedParties) throw CapacityError("inequalities: n > 4 is not supported");
  std::vector<BellInequality> rows;
  Json extra;
  if (cfg.filter == "mermin") {
    rows.push_back(mermin_bell_inequality(cfg.n));
    const BellExpression m = mermin_inequality(cfg.n);
    extra["coefficients"] = m.coefficients;
    extra["bound"] = m.bound;
    extra["scale"] = m.scale;
  } else if (cfg.filter == "all" || cfg.filter == "trivial" || cfg.filter == "nontrivial") {
    for (BellInequality& b : all_inequalities(cfg.n)) {
      if (cfg.filter == "trivial" && !b.trivial) continue;
      if (cfg.filter == "nontrivial" && b.trivial) continue;
      rows.push_back(std::move(b));
    }
  } else {
    throw InvalidInput("--filter must be all, trivial, nontrivial or mermin");
  }
  Output out(cfg, os);
  if (cfg.format == "csv") {
    out.stream() << "index,trivial,bound,c,a\n";
    for (const auto& b : rows)
      out.stream() << b.index << ',' << (b.trivial ? 1 : 0) << ',' << b.bound << ',' << join(b.c) << ','
                   << join(b.a) << '\n';
    csv_trailer(out.stream(), cfg);
  } else {
    Json list = Json::array();
    for (const auto& b : rows) list.push_back(inequality_json(b));
    Json result;
    result["count"] = rows.size();
    result["inequalities"] = std::move(list);
    if (!extra.is_null()) result["mermin"] = std::move(extra);
    out.stream() << envelope(cfg, std::move(result), Json::object()).dump(2) << '\n';
  }
  out.finish();
}

inline void cmd_vertices(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, true);
  if (cfg.n < 1) throw InvalidInput("vertices: n must be >= 1");
  if (cfg.n > kMaxEnumeratedParties) throw CapacityError("vertices: n > 4 is not supported");
  const auto vertices = classical_vertices(cfg.n);
  const auto ineqs = all_inequalities(cfg.n);
  Output out(cfg, os);
  Json list = Json::array();
  double worst = -std::numeric_limits<double>::infinity();
  if (cfg.format == "csv") out.stream() << "vertex,e,tight_count,tight_nontrivial\n";
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const std::vector<double> e(vertices[v].begin(), vertices[v].end());
    const CorrelationVector cv(cfg.n, e);
    std::vector<std::uint64_t> tight;
    std::size_t nontrivial = 0;
    for (const auto& b : ineqs) {
      const double m = margin(cv, b);
      worst = std::max(worst, m);
      if (m == 0.0) {
        tight.push_back(b.index);
        if (!b.trivial) ++nontrivial;
      }
    }
    if (cfg.format == "csv") {
      out.stream() << v << ',' << join(vertices[v]) << ',' << tight.size() << ',' << nontrivial << '\n';
    } else {
      Json j;
      j["e"] = vertices[v];
      j["tight"] = tight;
      j["tight_nontrivial"] = nontrivial;
      list.push_back(std::move(j));
    }
  }
  if (cfg.format == "csv") {
    csv_trailer(out.stream(), cfg);
  } else {
    Json result;
    result["count"] = vertices.size();
    result["vertices"] = std::move(list);
    Json residuals;
    residuals["max_margin"] = worst;
    out.stream() << envelope(cfg, std::move(result), std::move(residuals)).dump(2) << '\n';
  }
  out.finish();
}

inline void cmd_violate(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, false);
  const Scheme scheme = parse_scheme(cfg.scheme);
  const SchemeConfig sc = scheme_config(scheme, cfg.bin);
  const Selected sel = select_inequality(cfg.ineq, cfg.n);
  SearchSpace space = default_search_space(scheme, cfg.n, cfg.box);
  space.grid = cfg.grid;
  space.seed = cfg.seed;
  space.max_coarse_points = cfg.coarse_points;
  space.random_coarse = cfg.random_coarse;
  const SearchResult r = maximize_bell(sc, cfg.n, sel.expr, space);

  const SettingPairs settings = settings_from_params(scheme, cfg.n, r.best);
  const double fresh = std::abs(bell_value(sc, sel.expr, settings));
  Json parties = Json::array();
  for (const auto& pair : settings) parties.push_back(Json::array({setting_json(pair[0]), setting_json(pair[1])}));

  Json result;
  result["value"] = r.value;
  result["bound"] = sel.expr.bound;
  result["margin"] = r.value - sel.expr.bound;
  result["violated"] = r.value > sel.expr.bound;
  result["coefficients"] = sel.expr.coefficients;
  result["settings"] = std::move(parties);
  result["parameters"] = r.best;
  result["evaluations"] = r.evaluations;
  result["failed_evaluations"] = r.failed;
  result["converged"] = r.converged;
  Json residuals;
  residuals["recheck"] = std::abs(fresh - r.value);
  residuals["algebraic_bound"] = sel.expr.abs_sum();
  Output out(cfg, os);
  out.stream() << envelope(cfg, std::move(result), std::move(residuals)).dump(2) << '\n';
  out.finish();
}

inline void cmd_correlate(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, false);
  const Scheme scheme = parse_scheme(cfg.scheme);
  const SchemeConfig sc = scheme_config(scheme, cfg.bin);
  if (cfg.settings.size() != static_cast<std::size_t>(cfg.n))
    throw InvalidInput("correlate: give one --setting per party");
  std::vector<PartySetting> settings;
  for (const auto& s : cfg.settings) settings.push_back(parse_setting(scheme, s));
  const GhzState state(cfg.n);
  const double fast = correlation(sc, state, settings);
  Json result, residuals;
  if (cfg.from_tomogram) {
    const Estimate e = correlation_from_tomogram(sc, state, settings);
    result["correlation"] = e.value;
    result["path"] = "tomogram";
    result["evaluations"] = e.evaluations;
    residuals["error_bound"] = e.error;
    residuals["fast_path_difference"] = std::abs(e.value - fast);
  } else {
    result["correlation"] = fast;
    result["path"] = "closed-form";
  }
  Json echo = Json::array();
  for (const auto& s : settings) echo.push_back(setting_json(s));
  result["settings"] = std::move(echo);
  Output out(cfg, os);
  out.stream() << envelope(cfg, std::move(result), std::move(residuals)).dump(2) << '\n';
  out.finish();
}

inline void cmd_scan_fn(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, true);
  const FnScan scan = scan_fn(cfg.n, cfg.xmin, cfg.xmax, cfg.steps);
  Output out(cfg, os);
  if (cfg.format == "csv") {
    std::ostream& s = out.stream();
    s << "x,f_n\n";
    for (const auto& row : scan.rows) s << shortest(row[0]) << ',' << shortest(row[1]) << '\n';
    csv_trailer(s, cfg);
  } else {
    Json rows = Json::array();
    for (const auto& row : scan.rows) rows.push_back(Json::array({row[0], row[1]}));
    Json result;
    result["rows"] = std::move(rows);
    result["max"] = scan.max;
    result["argmax"] = scan.argmax;
    out.stream() << envelope(cfg, std::move(result), Json::object()).dump(2) << '\n';
  }
  out.finish();
  // summary line; kept out of the CSV when that goes to stdout
  if (out.to_file()) {
    os << "max " << shortest(scan.max) << " at x = " << shortest(scan.argmax) << '\n';
  } else if (cfg.format == "csv") {
    os << "# max " << shortest(scan.max) << " at x = " << shortest(scan.argmax) << '\n';
  }
}

inline Eigen::MatrixXcd builtin_state(const std::string& name, HalfInteger j) {
  const int d = j.twice + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  if (name == "up") {
    rho(0, 0) = 1;
  } else if (name == "down") {
    rho(d - 1, d - 1) = 1;
  } else if (name == "mixed") {
    rho = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  } else if (name == "plus") {
    rho = Eigen::MatrixXcd::Constant(d, d, 1.0 / d);
  } else {
    throw InvalidInput("--state must be up, down, mixed or plus");
  }
  return rho;
}

inline Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void cmd_reconstruct(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, false);
  if (cfg.input.empty() == cfg.state.empty()) throw InvalidInput("reconstruct: give exactly one of --input or --state");
  TomogramFn fn;
  HalfInteger j{};
  QuadratureSpec spec = QuadratureSpec::uniform(cfg.nodes);
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw Error("cannot open input file '" + cfg.input + "'");
    const SampledTomogram sampled = SampledTomogram::parse(in);
    j = sampled.j();
    spec = sampled.spec();
    fn = sampled.function();
  } else {
    const double twice = 2.0 * cfg.j;
    if (!(cfg.j > 0) || twice != std::floor(twice)) throw InvalidInput("--j must be a positive half-integer");
    j = HalfInteger{static_cast<int>(twice)};
    fn = tomogram_of(builtin_state(cfg.state, j), j);
  }
  // sampled files cannot be refined, so only built-in states get the refinement check
  const Reconstruction r = cfg.input.empty() ? reconstruct_spin(fn, j, spec) : reconstruct_spin_fixed(fn, j, spec);
  if (!cfg.input.empty() && r.hermiticity_residual > kReconstructionTolerance)
    throw AccuracyError("reconstruct: Hermiticity residual too large", r.hermiticity_residual);

  Json result;
  result["j"] = j.value();
  result["nodes"] = {spec.phi_nodes, spec.psi_nodes, spec.theta_nodes};
  result["rho_re"] = matrix_json(r.rho.real());
  result["rho_im"] = matrix_json(r.rho.imag());
  Json residuals;
  residuals["hermiticity"] = r.hermiticity_residual;
  residuals["trace"] = r.trace_residual;
  residuals["min_eigenvalue"] = r.min_eigenvalue;
  if (cfg.input.empty()) residuals["refinement"] = r.refinement_residual;
  Output out(cfg, os);
  out.stream() << envelope(cfg, std::move(result), std::move(residuals)).dump(2) << '\n';
  out.finish();
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell inequalities and tomographic correlations of GHZ states", "belltomo"};
  app.footer(
      "Angles are in radians. A photon-number displacement is written re,im.\n"
      "A spin setting is phi,psi[,theta]; an optical setting is theta.\n"
      "BELLTOMO_THREADS caps the number of worker threads.");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  std::string format;
  auto common = [&](CLI::App* sub, bool csv_default) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "write the artifact to this file");
    sub->callback([&, sub, csv_default] {
      cfg.command = sub->get_name();
      cfg.format = format.empty() ? (csv_default ? "csv" : "json") : format;
    });
  };
  auto party_count = [&](CLI::App* sub, int max) {
    sub->add_option("--n", cfg.n, "number of parties")->check(CLI::Range(1, max));
  };
  auto bin_option = [&](CLI::App* sub) {
    sub->add_option_function<double>("--bin", [&](double v) { cfg.bin = v; },
                                     "optical threshold x or photon-number cutoff m");
  };
  const auto scheme_check = CLI::IsMember({"spin", "optical", "pn"});

  auto* ineq = app.add_subcommand("inequalities", "list Bell inequalities for n parties");
  party_count(ineq, 64);
  ineq->add_option("--filter", cfg.filter, "all, trivial, nontrivial or mermin");
  common(ineq, false);

  auto* vert = app.add_subcommand("vertices", "classical vertices and the inequalities tight at each");
  party_count(vert, 64);
  common(vert, false);

  auto* viol = app.add_subcommand("violate", "search for the largest value of a Bell expression");
  viol->add_option("--scheme", cfg.scheme, "spin, optical or pn")->check(scheme_check);
  party_count(viol, 16);
  viol->add_option("--ineq", cfg.ineq, "mermin, index:<k> or c:<+-...>");
  bin_option(viol);
  viol->add_option("--box", cfg.box, "half-width of the re/im box for pn displacements");
  viol->add_option("--grid", cfg.grid, "coarse points per axis, 0 picks automatically");
  viol->add_option("--coarse-points", cfg.coarse_points, "coarse phase budget");
  viol->add_option("--seed", cfg.seed, "seed for random coarse sampling");
  viol->add_flag("--random-coarse", cfg.random_coarse, "sample the coarse phase at random even when a grid fits");
  common(viol, false);

  auto* corr = app.add_subcommand("correlate", "correlation function at given settings");
  corr->add_option("--scheme", cfg.scheme, "spin, optical or pn")->check(scheme_check);
  party_count(corr, 16);
  bin_option(corr);
  corr->add_option("--setting", cfg.settings, "one per party, in party order")->take_all();
  corr->add_flag("--from-tomogram", cfg.from_tomogram, "sum or integrate the tomogram instead of closed forms");
  common(corr, false);

  auto* scan = app.add_subcommand("scan-fn", "tabulate the optical f_n(x)");
  scan->add_option("--n", cfg.n, "number of parties")->check(CLI::Range(2, 64));
  scan->add_option("--xmin", cfg.xmin);
  scan->add_option("--xmax", cfg.xmax);
  scan->add_option("--steps", cfg.steps);
  common(scan, true);

  auto* rec = app.add_subcommand("reconstruct", "reconstruct a spin density matrix from its tomogram");
  rec->add_option("--input", cfg.input, "CSV with columns s,phi,psi,theta,p");
  rec->add_option("--state", cfg.state, "built-in state: up, down, mixed or plus");
  rec->add_option("--j", cfg.j, "spin of the built-in state");
  rec->add_option("--nodes", cfg.nodes, "quadrature nodes per Euler angle")->check(CLI::Range(2, 512));
  common(rec, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.command == "inequalities") cmd_inequalities(cfg, out);
    else if (cfg.command == "vertices") cmd_vertices(cfg, out);
    else if (cfg.command == "violate") cmd_violate(cfg, out);
    else if (cfg.command == "correlate") cmd_correlate(cfg, out);
    else if (cfg.command == "scan-fn") cmd_scan_fn(cfg, out);
    else if (cfg.command == "reconstruct") cmd_reconstruct(cfg, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace belltomo::cli

#endif  // BELLTOMO_TOOLS_CLI_COMMANDS_HPP
