// Command-line front end for the Bertrand curve library.
//
//   bertrand_cli <command> --curve SPEC [--samples N] [--out DIR] [--tol X]
//                [--format csv,obj,report] [--config FILE] [command options]
//
// Exit codes: 0 success, 2 configuration, 3 geometry, 4 mate condition, 5 I/O.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bertrand/bertrand.hpp"
#include "bertrand/direction_curves.hpp"
#include "bertrand/frenet.hpp"
#include "bertrand/io.hpp"
#include "bertrand/spherical.hpp"
#include "bertrand/surface.hpp"

namespace fs = std::filesystem;
using namespace bertrand;

namespace {

const std::vector<std::string> kCommonKeys = {"curve", "samples", "out", "tol", "format", "order"};

const std::map<std::string, std::vector<std::string>> kCommandKeys = {
    {"analyze", {}},
    {"mate", {"field", "theta", "lambda0"}},
    {"fbertrand", {"f", "theta"}},
    {"surface", {"branch", "t0", "t1", "nt", "ns", "rule", "margin"}},
    {"spherical", {"theta0"}},
    {"donor", {"strict"}},
    {"sabban", {"a", "theta"}},
};

struct Job {
  std::string command;
  std::map<std::string, std::string> values;

  bool has(const std::string& k) const { return values.count(k) > 0; }

  const std::string& text(const std::string& k) const {
    const auto it = values.find(k);
    if (it == values.end()) throw Error(ErrorCode::InvalidSpec, "missing required key '" + k + "'");
    return it->second;
  }

  double number(const std::string& k) const {
    const std::string& s = text(k);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidSpec, "'" + k + "' must be a number, got '" + s + "'");
    }
    return v;
  }
  double number(const std::string& k, double fallback) const { return has(k) ? number(k) : fallback; }

  int integer(const std::string& k, int fallback) const {
    if (!has(k)) return fallback;
    const double v = number(k);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::InvalidSpec, "'" + k + "' must be an integer");
    return static_cast<int>(v);
  }

  bool flag(const std::string& k) const {
    if (!has(k)) return false;
    const std::string& s = text(k);
    if (s == "true" || s == "1" || s.empty()) return true;
    if (s == "false" || s == "0") return false;
    throw Error(ErrorCode::InvalidSpec, "'" + k + "' must be true or false");
  }
};

struct Output {
  fs::path dir;
  std::set<std::string> formats;

  bool wants(const std::string& f) const { return formats.count(f) > 0; }

  void write(const std::string& name, const std::string& content) const {
    io::write_file((dir / name).string(), content);
  }
};

template <class F>
std::string render(F&& f) {
  std::ostringstream ss;
  f(ss);
  return ss.str();
}

Curve load_curve(const Job& job) {
  const int samples = job.integer("samples", kDefaultSampleCount);
  const int order = job.integer("order", 5);
  return build_curve(io::resolve_curve(job.text("curve"), samples, order));
}

double tolerance(const Job& job, const Curve& c) { return job.number("tol", default_tolerance(c)); }

// Mate positions shifted so the mate starts at the base point offset along the normal.
std::vector<Vec3> anchored(const Curve& base, const Curve& mate) {
  const Vec3 shift = base.position(base.domain().lo);
  const auto grid = base.grid();
  std::vector<Vec3> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = mate.position(grid[i]) + shift;
  return out;
}

int run_analyze(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const double tol = tolerance(job, c);
  const FrenetData d = frenet_apparatus(c);
  if (out.wants("csv")) out.write("analyze.csv", render([&](auto& s) { io::write_frenet_csv(s, d); }));
  if (out.wants("report")) {
    const CurveClass cls = classify(d, tol);
    io::Report r;
    r.add("command", std::string("analyze"))
        .add("samples", static_cast<int>(d.size()))
        .add("s_min", d.s.front())
        .add("s_max", d.s.back())
        .add("kappa_min", *std::min_element(d.kappa.begin(), d.kappa.end()))
        .add("kappa_max", *std::max_element(d.kappa.begin(), d.kappa.end()))
        .add("tau_min", *std::min_element(d.tau.begin(), d.tau.end()))
        .add("tau_max", *std::max_element(d.tau.begin(), d.tau.end()))
        .add("frame_defect", frame_defect(d))
        .add("is_planar", cls.is_planar)
        .add("is_general_helix", cls.is_general_helix)
        .add("is_salkowski", cls.is_salkowski)
        .add("is_anti_salkowski", cls.is_anti_salkowski);
    io::add_fit(r, "bertrand.", fit_bertrand(d, BertrandKind::bertrand, tol));
    io::add_fit(r, "b_bertrand.", fit_bertrand(d, BertrandKind::b_bertrand, tol));
    out.write("analyze_report.txt", render([&](auto& s) { r.write(s); }));
  }
  return 0;
}

FrameField parse_field(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidSpec, "field must be u,v,w numbers");
    }
  }
  if (c.size() != 3) throw Error(ErrorCode::InvalidSpec, "field must have three components u,v,w");
  return FrameField::constant(c[0], c[1], c[2]);
}

int run_mate(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const FrameField field = parse_field(job.has("field") ? job.text("field") : "1,0,0");
  std::optional<double> theta;
  if (job.has("theta")) theta = job.number("theta");
  const double lambda0 = job.number("lambda0", 1.0);
  const MateResult m = v_bertrand_mate(c, field, theta, lambda0, tolerance(job, c));
  if (out.wants("csv")) {
    const auto pts = anchored(c, m.mate);
    out.write("mate.csv", render([&](auto& s) { io::write_curve_csv(s, c.grid(), pts); }));
  }
  if (out.wants("report")) {
    io::Report r;
    r.add("command", std::string("mate")).add("theta", m.theta).add("lambda0", lambda0);
    io::add_mate(r, "mate.", m.report);
    out.write("mate_report.txt", render([&](auto& s) { r.write(s); }));
  }
  return m.report.accepted ? 0 : static_cast<int>(ErrorCategory::Condition);
}

int run_fbertrand(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const double f = job.number("f", 1.0);
  const double theta = job.number("theta");
  const FBertrandBranches br = f_bertrand_coefficients(f, theta);
  const auto mates = f_bertrand_mates(c, f, theta, tolerance(job, c));
  io::Report r;
  r.add("command", std::string("fbertrand"))
      .add("f", f)
      .add("theta", theta)
      .add("u_plus", br.u_plus)
      .add("u_minus", br.u_minus)
      .add("w1_plus", br.w1_plus)
      .add("w1_minus", br.w1_minus)
      .add("w2_plus", br.w2_plus)
      .add("w2_minus", br.w2_minus)
      .add("mates", static_cast<int>(mates.size()));
  for (const FMate& m : mates) {
    const std::string name(to_string(m.branch));
    r.add(name + ".u", m.u).add(name + ".w", m.w).add(name + ".satisfies_f", m.satisfies_f);
    io::add_mate(r, name + ".", m.report);
    if (out.wants("csv")) {
      const auto pts = anchored(c, m.mate);
      out.write("fbertrand_" + name + ".csv", render([&](auto& s) { io::write_curve_csv(s, c.grid(), pts); }));
    }
  }
  if (out.wants("report")) out.write("fbertrand_report.txt", render([&](auto& s) { r.write(s); }));
  return mates.empty() ? static_cast<int>(ErrorCategory::Condition) : 0;
}

int run_surface(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const double tol = tolerance(job, c);
  const BertrandFit fit = fit_bertrand(frenet_apparatus(c), BertrandKind::bertrand, tol);
  if (!fit.accepted) throw Error(ErrorCode::NotBertrand, "base curve is not Bertrand");
  SurfaceParams p;
  if (job.has("branch")) {
    const auto b = parse_branch(job.text("branch"));
    if (!b) throw Error(ErrorCode::InvalidSpec, "branch must be plus1, minus1, plus2 or minus2");
    p.branch = *b;
  }
  p.nt = job.integer("nt", p.nt);
  p.ns = job.integer("ns", p.ns);
  p.margin = job.number("margin", p.margin);
  if (job.has("t0") || job.has("t1")) p.t_range = Interval{job.number("t0"), job.number("t1")};
  if (job.has("rule")) {
    const std::string& rule = job.text("rule");
    if (rule == "fixed") p.rule = OffsetRule::fixed;
    else if (rule == "per_row") p.rule = OffsetRule::per_row;
    else throw Error(ErrorCode::InvalidSpec, "rule must be fixed or per_row");
  }
  const SurfaceGrid g = bertrand_surface(c, fit, p);
  if (out.wants("obj")) {
    const Mesh mesh = to_mesh(g);
    out.write("surface.obj", render([&](auto& s) { io::write_obj(s, mesh); }));
  }
  if (out.wants("csv")) out.write("surface.csv", render([&](auto& s) { io::write_surface_csv(s, g); }));
  if (out.wants("report")) {
    io::Report r;
    r.add("command", std::string("surface"))
        .add("branch", std::string(to_string(g.branch)))
        .add("rule", std::string(g.rule == OffsetRule::fixed ? "fixed" : "per_row"))
        .add("nt", static_cast<int>(g.nt()))
        .add("ns", static_cast<int>(g.ns()))
        .add("t_min", g.t_values.front())
        .add("t_max", g.t_values.back())
        .add("triangles", static_cast<int>((g.nt() - 1) * (g.ns() - 1) * 2));
    io::add_fit(r, "fit.", fit);
    out.write("surface_report.txt", render([&](auto& s) { r.write(s); }));
  }
  return 0;
}

int run_spherical(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const double tol = tolerance(job, c);
  const FrenetData d = frenet_apparatus(c);
  const SphereFit sf = fit_sphere(d, tol);
  io::Report r;
  r.add("command", std::string("spherical"));
  io::add_sphere(r, "sphere.", sf);
  if (job.has("theta0")) {
    const double th = job.number("theta0");
    const SphericalBertrand sb = bertrand_from_spherical(c, th, tol);
    const DualityReport dual = donor_duality_check(c, sb.K, th);
    r.add("theta0", th).add("speed_drift", sb.speed_drift);
    io::add_fit(r, "K.", sb.fit);
    r.add("duality.tangent_residual", dual.tangent_residual)
        .add("duality.normal_integral_residual", dual.normal_integral_residual)
        .add("duality.epsilon", dual.epsilon)
        .add("duality.accepted", dual.accepted);
    if (out.wants("csv")) {
      out.write("spherical_K.csv", render([&](auto& s) { io::write_curve_csv(s, sb.K.grid(), sb.K.positions()); }));
    }
  }
  if (out.wants("report")) out.write("spherical_report.txt", render([&](auto& s) { r.write(s); }));
  return 0;
}

int run_donor(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const DonorResult dr = principal_donor(c, job.flag("strict"));
  if (out.wants("csv")) {
    out.write("donor.csv", render([&](auto& s) { io::write_curve_csv(s, dr.donor.grid(), dr.donor.positions()); }));
  }
  if (out.wants("report")) {
    io::Report r;
    r.add("command", std::string("donor"))
        .add("domain_lo", dr.domain.lo)
        .add("domain_hi", dr.domain.hi)
        .add("crossings", static_cast<int>(dr.crossings.size()));
    for (std::size_t i = 0; i < dr.crossings.size(); ++i) r.add("crossing." + std::to_string(i), dr.crossings[i]);
    out.write("donor_report.txt", render([&](auto& s) { r.write(s); }));
  }
  return 0;
}

int run_sabban(const Job& job, const Output& out) {
  const Curve c = load_curve(job);
  const SabbanBertrand sb = sabban_bertrand(c, job.number("a", 1.0), job.number("theta"),
                                            job.number("tol", 1e-5));
  if (out.wants("csv")) {
    out.write("sabban.csv", render([&](auto& s) { io::write_curve_csv(s, sb.curve.grid(), sb.curve.positions()); }));
  }
  if (out.wants("report")) {
    io::Report r;
    r.add("command", std::string("sabban"));
    io::add_fit(r, "fit.", sb.fit);
    out.write("sabban_report.txt", render([&](auto& s) { r.write(s); }));
  }
  return sb.fit.accepted ? 0 : static_cast<int>(ErrorCategory::Condition);
}

// Config values first, then command-line flags on top.
Job assemble(const std::string& command, const std::string& config_path,
             const std::map<std::string, std::string>& flags) {
  Job job;
  job.command = command;
  const auto& allowed_params = kCommandKeys.at(command);
  auto allowed = [&](const std::string& k, bool common) {
    const auto& list = common ? kCommonKeys : allowed_params;
    return std::find(list.begin(), list.end(), k) != list.end();
  };
  if (!config_path.empty()) {
    const auto sections = io::read_config(config_path);
    for (const auto& [section, kv] : sections) {
      if (section != "" && section != "job" && section != "params") {
        throw Error(ErrorCode::InvalidSpec, "unknown config section [" + section + "]");
      }
      for (const auto& [k, v] : kv) {
        if (section == "params" ? !allowed(k, false) : !(allowed(k, true) || k == "command")) {
          throw Error(ErrorCode::InvalidSpec, "unknown config key '" + k + "' for " + command);
        }
        if (k == "command") {
          if (v != command) throw Error(ErrorCode::InvalidSpec, "config is for command '" + v + "'");
          continue;
        }
        job.values[k] = v;
      }
    }
  }
  for (const auto& [k, v] : flags) job.values[k] = v;
  return job;
}

Output prepare_output(const Job& job) {
  Output out;
  out.dir = job.has("out") ? fs::path(job.text("out")) : fs::path(".");
  std::error_code ec;
  fs::create_directories(out.dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + out.dir.string() + "'");
  const std::string formats = job.has("format") ? job.text("format") : "csv,obj,report";
  std::stringstream ss(formats);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "csv" && item != "obj" && item != "report") {
      throw Error(ErrorCode::InvalidSpec, "unknown format '" + item + "'");
    }
    out.formats.insert(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bertrand curve analysis and construction"};
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [cmd, keys] : kCommandKeys) {
    CLI::App* sub = app.add_subcommand(cmd);
    subs[cmd] = sub;
    auto& store = storage[cmd];
    sub->add_option("--config", config_paths[cmd], "key = value config file");
    for (const auto& k : kCommonKeys) sub->add_option("--" + k, store[k]);
    for (const auto& k : keys) sub->add_option("--" + k, store[k]);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCategory::Config);
  }

  std::string command;
  for (const auto& [cmd, sub] : subs) {
    if (sub->parsed()) command = cmd;
  }
  try {
    std::map<std::string, std::string> flags;
    for (const auto& [k, v] : storage[command]) {
      if (subs[command]->count("--" + k) > 0) flags[k] = v;
    }
    const Job job = assemble(command, config_paths[command], flags);
    const Output out = prepare_output(job);
    if (command == "analyze") return run_analyze(job, out);
    if (command == "mate") return run_mate(job, out);
    if (command == "fbertrand") return run_fbertrand(job, out);
    if (command == "surface") return run_surface(job, out);
    if (command == "spherical") return run_spherical(job, out);
    if (command == "donor") return run_donor(job, out);
    if (command == "sabban") return run_sabban(job, out);
    return static_cast<int>(ErrorCategory::Config);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.category()) << ": " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: Io: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::Io);
  }
}
