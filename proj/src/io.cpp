#include "bertrand/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bertrand::io {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  std::string buf(text);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(buf.c_str(), &end);
  return errno == 0 && end == buf.c_str() + buf.size() && std::isfinite(out);
}

double number_or_throw(std::string_view key, std::string_view text) {
  double v;
  if (!parse_number(text, v)) {
    throw Error(ErrorCode::InvalidSpec, "bad number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

CurveSpec parse_curve_spec(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw Error(ErrorCode::InvalidSpec, "curve spec must look like family(key=value,...)");
  }
  const std::string family(trim(text.substr(0, open)));
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);

  std::map<std::string, double> kv;
  if (!trim(body).empty()) {
    for (auto item : split(body, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::InvalidSpec, "expected key=value in '" + std::string(item) + "'");
      }
      const std::string key(trim(item.substr(0, eq)));
      if (kv.count(key)) throw Error(ErrorCode::InvalidSpec, "duplicate key '" + key + "'");
      kv[key] = number_or_throw(key, item.substr(eq + 1));
    }
  }
  auto take = [&](const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const double v = it->second;
    kv.erase(it);
    return v;
  };

  CurveSpec spec;
  if (family == "helix") {
    spec.family = HelixSpec{take("a", 1.0), take("b", 1.0)};
  } else if (family == "circle") {
    spec.family = CircleSpec{take("r", 1.0)};
  } else if (family == "line") {
    spec.family = LineSpec{Vec3(take("dx", 0.0), take("dy", 0.0), take("dz", 1.0))};
  } else if (family == "sphere_circle") {
    spec.family = SphereCircleSpec{take("rho", 1.0)};
  } else if (family == "sphere_wave") {
    spec.family = SphereWaveSpec{take("amplitude", 0.3), take("frequency", 2.0)};
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown curve family '" + family + "'");
  }
  const bool has_s0 = kv.count("s0"), has_s1 = kv.count("s1");
  if (has_s0 || has_s1) {
    const double hi_default = family == "sphere_wave" ? 2.0 * M_PI : 10.0;
    spec.domain = Interval{take("s0", 0.0), take("s1", hi_default)};
  }
  if (!kv.empty()) {
    throw Error(ErrorCode::InvalidSpec, "unknown key '" + kv.begin()->first + "' for " + family);
  }
  return spec;
}

std::vector<Vec3> read_points_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<Vec3> pts;
  std::array<int, 3> col{0, 1, 2};
  bool first = true;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    double probe;
    if (first && !parse_number(cells[0], probe)) {
      for (int k = 0; k < 3; ++k) {
        const char name[2] = {static_cast<char>('x' + k), 0};
        const auto it = std::find_if(cells.begin(), cells.end(),
                                     [&](std::string_view c) { return trim(c) == name; });
        if (it == cells.end()) throw Error(ErrorCode::InvalidSpec, "CSV header lacks column " + std::string(name));
        col[k] = static_cast<int>(it - cells.begin());
      }
      first = false;
      continue;
    }
    first = false;
    Vec3 p;
    for (int k = 0; k < 3; ++k) {
      if (col[k] >= static_cast<int>(cells.size()) || !parse_number(cells[col[k]], p[k])) {
        throw Error(ErrorCode::InvalidSpec, path + ":" + std::to_string(line_no) + ": bad point row");
      }
    }
    pts.push_back(p);
  }
  return pts;
}

CurveSpec resolve_curve(const std::string& argument, int sample_count, int order) {
  CurveSpec spec;
  const bool is_csv = argument.size() > 4 && argument.compare(argument.size() - 4, 4, ".csv") == 0;
  if (is_csv) {
    spec.family = SampledSpec{read_points_csv(argument), order};
  } else {
    spec = parse_curve_spec(argument);
  }
  spec.sample_count = sample_count;
  return spec;
}

void write_frenet_csv(std::ostream& out, const FrenetData& d) {
  out << "s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << format_double(d.s[i]);
    for (const Vec3* v : {&d.position[i], &d.T[i], &d.N[i], &d.B[i]}) {
      for (int k = 0; k < 3; ++k) out << ',' << format_double((*v)[k]);
    }
    out << ',' << format_double(d.kappa[i]) << ',' << format_double(d.tau[i]) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const std::vector<double>& s, const std::vector<Vec3>& p) {
  out << "s,x,y,z\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_double(s[i]) << ',' << format_double(p[i].x()) << ',' << format_double(p[i].y())
        << ',' << format_double(p[i].z()) << '\n';
  }
}

void write_surface_csv(std::ostream& out, const SurfaceGrid& g) {
  out << "t,s,x,y,z\n";
  for (std::size_t i = 0; i < g.nt(); ++i) {
    for (std::size_t j = 0; j < g.ns(); ++j) {
      const Vec3& p = g.at(i, j);
      out << format_double(g.t_values[i]) << ',' << format_double(g.s_values[j]) << ','
          << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(p.z()) << '\n';
    }
  }
}

void write_obj(std::ostream& out, const Mesh& mesh) {
  for (const Vec3& v : mesh.vertices) {
    out << "v " << format_double(v.x()) << ' ' << format_double(v.y()) << ' ' << format_double(v.z()) << '\n';
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

Report& Report::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
  return *this;
}
Report& Report::add(const std::string& key, double value) { return add(key, format_double(value)); }
Report& Report::add(const std::string& key, int value) { return add(key, std::to_string(value)); }
Report& Report::add(const std::string& key, bool value) {
  return add(key, std::string(value ? "true" : "false"));
}

void Report::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

void add_fit(Report& r, const std::string& p, const BertrandFit& fit) {
  r.add(p + "kind", std::string(fit.kind == BertrandKind::bertrand ? "bertrand" : "b_bertrand"))
      .add(p + "accepted", fit.accepted)
      .add(p + "lambda", fit.lambda)
      .add(p + "mu", fit.mu)
      .add(p + "theta", fit.theta)
      .add(p + "residual", fit.residual)
      .add(p + "structural_residual", fit.structural_residual)
      .add(p + "planar_special", fit.planar_special);
}

void add_mate(Report& r, const std::string& p, const MateReport& m) {
  r.add(p + "accepted", m.accepted)
      .add(p + "reason", m.reason.empty() ? std::string("ok") : m.reason)
      .add(p + "normal_collinearity", m.normal_collinearity)
      .add(p + "epsilon", m.epsilon)
      .add(p + "theta_mean", m.theta_mean)
      .add(p + "theta_deviation", m.theta_deviation)
      .add(p + "theta_max_deviation", m.theta_max_deviation)
      .add(p + "condition_residual", m.condition_residual);
}

void add_sphere(Report& r, const std::string& p, const SphereFit& f) {
  r.add(p + "accepted", f.accepted)
      .add(p + "R", f.R)
      .add(p + "theta0", f.theta0)
      .add(p + "center_x", f.center.x())
      .add(p + "center_y", f.center.y())
      .add(p + "center_z", f.center.z())
      .add(p + "residual", f.residual)
      .add(p + "osculating_ratio", f.osculating_ratio)
      .add(p + "radius_degenerate", f.radius_degenerate);
}

ConfigSections parse_config(std::string_view text) {
  ConfigSections out;
  std::string section;
  out[section];
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw Error(ErrorCode::InvalidSpec, where + "bad section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (out.count(section) && section != "") throw Error(ErrorCode::InvalidSpec, where + "duplicate section");
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::InvalidSpec, where + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCode::InvalidSpec, where + "empty key");
    if (!out[section].emplace(key, value).second) {
      throw Error(ErrorCode::InvalidSpec, where + "duplicate key '" + key + "'");
    }
  }
  return out;
}

ConfigSections read_config(const std::string& path) { return parse_config(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

}  // namespace bertrand::io
