#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bertrand/bertrand.hpp"
#include "bertrand/curve.hpp"
#include "bertrand/frenet.hpp"
#include "bertrand/spherical.hpp"
#include "bertrand/surface.hpp"

namespace bertrand::io {

/// Shortest round-trip form with 17 significant digits.
std::string format_double(double v);

/// Parses `family(key=value, ...)`. Families: helix(a, b), circle(r), line(dx, dy, dz),
/// sphere_circle(rho), sphere_wave(amplitude, frequency). Every family accepts s0, s1 for
/// the domain. Throws InvalidSpec.
CurveSpec parse_curve_spec(std::string_view text);

/// Points from a CSV file: columns named x, y, z when a header is present, else the first
/// three columns. Throws Io, InvalidSpec.
std::vector<Vec3> read_points_csv(const std::string& path);

/// A spec string, or a path ending in .csv read as sampled points.
CurveSpec resolve_curve(const std::string& argument, int sample_count, int order = 5);

void write_frenet_csv(std::ostream& out, const FrenetData& data);
void write_curve_csv(std::ostream& out, const std::vector<double>& s, const std::vector<Vec3>& points);
void write_surface_csv(std::ostream& out, const SurfaceGrid& grid);
void write_obj(std::ostream& out, const Mesh& mesh);

/// Flat `key = value` text, keys in insertion order.
class Report {
 public:
  Report& add(const std::string& key, const std::string& value);
  Report& add(const std::string& key, double value);
  Report& add(const std::string& key, int value);
  Report& add(const std::string& key, bool value);
  void write(std::ostream& out) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void add_fit(Report& r, const std::string& prefix, const BertrandFit& fit);
void add_mate(Report& r, const std::string& prefix, const MateReport& mate);
void add_sphere(Report& r, const std::string& prefix, const SphereFit& fit);

/// `[section]` headers and `key = value` lines; `#` starts a comment. Keys before any
/// header belong to section "". Throws InvalidSpec on malformed lines or duplicates.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;
ConfigSections parse_config(std::string_view text);
ConfigSections read_config(const std::string& path);

std::string read_file(const std::string& path);
/// Writes atomically enough for tests: truncate then write. Throws Io.
void write_file(const std::string& path, const std::string& content);

}  // namespace bertrand::io
