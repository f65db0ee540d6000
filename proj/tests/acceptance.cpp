// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "bertrand/bertrand.hpp"
#include "bertrand/direction_curves.hpp"
#include "bertrand/io.hpp"
#include "bertrand/spherical.hpp"
#include "bertrand/surface.hpp"
#include "fixtures.hpp"

using namespace bertrand;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double sup_abs_diff(const std::vector<double>& v, double target) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - target));
  return worst;
}

Outcome helix_apparatus() {
  Outcome o;
  double worst = 0.0;
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 3.0}}) {
    const FrenetData d = frenet_apparatus(fixtures::helix(a, b));
    const double c2 = a * a + b * b;
    worst = std::max({worst, sup_abs_diff(d.kappa, a / c2), sup_abs_diff(d.tau, b / c2)});
  }
  o.require(worst < 1e-8, "kappa/tau error " + num(worst));
  o.detail = o.detail.empty() ? "max error " + num(worst) : o.detail;
  return o;
}

Outcome classical_mate() {
  Outcome o;
  const Curve base = fixtures::helix(1, 1);
  const MateResult m = v_bertrand_mate(base, FrameField::constant(1, 0, 0), std::nullopt, 1.0);
  std::vector<Vec3> line;
  for (double s : base.grid()) line.push_back({0.0, 0.0, s / std::sqrt(2.0)});
  const double dev = fixtures::translated_distance(m.mate.positions(), line);
  o.require(dev < 1e-6, "line deviation " + num(dev));
  o.require(m.report.accepted, "mate report rejected");
  if (o.pass) o.detail = "deviation " + num(dev) + ", collinearity " + num(m.report.normal_collinearity);
  return o;
}

Outcome v_bertrand_properties() {
  Outcome o;
  const Curve base = fixtures::helix(2, 1, 512);
  const double kappa = 0.4, tau = 0.2;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> angle(-kPi, kPi), tilt(-1.3, 1.3);
  double worst_col = 1.0, worst_dev = 0.0;
  int built = 0;
  while (built < 200) {
    const double phi = angle(rng), theta = tilt(rng);
    const double u = std::cos(phi), w = std::sin(phi), tn = std::tan(theta);
    const double lambda = (u * tn - w) / (kappa * tn + tau);
    if (std::abs(lambda) < 0.05 || std::abs(lambda) > 50.0) continue;
    const MateResult m = v_bertrand_mate(base, FrameField::constant(u, 0, w), theta, lambda);
    worst_col = std::min(worst_col, m.report.normal_collinearity);
    worst_dev = std::max(worst_dev, m.report.theta_deviation);
    ++built;
  }
  o.require(worst_col > 1 - 1e-6, "collinearity " + num(worst_col));
  o.require(worst_dev < 1e-5, "theta deviation " + num(worst_dev));

  int rejected = 0;
  for (int k = 0; k < 50; ++k) {
    const double phi = angle(rng), theta = tilt(rng);
    const double u = std::cos(phi), w = std::sin(phi), tn = std::tan(theta);
    const double lambda = (u * tn - w) / (kappa * tn + tau);
    // Shift λ so that |λ(κ tanθ + τ) − (u tanθ − w)| = 0.1 + something.
    const double shift = (0.15 + 0.1 * k / 50.0) / std::abs(kappa * tn + tau);
    try {
      v_bertrand_mate(base, FrameField::constant(u, 0, w), theta, lambda + shift);
    } catch (const Error& e) {
      if (e.category() == ErrorCategory::Condition) ++rejected;
    }
  }
  o.require(rejected == 50, std::to_string(rejected) + "/50 violations rejected");
  if (o.pass) {
    o.detail = "200 mates, min collinearity " + num(worst_col) + ", max theta std " + num(worst_dev) +
               "; 50/50 violations rejected";
  }
  return o;
}

Outcome branch_algebra() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(-1.4, 1.4), frac(-1.0, 1.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 1000) {
    const double theta = th(rng);
    const double tn = std::tan(theta);
    const double f = frac(rng) * std::sqrt(1 + tn * tn);
    const FBertrandBranches br = f_bertrand_coefficients(f, theta);
    for (Branch b : kAllBranches) {
      if (!br.is_valid(b)) continue;
      const double u = br.u(b), w = br.w(b);
      worst = std::max({worst, std::abs(u * u + w * w - 1.0), std::abs(u * tn - w - f)});
    }
    ++tested;
  }
  o.require(worst < 1e-8, "branch identity error " + num(worst));
  double worst32 = 0.0;
  for (double theta : {-1.2, -0.5, 0.3, 0.7, 1.1}) {
    const FBertrandBranches br = f_bertrand_coefficients(std::tan(theta), theta);
    worst32 = std::max({worst32, std::abs(br.u_plus - 1.0), std::abs(br.u_minus + std::cos(2 * theta))});
  }
  o.require(worst32 < 1e-12, "u± error " + num(worst32));
  if (o.pass) o.detail = "identity error " + num(worst) + ", u± error " + num(worst32);
  return o;
}

Outcome transform_round_trip() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi), val(-5.0, 5.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double phi = ang(rng);
    const double u = std::cos(phi), w = std::sin(phi);
    std::vector<double> kappa(8), tau(8);
    for (int i = 0; i < 8; ++i) {
      kappa[i] = val(rng);
      tau[i] = val(rng);
    }
    const auto fwd = transform_curvatures(kappa, tau, u, w);
    const auto back = inverse_transform_curvatures(fwd.kappa_V, fwd.tau_V, u, w);
    for (int i = 0; i < 8; ++i) {
      worst = std::max({worst, std::abs(back.kappa_V[i] - kappa[i]), std::abs(back.tau_V[i] - tau[i])});
    }
  }
  o.require(worst < 1e-12, "round trip error " + num(worst));
  double transfer = 0.0;
  const Curve h11 = fixtures::helix(1, 1, 512), h21 = fixtures::helix(2, 1, 512);
  for (auto [c, u, w] : {std::tuple{&h11, 0.6, 0.8}, {&h21, 0.0, 1.0}, {&h11, 1.0, 0.0}}) {
    const TransferReport r = bertrand_transfer_check(*c, u, w);
    o.require(r.accepted, "transfer check rejected");
    transfer = std::max(transfer, r.algebraic_residual);
  }
  o.require(transfer < 1e-10, "transfer residual " + num(transfer));
  if (o.pass) o.detail = "round trip " + num(worst) + ", transfer residual " + num(transfer);
  return o;
}

Outcome salkowski_corollaries() {
  Outcome o;
  const FrenetData sal = frenet_apparatus(fixtures::salkowski());
  const FrenetData anti = frenet_apparatus(fixtures::anti_salkowski());
  const BertrandFit sb = fit_bertrand(sal, BertrandKind::bertrand, 1e-6);
  const BertrandFit sB = fit_bertrand(sal, BertrandKind::b_bertrand, 1e-6);
  const BertrandFit ab = fit_bertrand(anti, BertrandKind::bertrand, 1e-6);
  const BertrandFit aB = fit_bertrand(anti, BertrandKind::b_bertrand, 1e-6);
  o.require(sb.accepted && sb.residual < 1e-6, "Salkowski bertrand residual " + num(sb.residual));
  o.require(!sB.accepted && sB.structural_residual > 0.1,
            "Salkowski b_bertrand margin " + num(sB.structural_residual));
  o.require(aB.accepted && aB.residual < 1e-6, "anti-Salkowski b_bertrand residual " + num(aB.residual));
  o.require(!ab.accepted && ab.structural_residual > 0.1,
            "anti-Salkowski bertrand margin " + num(ab.structural_residual));
  if (o.pass) {
    o.detail = "accepted residuals " + num(sb.residual) + " / " + num(aB.residual) + ", rejection margins " +
               num(sB.structural_residual) + " / " + num(ab.structural_residual);
  }
  return o;
}

Outcome spherical_pipeline() {
  Outcome o;
  const Curve M = fixtures::circle(1.0, 10.0);
  double shape = 0.0, resid = 0.0, pyth = 0.0;
  for (double th : {kPi / 6, kPi / 4, kPi / 3}) {
    const SphericalBertrand sb = bertrand_from_spherical(M, th);
    const double a = std::cos(th), b = std::sin(th);
    std::vector<Vec3> closed;
    for (double s : M.grid()) closed.push_back({a * std::cos(s), a * std::sin(s), b * s});
    shape = std::max(shape, fixtures::aligned_distance(sb.K.positions(), closed));
    const BertrandFit fit = fit_bertrand(frenet_apparatus(sb.K), BertrandKind::bertrand, 1e-6);
    o.require(fit.accepted, "K rejected at theta0 " + num(th));
    resid = std::max(resid, fit.residual);
    const FrenetData dm = frenet_apparatus(M);
    for (std::size_t i = 0; i < dm.size(); ++i) {
      const double k2 = sb.kappa_bar[i] * sb.kappa_bar[i] + sb.tau_bar[i] * sb.tau_bar[i];
      pyth = std::max(pyth, std::abs(k2 - dm.kappa[i] * dm.kappa[i]));
    }
  }
  o.require(shape < 1e-5, "shape deviation " + num(shape));
  o.require(resid < 1e-6, "fit residual " + num(resid));
  o.require(pyth < 1e-8, "Pythagorean defect " + num(pyth));
  if (o.pass) o.detail = "shape " + num(shape) + ", residual " + num(resid) + ", identity " + num(pyth);
  return o;
}

Outcome sphere_fit() {
  Outcome o;
  double worst = 0.0;
  for (auto [R, th, tau, L] : {std::tuple{2.0, 0.3, 0.5, 2.0}, {1.5, 1.0, -0.5, 3.0}}) {
    const SphereFit f = fit_sphere(frenet_apparatus(fixtures::spherical_fixture(R, th, tau, L)), 1e-4);
    o.require(f.accepted, "fixture R=" + num(R) + " rejected");
    worst = std::max({worst, std::abs(f.R - R), std::abs(f.theta0 - th)});
  }
  o.require(worst < 1e-4, "recovery error " + num(worst));
  const SphereFit h = fit_sphere(frenet_apparatus(fixtures::helix(1, 1)), 1e-4);
  o.require(!h.accepted && h.residual > 0.1, "helix residual " + num(h.residual));
  if (o.pass) o.detail = "recovery error " + num(worst) + ", helix residual " + num(h.residual);
  return o;
}

Outcome surface_golden() {
  Outcome o;
  const Curve base = fixtures::helix(1, 1);
  const BertrandFit fit = fit_bertrand(frenet_apparatus(base), BertrandKind::bertrand, 1e-6);
  SurfaceParams p;
  p.nt = 16;
  p.ns = 128;
  const SurfaceGrid g = bertrand_surface(base, fit, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.nt(); ++i) {
    for (std::size_t j = 0; j < g.ns(); ++j) {
      worst = std::max(worst, (g.at(i, j) - fixtures::helix_surface_point(g.t_values[i], g.s_values[j])).norm());
    }
  }
  o.require(worst < 1e-6, "vertex deviation " + num(worst));
  int rows_ok = 0;
  for (std::size_t i = 0; i < g.nt(); ++i) {
    if (verify_mate(base, surface_row(base, g, i)).accepted) ++rows_ok;
  }
  o.require(rows_ok == int(g.nt()), std::to_string(rows_ok) + "/16 rows verified");
  if (o.pass) o.detail = "vertex deviation " + num(worst) + ", 16/16 rows verified";
  return o;
}

Outcome sabban_generator() {
  Outcome o;
  double worst = 0.0;
  int accepted = 0;
  for (double rho : {1.0, 0.6, 0.8}) {
    const Curve c = fixtures::sphere_circle(rho, 3.0);
    for (double a : {0.5, 1.0, 2.0}) {
      for (double th : {kPi / 6, kPi / 4, kPi / 3}) {
        const SabbanBertrand sb = sabban_bertrand(c, a, th);
        if (sb.fit.accepted && sb.fit.residual < 1e-5) ++accepted;
        worst = std::max(worst, sb.fit.residual);
      }
    }
  }
  o.require(accepted == 27, std::to_string(accepted) + "/27 accepted");
  if (o.pass) o.detail = "27/27 accepted, max residual " + num(worst);
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("bertrand_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string cli = BERTRAND_CLI_PATH;
  auto run = [&](const std::string& args, const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const std::vector<std::pair<std::string, std::vector<std::string>>> jobs = {
      {"surface --curve \"helix(a=1,b=1)\" --nt 16 --ns 128", {"surface.obj", "surface.csv"}},
      {"analyze --curve \"helix(a=1,b=1)\"", {"analyze.csv"}},
  };
  for (const auto& [args, files] : jobs) {
    const int r1 = run(args, root / "a"), r2 = run(args, root / "b");
    o.require(r1 == 0 && r2 == 0, "CLI exit status nonzero for: " + args);
    for (const std::string& f : files) {
      try {
        const std::string x = io::read_file((root / "a" / f).string());
        const std::string y = io::read_file((root / "b" / f).string());
        o.require(!x.empty() && x == y, f + " differs between runs");
      } catch (const Error& e) {
        o.require(false, e.what());
      }
    }
  }
  fs::remove_all(root);
  if (o.pass) o.detail = "surface.obj, surface.csv, analyze.csv byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"helix apparatus", helix_apparatus},
      {"classical mate golden", classical_mate},
      {"V-Bertrand mate properties", v_bertrand_properties},
      {"f-Bertrand branch algebra", branch_algebra},
      {"curvature transform round trip", transform_round_trip},
      {"Salkowski / anti-Salkowski", salkowski_corollaries},
      {"spherical to Bertrand pipeline", spherical_pipeline},
      {"spherical fit", sphere_fit},
      {"Bertrand surface golden", surface_golden},
      {"Sabban generator", sabban_generator},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
