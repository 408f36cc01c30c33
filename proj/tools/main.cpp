// Command-line driver: closed-form Landau solutions, profile ODE residuals,
// boundary-value shooting, and grid verification of the stationary MHD
// system without magnetic diffusion.
//
// Output is deterministic: every floating-point value is printed with 17
// significant digits, so identical invocations produce identical bytes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ssmhd/acceptance.hpp"
#include "ssmhd/landau.hpp"
#include "ssmhd/pde_verify.hpp"
#include "ssmhd/profile_system.hpp"
#include "ssmhd/sampling.hpp"
#include "ssmhd/shooting.hpp"

namespace {

using ssmhd::kPi;

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Format { json, csv, human };

// One flat output record: ordered key -> (value, quoted-in-json)
struct Record {
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<bool> quoted;

  void add(const std::string& key, double v) {
    fields.emplace_back(key, num17(v));
    quoted.push_back(false);
  }
  void add(const std::string& key, long v) {
    fields.emplace_back(key, std::to_string(v));
    quoted.push_back(false);
  }
  void add(const std::string& key, const std::string& v, bool quote = true) {
    fields.emplace_back(key, v);
    quoted.push_back(quote);
  }
  void add(const std::string& key, bool v) { add(key, std::string(v ? "true" : "false"), false); }
};

void emit_json_object(std::ostream& os, const Record& r) {
  os << "{";
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i) os << ",";
    os << "\"" << r.fields[i].first << "\":";
    if (r.quoted[i])
      os << "\"" << r.fields[i].second << "\"";
    else
      os << r.fields[i].second;
  }
  os << "}";
}

void emit(std::ostream& os, Format fmt, const std::vector<Record>& records) {
  if (records.empty()) return;
  switch (fmt) {
    case Format::json:
      if (records.size() == 1) {
        emit_json_object(os, records[0]);
        os << "\n";
      } else {
        os << "[";
        for (std::size_t i = 0; i < records.size(); ++i) {
          if (i) os << ",";
          os << "\n  ";
          emit_json_object(os, records[i]);
        }
        os << "\n]\n";
      }
      break;
    case Format::csv: {
      for (std::size_t i = 0; i < records[0].fields.size(); ++i)
        os << (i ? "," : "") << records[0].fields[i].first;
      os << "\n";
      for (const Record& r : records) {
        for (std::size_t i = 0; i < r.fields.size(); ++i) {
          os << (i ? "," : "");
          if (r.quoted[i])
            os << "\"" << r.fields[i].second << "\"";
          else
            os << r.fields[i].second;
        }
        os << "\n";
      }
      break;
    }
    case Format::human:
      for (const Record& r : records) {
        for (const auto& [k, v] : r.fields) os << "  " << k << " = " << v << "\n";
        if (records.size() > 1) os << "\n";
      }
      break;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ssmhd::ParamRange parse_range(const std::string& text, const std::string& name) {
  // "lo:hi:step" scans; a single number is a fixed value
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    try {
      return ssmhd::ParamRange::fixed(std::stod(text));
    } catch (const std::exception&) {
      throw UsageError("bad value for " + name + ": '" + text + "'");
    }
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw UsageError("range for " + name + " needs lo:hi:step");
  double lo = 0, hi = 0, step = 0;
  try {
    lo = std::stod(text.substr(0, c1));
    hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw UsageError("bad range for " + name + ": '" + text + "'");
  }
  if (!(hi >= lo) || !(step > 0.0))
    throw UsageError("range for " + name + " needs hi >= lo and step > 0");
  return ssmhd::ParamRange::scan(lo, hi, step);
}

// "f0=4;h1=-1:1:0.5;P0=2:6:1" -> spec. Parameters left out stay fixed at 0.
void parse_scan(const std::string& text, ssmhd::ShootSpec& spec) {
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("scan entries look like name=value or name=lo:hi:step");
    const std::string name = part.substr(0, eq);
    const ssmhd::ParamRange r = parse_range(part.substr(eq + 1), name);
    if (name == "f0")
      spec.f0 = r;
    else if (name == "h1")
      spec.h1 = r;
    else if (name == "P0")
      spec.P0 = r;
    else
      throw UsageError("unknown scan parameter '" + name + "' (expected f0, h1, P0)");
  }
}

struct Common {
  Format format = Format::json;
  int threads = 0;
  ssmhd::ShootingConfig shooting;
  int pde_grid = 101;
  double pde_h = 1e-3;
  double pde_box = 2.0;
};

void apply_config_file(const std::string& path, Common& c) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "format") {
      const std::string f = value.get<std::string>();
      if (f == "json")
        c.format = Format::json;
      else if (f == "csv")
        c.format = Format::csv;
      else if (f == "human")
        c.format = Format::human;
      else
        throw UsageError("config: unknown format '" + f + "'");
    } else if (key == "threads") {
      c.threads = value.get<int>();
    } else if (key == "shooting") {
      for (const auto& [sk, sv] : value.items()) {
        if (sk == "epsilon")
          c.shooting.epsilon = sv.get<double>();
        else if (sk == "rtol")
          c.shooting.rtol = sv.get<double>();
        else if (sk == "atol")
          c.shooting.atol = sv.get<double>();
        else if (sk == "max_step")
          c.shooting.max_step = sv.get<double>();
        else if (sk == "newton_tol")
          c.shooting.newton_tol = sv.get<double>();
        else if (sk == "max_newton_iters")
          c.shooting.max_newton_iters = sv.get<int>();
        else
          throw UsageError("config: unknown shooting key '" + sk + "'");
      }
    } else if (key == "pde") {
      for (const auto& [pk, pv] : value.items()) {
        if (pk == "grid")
          c.pde_grid = pv.get<int>();
        else if (pk == "h")
          c.pde_h = pv.get<double>();
        else if (pk == "box")
          c.pde_box = pv.get<double>();
        else
          throw UsageError("config: unknown pde key '" + pk + "'");
      }
    } else {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
}

ssmhd::LandauParam checked_param(double a) {
  if (!(std::abs(a) > 1.0 + 1e-12))
    throw UsageError("a = " + num17(a) + " outside the domain |a| > 1");
  return ssmhd::LandauParam(a);
}

}  // namespace

int main(int argc, char** argv) {
  Common common;
  std::string format_name = "json";
  std::string config_path;

  CLI::App app{"self-similar axisymmetric MHD: Landau solutions, profile ODEs, "
               "shooting, and residual verification"};
  app.require_subcommand(1);
  app.add_option("--format", format_name, "output format: json, csv, human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--config", config_path, "JSON config file overriding defaults");

  // ---- landau ----
  CLI::App* landau = app.add_subcommand("landau", "closed-form Landau solutions");
  landau->require_subcommand(1);

  double a = 2.0, rho = 1.0, phi = kPi / 2, theta = 0.0, beta = 0.0, radius = 1.0;
  int order = 64;
  std::string branch = "positive";

  CLI::App* lb = landau->add_subcommand("beta", "beta from the parameter a");
  lb->add_option("--a", a, "Landau parameter, |a| > 1")->required();

  CLI::App* la = landau->add_subcommand("a", "parameter a from beta");
  la->add_option("--beta", beta, "force magnitude along the axis")->required();
  la->add_option("--branch", branch, "sign of a: positive or negative")
      ->check(CLI::IsMember({"positive", "negative"}));

  CLI::App* le = landau->add_subcommand("eval", "velocity and pressure at a point");
  le->add_option("--a", a)->required();
  le->add_option("--rho", rho, "radial distance > 0");
  le->add_option("--phi", phi, "polar angle in (0, pi)");
  le->add_option("--theta", theta, "azimuth");

  CLI::App* lf = landau->add_subcommand("flux", "momentum flux through a sphere");
  lf->add_option("--a", a)->required();
  lf->add_option("--r", radius, "sphere radius");
  lf->add_option("--order", order, "Gauss-Legendre order");

  // ---- profile ----
  CLI::App* profile = app.add_subcommand("profile", "reduced ODE profiles");
  profile->require_subcommand(1);

  std::string domain_name = "full";
  int samples = 1000;
  double tol = 1e-10;
  std::string out_path;

  CLI::App* pres = profile->add_subcommand("residual", "ODE and boundary residuals of the closed form");
  pres->add_option("--a", a)->required();
  pres->add_option("--domain", domain_name)->check(CLI::IsMember({"full", "half"}));
  pres->add_option("--samples", samples, "interior sample count");
  pres->add_option("--tol", tol, "pass threshold");

  CLI::App* pexp = profile->add_subcommand("export", "CSV table of the profile functions");
  pexp->add_option("--a", a)->required();
  pexp->add_option("--out", out_path, "output file")->required();
  pexp->add_option("--samples", samples, "row count");

  // ---- bvp ----
  CLI::App* bvp = app.add_subcommand("bvp", "boundary-value shooting");
  bvp->require_subcommand(1);

  std::string bc_name = "full";
  std::string scan_text;
  CLI::App* bshoot = bvp->add_subcommand("shoot", "scan + damped-Newton roots");
  bshoot->add_option("--bc", bc_name)->check(CLI::IsMember({"full", "noslip", "navier"}));
  bshoot->add_option("--scan", scan_text, "e.g. \"f0=4;h1=-1:1:0.5;P0=2:6:1\"")->required();
  bshoot->add_option("--threads", common.threads, "worker threads (0 = hardware)");

  // ---- verify ----
  CLI::App* verify = app.add_subcommand("verify", "residual verification");
  verify->require_subcommand(1);

  CLI::App* vpde = verify->add_subcommand("pde", "grid residuals of the full system");
  vpde->set_help_flag("--help", "print help");  // frees -h for the step flag
  vpde->add_option("--a", a)->required();
  vpde->add_option("--grid", common.pde_grid, "points per axis");
  vpde->add_option("--h", common.pde_h, "finite-difference step");
  vpde->add_option("--box", common.pde_box, "half-width of the sampling box");
  vpde->add_option("--threads", common.threads);

  std::string only_text;
  CLI::App* vsuite = verify->add_subcommand("suite", "run the acceptance battery");
  vsuite->add_option("--only", only_text, "comma-separated criterion ids");
  vsuite->add_option("--threads", common.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, common);
    if (format_name == "csv")
      common.format = Format::csv;
    else if (format_name == "human")
      common.format = Format::human;
    else if (app.count("--format") > 0)
      common.format = Format::json;

    std::vector<Record> out;
    int exit_code = 0;

    if (lb->parsed()) {
      const ssmhd::LandauParam p = checked_param(a);
      Record r;
      r.add("a", a);
      r.add("beta", ssmhd::beta_from_a(p));
      out.push_back(r);
    } else if (la->parsed()) {
      if (beta == 0.0) throw UsageError("beta must be nonzero");
      const ssmhd::Branch br =
          branch == "negative" ? ssmhd::Branch::negative : ssmhd::Branch::positive;
      if ((beta > 0.0) != (br == ssmhd::Branch::positive))
        throw UsageError("sign of beta must match the branch");
      Record r;
      r.add("beta", beta);
      r.add("branch", branch);
      r.add("a", ssmhd::a_from_beta(beta, br).a());
      out.push_back(r);
    } else if (le->parsed()) {
      const ssmhd::LandauParam p = checked_param(a);
      if (!(rho > 0.0)) throw UsageError("rho must be positive");
      if (!(phi >= 0.0 && phi <= kPi)) throw UsageError("phi must lie in [0, pi]");
      const ssmhd::SphericalPoint at{rho, theta, phi};
      const ssmhd::LandauSample s = ssmhd::landau_field(p, at);
      const ssmhd::CartesianVec u = ssmhd::to_cartesian(s.velocity, at);
      Record r;
      r.add("a", a);
      r.add("rho", rho);
      r.add("theta", theta);
      r.add("phi", phi);
      r.add("u_rho", s.velocity.v_rho);
      r.add("u_theta", s.velocity.v_theta);
      r.add("u_phi", s.velocity.v_phi);
      r.add("u_x1", u.x1);
      r.add("u_x2", u.x2);
      r.add("u_x3", u.x3);
      r.add("pressure", s.pressure);
      out.push_back(r);
    } else if (lf->parsed()) {
      const ssmhd::LandauParam p = checked_param(a);
      if (!(radius > 0.0)) throw UsageError("r must be positive");
      if (order < 2) throw UsageError("order must be at least 2");
      const ssmhd::CartesianVec flux = ssmhd::force_flux(p, radius, order);
      const double want = ssmhd::beta_from_a(p);
      Record r;
      r.add("a", a);
      r.add("r", radius);
      r.add("order", static_cast<long>(order));
      r.add("flux_x1", flux.x1);
      r.add("flux_x2", flux.x2);
      r.add("flux_x3", flux.x3);
      r.add("beta", want);
      r.add("rel_err", (flux - ssmhd::CartesianVec{0, 0, want}).norm() / std::abs(want));
      out.push_back(r);
    } else if (pres->parsed()) {
      const ssmhd::LandauParam p = checked_param(a);
      if (samples < 1) throw UsageError("samples must be positive");
      const ssmhd::Profile pr = ssmhd::landau_profiles(p);
      const ssmhd::DomainKind dom =
          domain_name == "half" ? ssmhd::DomainKind::half : ssmhd::DomainKind::full;
      const double hi = dom == ssmhd::DomainKind::half ? kPi / 2 : kPi;
      double worst[5] = {0, 0, 0, 0, 0};
      for (int i = 0; i < samples; ++i) {
        const double ph = 1e-3 + (hi - 2e-3) * (i + 0.5) / samples;
        const ssmhd::OdeResidual res = ssmhd::ode_residuals(pr, dom, ph);
        const double rr[5] = {res.r1, res.r2, res.r3, res.r4, res.r5};
        for (int k = 0; k < 5; ++k) worst[k] = std::max(worst[k], std::abs(rr[k]));
      }
      const double bmax =
          ssmhd::boundary_residuals(pr, ssmhd::BoundaryKind::full_space).max_abs();
      const double wmax = std::max({worst[0], worst[1], worst[2], worst[3], worst[4]});
      Record r;
      r.add("a", a);
      r.add("domain", domain_name);
      r.add("samples", static_cast<long>(samples));
      r.add("max_r1", worst[0]);
      r.add("max_r2", worst[1]);
      r.add("max_r3", worst[2]);
      r.add("max_r4", worst[3]);
      r.add("max_r5", worst[4]);
      r.add("max_residual", wmax);
      r.add("boundary_max", bmax);
      r.add("tol", tol);
      r.add("pass", wmax < tol && bmax < tol);
      out.push_back(r);
      if (!(wmax < tol && bmax < tol)) exit_code = 1;
    } else if (pexp->parsed()) {
      const ssmhd::LandauParam p = checked_param(a);
      if (samples < 2) throw UsageError("samples must be at least 2");
      const ssmhd::Profile pr = ssmhd::landau_profiles(p);
      std::ofstream os(out_path);
      if (!os) throw UsageError("cannot open '" + out_path + "' for writing");
      os << "phi,f,g,h,B,P\n";
      for (int i = 0; i < samples; ++i) {
        const double ph = kPi * i / (samples - 1);
        os << num17(ph) << "," << num17(pr.f(ph)) << "," << num17(pr.g(ph)) << ","
           << num17(pr.h(ph)) << "," << num17(pr.B(ph)) << "," << num17(pr.P(ph)) << "\n";
      }
      Record r;
      r.add("a", a);
      r.add("out", out_path);
      r.add("samples", static_cast<long>(samples));
      out.push_back(r);
    } else if (bshoot->parsed()) {
      ssmhd::ShootSpec spec;
      spec.bc = bc_name == "noslip"   ? ssmhd::BoundaryKind::noslip
                : bc_name == "navier" ? ssmhd::BoundaryKind::navier_slip
                                      : ssmhd::BoundaryKind::full_space;
      parse_scan(scan_text, spec);
      if (!spec.f0.free && !spec.h1.free && !spec.P0.free)
        throw UsageError("at least one scan parameter must be a range");
      const int threads = common.threads > 0 ? common.threads : 1;
      const ssmhd::ShootReport rep = ssmhd::shoot(spec, common.shooting, threads);
      if (common.format == Format::json) {
        std::cout << "{\"bc\":\"" << bc_name << "\",\"starts\":" << rep.starts
                  << ",\"converged\":" << rep.converged << ",\"failed\":" << rep.failed
                  << ",\"roots\":[";
        for (std::size_t i = 0; i < rep.roots.size(); ++i) {
          const ssmhd::ShootRoot& root = rep.roots[i];
          std::cout << (i ? "," : "") << "{\"f0\":" << num17(root.params.f0)
                    << ",\"h1\":" << num17(root.params.h1) << ",\"P0\":" << num17(root.params.P0)
                    << ",\"mismatch\":" << num17(root.mismatch) << "}";
        }
        std::cout << "]}\n";
        return 0;
      }
      if (common.format == Format::human)
        std::printf("starts %ld, converged %ld, failed %ld, %zu distinct root(s)\n", rep.starts,
                    rep.converged, rep.failed, rep.roots.size());
      for (const ssmhd::ShootRoot& root : rep.roots) {
        Record r;
        r.add("f0", root.params.f0);
        r.add("h1", root.params.h1);
        r.add("P0", root.params.P0);
        r.add("mismatch", root.mismatch);
        out.push_back(r);
      }
    } else if (vpde->parsed()) {
      const ssmhd::LandauParam p = checked_param(a);
      const ssmhd::Profile pr = ssmhd::landau_profiles(p);
      ssmhd::MhdFields fields;
      fields.u = ssmhd::velocity_field(pr);
      fields.p = ssmhd::pressure_field(pr);
      ssmhd::GridRegion region;
      region.lo = {-common.pde_box, -common.pde_box, -common.pde_box};
      region.hi = {common.pde_box, common.pde_box, common.pde_box};
      region.points_per_axis = common.pde_grid;
      try {
        region.validate();
        if (2.0 * common.pde_h >= std::min(region.axis_exclusion, region.origin_exclusion))
          throw UsageError("step --h too large for the exclusion radii");
      } catch (const ssmhd::DomainError& e) {
        throw UsageError(e.what());
      }
      const int threads = common.threads > 0 ? common.threads : 1;
      const ssmhd::ResidualReport rep =
          ssmhd::mhd_residual_grid(fields, region, common.pde_h, threads);
      const bool pass = rep.induction_max < 1e-10 && rep.div_B_max < 1e-10;
      Record r;
      r.add("a", a);
      r.add("grid", static_cast<long>(common.pde_grid));
      r.add("h", common.pde_h);
      r.add("points", rep.points);
      r.add("momentum_max", rep.momentum_max);
      r.add("momentum_rms", rep.momentum_rms);
      r.add("induction_max", rep.induction_max);
      r.add("div_u_max", rep.div_u_max);
      r.add("div_B_max", rep.div_B_max);
      r.add("pass", pass);
      out.push_back(r);
      if (!pass) exit_code = 1;
    } else if (vsuite->parsed()) {
      ssmhd::AcceptanceOptions opt;
      opt.threads = common.threads;
      if (!only_text.empty()) {
        std::stringstream ss(only_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          try {
            opt.only.insert(std::stoi(tok));
          } catch (const std::exception&) {
            throw UsageError("bad criterion id '" + tok + "'");
          }
        }
      }
      const auto results = ssmhd::run_acceptance(opt);
      bool all = true;
      for (const auto& c : results) {
        Record r;
        r.add("id", static_cast<long>(c.id));
        r.add("name", c.name);
        r.add("pass", c.pass);
        r.add("detail", c.detail);
        out.push_back(r);
        all = all && c.pass;
      }
      if (common.format == Format::human) {
        for (const auto& c : results)
          std::printf("[%2d/10] %s  %-32s %s\n", c.id, c.pass ? "PASS" : "FAIL", c.name.c_str(),
                      c.detail.c_str());
        return all ? 0 : 1;
      }
      if (!all) exit_code = 1;
    }

    emit(std::cout, common.format, out);
    return exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ssmhd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
