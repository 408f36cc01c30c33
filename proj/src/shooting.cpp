#include "ssmhd/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

namespace ssmhd {

OdeRhs profile_rhs(BMode mode) {
  return [mode](double phi, const double* y, double* dy) {
    const double s = std::sin(phi), c = std::cos(phi);
    const double cot = c / s;
    const double f = y[0], fp = y[1], g = y[2], h = y[3], hp = y[4], B = y[5], P = y[6];
    const double gp = -f - g * cot;
    dy[0] = fp;
    dy[1] = -fp * cot + fp * g - (f * f + g * g + h * h) + B * B - 2.0 * P;
    dy[2] = gp;
    dy[3] = hp;
    dy[4] = g * (hp + h * cot) - hp * cot + h / (s * s);
    if (mode == BMode::zero) {
      dy[5] = 0.0;
    } else {
      if (std::abs(g) < 1e-10)
        throw GuardTripped("profile_rhs: |g| below 1e-10 in the conserved B branch");
      dy[5] = B * (cot + 2.0 * f / g);
    }
    dy[6] = fp - gp * g + h * h * cot - B * B * cot;
  };
}

ShootingState axis_series_init(const AxisParams& p, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.01))
    throw DomainError("axis_series_init: epsilon must lie in (0, 0.01]");
  const double b1 = p.b_mode == BMode::conserved ? p.b1 : 0.0;
  const double f2 = -(p.f0 * p.f0 + 2.0 * p.P0) / 4.0;
  // phi -> 0 limit of the pressure equation; dropping this term biases the
  // far-boundary functionals at the 1e-7 level through the 1/(pi - phi) mode.
  const double P2 = f2 - p.f0 * p.f0 / 8.0 + 0.5 * (p.h1 * p.h1 - b1 * b1);
  ShootingState st;
  st.phi = epsilon;
  st.y[0] = p.f0 + f2 * epsilon * epsilon;
  st.y[1] = 2.0 * f2 * epsilon;
  st.y[2] = -(p.f0 / 2.0) * epsilon;
  st.y[3] = p.h1 * epsilon;
  st.y[4] = p.h1;
  st.y[5] = b1 * epsilon;
  st.y[6] = p.P0 + P2 * epsilon * epsilon;
  return st;
}

IntegratedProfile integrate_profile(const ShootingState& init, double to_phi,
                                    const ShootingConfig& cfg, BMode mode) {
  if (!(to_phi > init.phi)) throw DomainError("integrate_profile: to_phi must exceed init.phi");
  OdeOptions opt;
  opt.rtol = cfg.rtol;
  opt.atol = cfg.atol;
  opt.h_max = cfg.max_step;
  opt.blow_up_limit = cfg.blow_up_limit;
  opt.dense = true;

  std::vector<double> y0(init.y.begin(), init.y.end());
  OdeResult run = dop853_integrate(profile_rhs(mode), init.phi, std::move(y0), to_phi, opt);

  IntegratedProfile out;
  switch (run.status) {
    case OdeStatus::ok:
      out.status = IntegrateStatus::ok;
      break;
    case OdeStatus::blow_up:
      out.status = IntegrateStatus::blow_up;
      break;
    default:
      out.status = IntegrateStatus::stiffness_failure;
      break;
  }
  out.phi_reached = run.t_reached;
  out.n_steps = run.n_steps;
  out.n_rhs = run.n_rhs;
  std::copy(run.y.begin(), run.y.end(), out.final_state.y.begin());
  out.final_state.phi = run.t_reached;

  if (!run.dense.empty()) {
    auto dense = std::make_shared<const DenseOutput>(std::move(run.dense));
    auto comp = [dense](std::size_t i) {
      return AngularFn::analytic(
          [dense, i](double phi) { return dense->component(phi, i); },
          [dense, i](double phi) { return dense->component_d1(phi, i); },
          [dense, i](double phi) { return dense->component_d2(phi, i); });
    };
    // f and h carry their first derivatives as state components, so the
    // profile reads those interpolants directly and differentiates them once
    // for the second derivative; this costs one interpolant differentiation
    // instead of two.
    auto comp_with_slope = [dense](std::size_t i, std::size_t islope) {
      return AngularFn::analytic(
          [dense, i](double phi) { return dense->component(phi, i); },
          [dense, islope](double phi) { return dense->component(phi, islope); },
          [dense, islope](double phi) { return dense->component_d1(phi, islope); });
    };
    out.profile.f = comp_with_slope(0, 1);
    out.profile.g = comp(2);
    out.profile.h = comp_with_slope(3, 4);
    out.profile.B = comp(5);
    out.profile.P = comp(6);
    out.profile.phi_min = dense->t_begin();
    out.profile.phi_max = dense->t_end();
  } else {
    out.profile = Profile::zero(init.phi, init.phi);
  }
  return out;
}

std::vector<double> ParamRange::values() const {
  if (!(hi >= lo)) throw DomainError("ParamRange: hi < lo");
  std::vector<double> v;
  if (hi == lo || step <= 0.0) {
    v.push_back(lo);
    return v;
  }
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  v.reserve(n + 1);
  for (int i = 0; i <= n; ++i) v.push_back(lo + i * step);
  return v;
}

namespace {

constexpr double kFarOffsets[3] = {1e-3, 5e-4, 2.5e-4};

// Parameter-independent graded mesh from the axis offset to the far end.
// Steps are capped at max_step and at half the distance to either pole, which
// keeps the singular cot terms resolved without adaptivity.
std::vector<double> build_mesh(BoundaryKind bc, const ShootingConfig& cfg) {
  const double h_uni = cfg.max_step;
  std::vector<double> mesh;
  mesh.push_back(cfg.epsilon);
  double phi = cfg.epsilon;
  // geometric ramp off the axis
  while (0.5 * phi < h_uni) {
    phi *= 1.5;
    mesh.push_back(phi);
  }
  if (bc == BoundaryKind::full_space) {
    const double core_end = kPi - 2.0 * h_uni;
    const int n = std::max(1, static_cast<int>(std::ceil((core_end - phi) / h_uni)));
    const double h = (core_end - phi) / n;
    for (int i = 1; i <= n; ++i) mesh.push_back(phi + i * h);
    // geometric ramp toward pi, down to the first Richardson offset
    double delta = kPi - core_end;
    while (delta > 1.5 * kFarOffsets[0]) {
      delta = std::max(0.5 * delta, kFarOffsets[0]);
      mesh.push_back(kPi - delta);
    }
    if (mesh.back() < kPi - kFarOffsets[0] - 1e-15) mesh.push_back(kPi - kFarOffsets[0]);
    mesh.push_back(kPi - kFarOffsets[1]);
    mesh.push_back(kPi - kFarOffsets[2]);
  } else {
    const double core_end = 0.5 * kPi;
    const int n = std::max(1, static_cast<int>(std::ceil((core_end - phi) / h_uni)));
    const double h = (core_end - phi) / n;
    for (int i = 1; i <= n; ++i) mesh.push_back(phi + i * h);
    mesh.back() = core_end;
  }
  return mesh;
}

struct MeshPlan {
  std::vector<double> mesh;
  // indices of the states feeding the mismatch, in mesh order
  std::array<std::size_t, 3> far_idx{};
};

MeshPlan make_plan(BoundaryKind bc, const ShootingConfig& cfg) {
  MeshPlan plan;
  plan.mesh = build_mesh(bc, cfg);
  const std::size_t last = plan.mesh.size() - 1;
  if (bc == BoundaryKind::full_space)
    plan.far_idx = {last - 2, last - 1, last};  // offsets 1e-3, 5e-4, 2.5e-4
  else
    plan.far_idx = {last, last, last};
  return plan;
}

struct BlowUpSignal {};

std::vector<double> mismatch_on_plan(const AxisParams& p, BoundaryKind bc, const MeshPlan& plan,
                                     const ShootingConfig& cfg) {
  const ShootingState init = axis_series_init(p, cfg.epsilon);
  std::vector<double> y0(init.y.begin(), init.y.end());
  MeshResult run =
      dop853_integrate_mesh(profile_rhs(p.b_mode), std::move(y0), plan.mesh, cfg.blow_up_limit);
  if (run.status != OdeStatus::ok) throw BlowUpSignal{};

  if (bc == BoundaryKind::full_space) {
    // Richardson limit (8 v(d/4) - 6 v(d/2) + v(d))/3 for f', g, h, B at pi.
    const auto& v1 = run.states[plan.far_idx[0]];
    const auto& v2 = run.states[plan.far_idx[1]];
    const auto& v3 = run.states[plan.far_idx[2]];
    const int comps[4] = {1, 2, 3, 5};
    std::vector<double> m(4);
    for (int k = 0; k < 4; ++k) {
      const int c = comps[k];
      m[k] = (8.0 * v3[c] - 6.0 * v2[c] + v1[c]) / 3.0;
    }
    return m;
  }
  const auto& w = run.states[plan.far_idx[2]];
  if (bc == BoundaryKind::noslip) return {w[0], w[2], w[3]};  // f, g, h
  return {w[1], w[2], w[4]};                                  // f', g, h'
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Solve (J^T J) d = -J^T m for up to 3 unknowns by Gaussian elimination.
bool gauss_newton_step(const std::vector<std::vector<double>>& jac_cols,
                       const std::vector<double>& m, std::vector<double>& d) {
  const std::size_t k = jac_cols.size();
  double A[3][3] = {};
  double b[3] = {};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < m.size(); ++r) s += jac_cols[i][r] * jac_cols[j][r];
      A[i][j] = s;
    }
    double s = 0.0;
    for (std::size_t r = 0; r < m.size(); ++r) s += jac_cols[i][r] * m[r];
    b[i] = -s;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-300) return false;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double w = A[r][col] / A[col][col];
      for (std::size_t c = col; c < k; ++c) A[r][c] -= w * A[col][c];
      b[r] -= w * b[col];
    }
  }
  d.assign(k, 0.0);
  for (std::size_t r = k; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < k; ++c) s -= A[r][c] * d[c];
    d[r] = s / A[r][r];
  }
  return true;
}

struct NewtonOutcome {
  bool converged = false;
  AxisParams params;
  double mismatch = 0.0;
};

NewtonOutcome newton_refine(AxisParams p, const std::vector<int>& free_ids, BoundaryKind bc,
                            const MeshPlan& plan, const ShootingConfig& cfg) {
  auto get = [](AxisParams& q, int id) -> double& {
    switch (id) {
      case 0: return q.f0;
      case 1: return q.h1;
      default: return q.P0;
    }
  };
  NewtonOutcome out;
  try {
    std::vector<double> m = mismatch_on_plan(p, bc, plan, cfg);
    double nm = norm2(m);
    for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
      if (nm < cfg.newton_tol) {
        out.converged = true;
        out.params = p;
        out.mismatch = nm;
        return out;
      }
      std::vector<std::vector<double>> cols;
      cols.reserve(free_ids.size());
      for (int id : free_ids) {
        AxisParams q = p;
        double& slot = get(q, id);
        const double dstep = 1e-7 * (1.0 + std::abs(slot));
        slot += dstep;
        std::vector<double> mj = mismatch_on_plan(q, bc, plan, cfg);
        std::vector<double> col(m.size());
        for (std::size_t r = 0; r < m.size(); ++r) col[r] = (mj[r] - m[r]) / dstep;
        cols.push_back(std::move(col));
      }
      std::vector<double> d;
      if (!gauss_newton_step(cols, m, d)) return out;

      double lambda = 1.0;
      bool accepted = false;
      for (int halving = 0; halving < 20; ++halving) {
        AxisParams trial = p;
        for (std::size_t j = 0; j < free_ids.size(); ++j)
          get(trial, free_ids[j]) += lambda * d[j];
        try {
          std::vector<double> mt = mismatch_on_plan(trial, bc, plan, cfg);
          const double nt = norm2(mt);
          if (nt < nm) {
            p = trial;
            m = std::move(mt);
            nm = nt;
            accepted = true;
            break;
          }
        } catch (const BlowUpSignal&) {
          // fall through to damping
        }
        lambda *= 0.5;
      }
      if (!accepted) return out;  // stalled
    }
    if (nm < cfg.newton_tol) {
      out.converged = true;
      out.params = p;
      out.mismatch = nm;
    }
  } catch (const BlowUpSignal&) {
    // start point blew up before reaching the far boundary
  }
  return out;
}

}  // namespace

std::vector<double> shoot_mismatch(const AxisParams& p, BoundaryKind bc,
                                   const ShootingConfig& cfg) {
  const MeshPlan plan = make_plan(bc, cfg);
  try {
    return mismatch_on_plan(p, bc, plan, cfg);
  } catch (const BlowUpSignal&) {
    throw Error("shoot_mismatch: trajectory blew up before the far boundary");
  }
}

ShootReport shoot(const ShootSpec& spec, const ShootingConfig& cfg, int threads) {
  if (spec.bc == BoundaryKind::full_space && !(spec.f0.free || spec.h1.free || spec.P0.free))
    throw DomainError("shoot: at least one free parameter required");

  std::vector<int> free_ids;
  if (spec.f0.free) free_ids.push_back(0);
  if (spec.h1.free) free_ids.push_back(1);
  if (spec.P0.free) free_ids.push_back(2);
  const std::size_t n_targets = spec.bc == BoundaryKind::full_space ? 4 : 3;
  if (free_ids.size() > n_targets) throw DomainError("shoot: more unknowns than targets");

  const MeshPlan plan = make_plan(spec.bc, cfg);
  const std::vector<double> f0s = spec.f0.values();
  const std::vector<double> h1s = spec.h1.values();
  const std::vector<double> P0s = spec.P0.values();

  std::vector<AxisParams> starts;
  starts.reserve(f0s.size() * h1s.size() * P0s.size());
  for (double f0 : f0s)
    for (double h1 : h1s)
      for (double P0 : P0s) {
        AxisParams p;
        p.f0 = f0;
        p.h1 = h1;
        p.P0 = P0;
        starts.push_back(p);
      }

  ShootReport report;
  report.starts = static_cast<long>(starts.size());

  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(starts.size())));
  std::vector<std::vector<ShootRoot>> found(n_threads);
  std::vector<long> conv(n_threads, 0), fail(n_threads, 0);

  auto worker = [&](int tid) {
    for (std::size_t i = tid; i < starts.size(); i += n_threads) {
      const NewtonOutcome r = newton_refine(starts[i], free_ids, spec.bc, plan, cfg);
      if (r.converged) {
        found[tid].push_back({r.params, r.mismatch});
        ++conv[tid];
      } else {
        ++fail[tid];
      }
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }

  std::vector<ShootRoot> all;
  for (int t = 0; t < n_threads; ++t) {
    report.converged += conv[t];
    report.failed += fail[t];
    all.insert(all.end(), found[t].begin(), found[t].end());
  }
  std::sort(all.begin(), all.end(), [](const ShootRoot& a, const ShootRoot& b) {
    if (a.params.f0 != b.params.f0) return a.params.f0 < b.params.f0;
    if (a.params.h1 != b.params.h1) return a.params.h1 < b.params.h1;
    return a.params.P0 < b.params.P0;
  });
  for (const ShootRoot& r : all) {
    bool dup = false;
    for (ShootRoot& kept : report.roots) {
      const double df = r.params.f0 - kept.params.f0;
      const double dh = r.params.h1 - kept.params.h1;
      const double dP = r.params.P0 - kept.params.P0;
      if (std::sqrt(df * df + dh * dh + dP * dP) < 1e-6) {
        if (r.mismatch < kept.mismatch) kept = r;
        dup = true;
        break;
      }
    }
    if (!dup) report.roots.push_back(r);
  }
  return report;
}

LandauFit fit_landau_a(const Profile& pr, int n_samples) {
  if (n_samples < 8) throw DomainError("fit_landau_a: too few samples");
  const double lo = pr.phi_min, hi = pr.phi_max;
  std::vector<double> phis(n_samples), fs(n_samples);
  double fmax = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    phis[i] = lo + (hi - lo) * (i + 0.5) / n_samples;
    fs[i] = pr.f(phis[i]);
    fmax = std::max(fmax, std::abs(fs[i]));
  }
  if (fmax <= 1e-8)
    throw TrivialProfile("fit_landau_a: max|f| <= 1e-8, the parameter is unidentifiable");

  // f(0+) = 4/(a-1) fixes the sign of the branch.
  const double sign = fs.front() > 0.0 ? 1.0 : -1.0;
  auto rms_at = [&](double s) {  // a = sign * (1 + 10^s)
    const double a = sign * (1.0 + std::pow(10.0, s));
    double acc = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      const double d = a - std::cos(phis[i]);
      const double model = 2.0 * (a * a - 1.0) / (d * d) - 2.0;
      acc += (model - fs[i]) * (model - fs[i]);
    }
    return std::sqrt(acc / n_samples);
  };

  double best_s = 0.0, best = std::numeric_limits<double>::infinity();
  const int grid = 400;
  for (int i = 0; i <= grid; ++i) {
    const double s = -9.0 + 21.0 * i / grid;
    const double v = rms_at(s);
    if (v < best) {
      best = v;
      best_s = s;
    }
  }
  double a_lo = best_s - 21.0 / grid, b_hi = best_s + 21.0 / grid;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b_hi - gr * (b_hi - a_lo), x2 = a_lo + gr * (b_hi - a_lo);
  double f1 = rms_at(x1), f2 = rms_at(x2);
  for (int it = 0; it < 200 && b_hi - a_lo > 1e-14; ++it) {
    if (f1 < f2) {
      b_hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = b_hi - gr * (b_hi - a_lo);
      f1 = rms_at(x1);
    } else {
      a_lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = a_lo + gr * (b_hi - a_lo);
      f2 = rms_at(x2);
    }
  }
  const double s = 0.5 * (a_lo + b_hi);
  LandauFit fit;
  fit.a = sign * (1.0 + std::pow(10.0, s));
  fit.rms = rms_at(s);
  return fit;
}

}  // namespace ssmhd
