#include "ssmhd/pde_verify.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ssmhd {

double GridRegion::spacing() const {
  double s = 0.0;
  for (int d = 0; d < 3; ++d) s = std::max(s, (hi[d] - lo[d]) / (points_per_axis - 1));
  return s;
}

void GridRegion::validate() const {
  if (points_per_axis < 2) throw DomainError("GridRegion: need at least two points per axis");
  for (int d = 0; d < 3; ++d)
    if (!(hi[d] > lo[d])) throw DomainError("GridRegion: empty box");
  const double s = spacing();
  if (!(axis_exclusion > 2.0 * s) || !(origin_exclusion > 2.0 * s))
    throw DomainError("GridRegion: exclusion radii must exceed 2x the grid spacing");
}

namespace {

struct Accum {
  double max = 0, sq = 0;
  void add(double v) {
    const double a = std::abs(v);
    max = std::max(max, a);
    sq += v * v;
  }
  void add(const CartesianVec& v) {
    const double a = v.norm();
    max = std::max(max, a);
    sq += v.dot(v);
  }
  void merge(const Accum& o) {
    max = std::max(max, o.max);
    sq += o.sq;
  }
};

}  // namespace

ResidualReport mhd_residual_grid(const MhdFields& fields, const GridRegion& region, double h,
                                 int threads) {
  region.validate();
  if (!(h > 0.0)) throw DomainError("mhd_residual_grid: step must be positive");
  if (h * 2.0 >= std::min(region.axis_exclusion, region.origin_exclusion))
    throw ExclusionViolation(
        "mhd_residual_grid: stencil could reach the singular set through an exclusion zone");

  const bool has_B = static_cast<bool>(fields.B);
  const int n = region.points_per_axis;
  std::array<double, 3> d;
  for (int k = 0; k < 3; ++k) d[k] = (region.hi[k] - region.lo[k]) / (n - 1);

  const int n_threads = std::max(1, threads);
  std::vector<Accum> mom(n_threads), ind(n_threads), dvu(n_threads), dvB(n_threads);
  std::vector<long> counts(n_threads, 0);

  auto slab = [&](int tid) {
    Accum& a_mom = mom[tid];
    Accum& a_ind = ind[tid];
    Accum& a_dvu = dvu[tid];
    Accum& a_dvB = dvB[tid];
    for (int i = tid; i < n; i += n_threads) {
      const double x1 = region.lo[0] + i * d[0];
      for (int j = 0; j < n; ++j) {
        const double x2 = region.lo[1] + j * d[1];
        const double axis_dist = std::sqrt(x1 * x1 + x2 * x2);
        if (axis_dist <= region.axis_exclusion) continue;
        for (int k = 0; k < n; ++k) {
          const double x3 = region.lo[2] + k * d[2];
          const CartesianVec x{x1, x2, x3};
          if (x.norm() <= region.origin_exclusion) continue;

          const CartesianVec u0 = fields.u(x);
          CartesianVec lap_u, du_cols[3];
          double div_u = 0.0;
          {
            const CartesianVec axes[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
            for (int c = 0; c < 3; ++c) {
              const CartesianVec up = fields.u(x + axes[c]);
              const CartesianVec um = fields.u(x - axes[c]);
              lap_u = lap_u + (up - u0 * 2.0 + um) * (1.0 / (h * h));
              du_cols[c] = (up - um) * (1.0 / (2.0 * h));
            }
            div_u = du_cols[0].x1 + du_cols[1].x2 + du_cols[2].x3;
          }
          const CartesianVec conv_u =
              du_cols[0] * u0.x1 + du_cols[1] * u0.x2 + du_cols[2] * u0.x3;
          const CartesianVec grad_p = fd_gradient(fields.p, x, h);

          CartesianVec momentum = -1.0 * lap_u + conv_u + grad_p;
          if (has_B) {
            const CartesianVec B0 = fields.B(x);
            CartesianVec dB_cols[3];
            const CartesianVec axes[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
            for (int c = 0; c < 3; ++c)
              dB_cols[c] = (fields.B(x + axes[c]) - fields.B(x - axes[c])) * (1.0 / (2.0 * h));
            const CartesianVec BgradB = dB_cols[0] * B0.x1 + dB_cols[1] * B0.x2 + dB_cols[2] * B0.x3;
            const CartesianVec ugradB = dB_cols[0] * u0.x1 + dB_cols[1] * u0.x2 + dB_cols[2] * u0.x3;
            const CartesianVec Bgradu = du_cols[0] * B0.x1 + du_cols[1] * B0.x2 + du_cols[2] * B0.x3;
            momentum = momentum - BgradB;
            a_ind.add(ugradB - Bgradu);
            a_dvB.add(dB_cols[0].x1 + dB_cols[1].x2 + dB_cols[2].x3);
          } else {
            a_ind.add(0.0);
            a_dvB.add(0.0);
          }
          a_mom.add(momentum);
          a_dvu.add(div_u);
          ++counts[tid];
        }
      }
    }
  };

  if (n_threads == 1) {
    slab(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(slab, t);
    for (auto& t : pool) t.join();
  }

  Accum m, iacc, du_acc, dB_acc;
  long total = 0;
  for (int t = 0; t < n_threads; ++t) {
    m.merge(mom[t]);
    iacc.merge(ind[t]);
    du_acc.merge(dvu[t]);
    dB_acc.merge(dvB[t]);
    total += counts[t];
  }

  ResidualReport rep;
  rep.points = total;
  rep.fd_step = h;
  rep.region = region;
  if (total > 0) {
    rep.momentum_max = m.max;
    rep.momentum_rms = std::sqrt(m.sq / total);
    rep.induction_max = iacc.max;
    rep.induction_rms = std::sqrt(iacc.sq / total);
    rep.div_u_max = du_acc.max;
    rep.div_u_rms = std::sqrt(du_acc.sq / total);
    rep.div_B_max = dB_acc.max;
    rep.div_B_rms = std::sqrt(dB_acc.sq / total);
  }
  return rep;
}

ScalingDeviation scaling_invariance_check(const MhdFields& fields, std::span<const double> lambdas,
                                          std::span<const CartesianVec> samples) {
  ScalingDeviation dev;
  for (const CartesianVec& x : samples) {
    const CartesianVec u0 = fields.u(x);
    const CartesianVec B0 = fields.B ? fields.B(x) : CartesianVec{};
    const double p0 = fields.p ? fields.p(x) : 0.0;
    for (double lam : lambdas) {
      const CartesianVec xl = x * lam;
      dev.u_dev = std::max(dev.u_dev, (fields.u(xl) * lam - u0).norm());
      if (fields.B) dev.B_dev = std::max(dev.B_dev, (fields.B(xl) * lam - B0).norm());
      if (fields.p) dev.p_dev = std::max(dev.p_dev, std::abs(fields.p(xl) * lam * lam - p0));
    }
  }
  return dev;
}

double boundary_check(const MhdFields& fields, BoundaryKind bc,
                      std::span<const CartesianVec> plane_samples, double fd_step) {
  if (bc == BoundaryKind::full_space)
    throw DomainError("boundary_check: expects a half-space boundary condition");
  double worst = 0.0;
  const CartesianVec n{0, 0, -1.0};  // outward normal of x3 > 0
  for (const CartesianVec& x : plane_samples) {
    if (std::abs(x.x3) > 0.0) throw DomainError("boundary_check: samples must lie on x3 = 0");
    const CartesianVec u0 = fields.u(x);
    if (fields.B) worst = std::max(worst, std::abs(fields.B(x).dot(n)));
    if (bc == BoundaryKind::noslip) {
      worst = std::max(worst, u0.norm());
      continue;
    }
    worst = std::max(worst, std::abs(u0.dot(n)));
    // tangential components of the strain traction, one-sided into x3 > 0
    const double h = fd_step;
    const CartesianVec u1 = fields.u(x + CartesianVec{0, 0, h});
    const CartesianVec u2 = fields.u(x + CartesianVec{0, 0, 2.0 * h});
    const CartesianVec du_dx3 = (u0 * -3.0 + u1 * 4.0 - u2) * (1.0 / (2.0 * h));
    const double du3_dx1 =
        (fields.u(x + CartesianVec{h, 0, 0}).x3 - fields.u(x - CartesianVec{h, 0, 0}).x3) /
        (2.0 * h);
    const double du3_dx2 =
        (fields.u(x + CartesianVec{0, h, 0}).x3 - fields.u(x - CartesianVec{0, h, 0}).x3) /
        (2.0 * h);
    worst = std::max(worst, std::abs(-0.5 * (du_dx3.x1 + du3_dx1)));
    worst = std::max(worst, std::abs(-0.5 * (du_dx3.x2 + du3_dx2)));
  }
  return worst;
}

}  // namespace ssmhd
