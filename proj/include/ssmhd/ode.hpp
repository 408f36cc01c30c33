#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ssmhd {

/// Right-hand side of y' = f(t, y); writes the derivative into dydt.
using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_max = 0.0;   // 0 = interval length
  double h_init = 0.0;  // 0 = automatic
  long max_steps = 500000;
  double blow_up_limit = 1e8;
  bool dense = false;  // store the continuous extension
};

enum class OdeStatus {
  ok,
  blow_up,        // a state component exceeded blow_up_limit
  step_collapse,  // step size shrank to rounding level
  max_steps,
};

/// Piecewise degree-7 polynomial continuous extension of a dop853 run.
/// Each accepted step stores power-basis coefficients, so first and second
/// derivatives of the interpolant are available directly.
class DenseOutput {
 public:
  void add_step(double t0, double h, std::size_t n, const double* coeffs);

  void eval(double t, double* out) const;    // y(t)
  void eval_d1(double t, double* out) const;  // y'(t)
  void eval_d2(double t, double* out) const;  // y''(t)

  double component(double t, std::size_t i) const;
  double component_d1(double t, std::size_t i) const;
  double component_d2(double t, std::size_t i) const;

  double t_begin() const { return steps_.empty() ? 0.0 : steps_.front().t0; }
  double t_end() const { return steps_.empty() ? 0.0 : steps_.back().t0 + steps_.back().h; }
  bool empty() const { return steps_.empty(); }
  std::size_t dim() const { return n_; }

 private:
  struct Step {
    double t0 = 0, h = 0;
    std::vector<double> c;  // n * 8 power-basis coefficients
  };
  const Step& locate(double t) const;

  std::vector<Step> steps_;
  std::size_t n_ = 0;
};

struct OdeResult {
  OdeStatus status = OdeStatus::ok;
  double t_reached = 0.0;
  std::vector<double> y;
  DenseOutput dense;
  long n_steps = 0;
  long n_rejected = 0;
  long n_rhs = 0;
};

/// Adaptive eighth-order Dormand-Prince integration from t0 to t_end > t0.
OdeResult dop853_integrate(const OdeRhs& rhs, double t0, std::vector<double> y0, double t_end,
                           const OdeOptions& opt);

/// One dop853 step per mesh interval, no error control. The mesh is the
/// caller's responsibility; used where a parameter-independent step sequence
/// matters more than adaptivity.
struct MeshResult {
  OdeStatus status = OdeStatus::ok;
  std::size_t nodes_completed = 0;          // states[0 .. nodes_completed-1] valid
  std::vector<std::vector<double>> states;  // one state per mesh node
};

MeshResult dop853_integrate_mesh(const OdeRhs& rhs, std::vector<double> y0,
                                 const std::vector<double>& mesh, double blow_up_limit = 1e8);

}  // namespace ssmhd
