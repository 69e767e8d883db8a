#pragma once

#include <memory>
#include <string>
#include <vector>

namespace acvf {

/// Double-well potential W with strict minima at +-1, W(+-1)=0, W''(+-1)>0
/// and exactly one interior local maximum. Either the quartic
/// W(s) = (1-s^2)^2/4 in closed form, or a user-tabulated well on [-A, A]
/// interpolated by a cubic spline.
class DoubleWell {
 public:
  enum class Kind { quartic, tabulated };

  DoubleWell();  // quartic

  /// Tabulated well from sample nodes/values of W on [-A, A], A >= 2.
  /// Nodes must be strictly increasing.
  static DoubleWell tabulated(std::vector<double> nodes, std::vector<double> values);

  /// Two-column CSV "s,W" with a mandatory header line.
  static DoubleWell from_csv(const std::string& path);

  Kind kind() const { return kind_; }
  double domain_half_width() const;  // A (infinity for quartic)

  /// W, W' or W'' at s. order must be 0, 1 or 2; tabulated wells require
  /// s within [-A, A].
  double eval(double s, int order = 0) const;

  /// Checks the structural hypotheses by dense sampling (1e4 points):
  /// W >= 0, W(+-1) = 0, W''(+-1) > 0, and W' changes sign exactly three
  /// times (minima at +-1, one interior maximum). Throws on violation.
  /// A certification by sampling, not a proof.
  void validate() const;

  /// Location of the interior local maximum of W between the minima.
  double interior_maximum() const;

 private:
  Kind kind_ = Kind::quartic;
  // tabulated representation: uniform or non-uniform nodes + natural cubic
  // spline coefficients (per-interval a + b dx + c dx^2 + d dx^3)
  std::vector<double> nodes_, a_, b_, c_, d_;
  void build_spline(const std::vector<double>& values);
};

/// Surface tension sigma = integral_{-1}^{1} sqrt(W(s)/2) ds by adaptive
/// Simpson quadrature, absolute error <= 1e-10.
double sigma(const DoubleWell& well);

/// 1D heteroclinic profile q with q'' = W'(q), q(0) = interior maximum of W,
/// q(+-inf) = +-1, computed from the first-order reduction q' = sqrt(2 W(q))
/// by adaptive RK4 and tabulated with cubic Hermite interpolation.
/// Equipartition q'^2/2 = W(q) holds exactly in the derivative evaluator.
class StandingWave {
 public:
  explicit StandingWave(const DoubleWell& well);

  double value(double t) const;       // q(t)
  double derivative(double t) const;  // q'(t) = sqrt(2 W(q(t)))

  const DoubleWell& well() const { return well_; }
  double table_min() const { return t_lo_; }
  double table_max() const { return t_hi_; }

 private:
  DoubleWell well_;
  double dt_ = 0.0, t_lo_ = 0.0, t_hi_ = 0.0;
  double kappa_minus_ = 0.0, kappa_plus_ = 0.0;  // tail rates sqrt(W''(-+1))
  std::vector<double> q_, qp_;  // values and exact derivatives at table nodes
};

/// q(x / eps) for the given well; shared per-well profile cache.
double standing_wave(const DoubleWell& well, double eps, double x);

}  // namespace acvf
