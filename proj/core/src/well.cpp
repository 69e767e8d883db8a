#include "acvf/well.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace acvf {

DoubleWell::DoubleWell() : kind_(Kind::quartic) {}

DoubleWell DoubleWell::tabulated(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() < 8 || nodes.size() != values.size())
    throw std::invalid_argument("tabulated well needs >= 8 matching nodes/values");
  if (!std::is_sorted(nodes.begin(), nodes.end()))
    throw std::invalid_argument("tabulated well nodes must be increasing");
  const double A = std::max(std::abs(nodes.front()), std::abs(nodes.back()));
  if (nodes.front() > -2.0 || nodes.back() < 2.0)
    throw std::invalid_argument("tabulated well must cover [-A, A] with A >= 2");
  (void)A;
  DoubleWell w;
  w.kind_ = Kind::tabulated;
  w.nodes_ = std::move(nodes);
  w.build_spline(values);
  return w;
}

DoubleWell DoubleWell::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open well CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty well CSV: " + path);
  // header required; reject a numeric-looking first line
  {
    std::istringstream probe(line);
    double x;
    if (probe >> x) throw std::runtime_error("well CSV must start with a header line: " + path);
  }
  std::vector<double> s, W;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b;
    if (!(row >> a >> b)) throw std::runtime_error("malformed well CSV row: " + line);
    s.push_back(a);
    W.push_back(b);
  }
  return tabulated(std::move(s), std::move(W));
}

void DoubleWell::build_spline(const std::vector<double>& values) {
  // natural cubic spline on possibly non-uniform nodes
  const size_t n = nodes_.size();
  std::vector<double> h(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = nodes_[i + 1] - nodes_[i];
    if (h[i] <= 0) throw std::invalid_argument("well nodes must be strictly increasing");
  }
  // second derivatives m by tridiagonal solve
  std::vector<double> m(n, 0.0), diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
  diag[0] = diag[n - 1] = 1.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    sub[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * ((values[i + 1] - values[i]) / h[i] - (values[i] - values[i - 1]) / h[i - 1]);
  }
  for (size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m[n - 1] = rhs[n - 1] / diag[n - 1];
  for (size_t i = n - 1; i-- > 0;) m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];

  a_.resize(n - 1);
  b_.resize(n - 1);
  c_.resize(n - 1);
  d_.resize(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    a_[i] = values[i];
    b_[i] = (values[i + 1] - values[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    c_[i] = m[i] / 2.0;
    d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
  }
}

double DoubleWell::domain_half_width() const {
  if (kind_ == Kind::quartic) return std::numeric_limits<double>::infinity();
  return std::min(-nodes_.front(), nodes_.back());
}

double DoubleWell::eval(double s, int order) const {
  if (order < 0 || order > 2) throw std::invalid_argument("eval order must be 0, 1 or 2");
  if (kind_ == Kind::quartic) {
    switch (order) {
      case 0: return (1.0 - s * s) * (1.0 - s * s) / 4.0;
      case 1: return s * s * s - s;
      default: return 3.0 * s * s - 1.0;
    }
  }
  if (s < nodes_.front() || s > nodes_.back())
    throw std::domain_error("tabulated well evaluated outside [-A, A]");
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
  size_t i = static_cast<size_t>(std::max<ptrdiff_t>(0, it - nodes_.begin() - 1));
  i = std::min(i, nodes_.size() - 2);
  const double dx = s - nodes_[i];
  switch (order) {
    case 0: return a_[i] + dx * (b_[i] + dx * (c_[i] + dx * d_[i]));
    case 1: return b_[i] + dx * (2.0 * c_[i] + dx * 3.0 * d_[i]);
    default: return 2.0 * c_[i] + dx * 6.0 * d_[i];
  }
}

void DoubleWell::validate() const {
  const double A = kind_ == Kind::quartic ? 2.0 : domain_half_width();
  const int N = 10000;
  int sign_changes = 0;
  double prev = eval(-A + 1e-9, 1);
  for (int k = 1; k <= N; ++k) {
    const double s = -A + 1e-9 + (2.0 * A - 2e-9) * k / N;
    const double w = eval(s, 0);
    if (w < -1e-12) throw std::runtime_error("well violates W >= 0 at s=" + std::to_string(s));
    const double wp = eval(s, 1);
    if (prev * wp < 0.0) ++sign_changes;
    if (wp != 0.0) prev = wp;
  }
  if (std::abs(eval(1.0, 0)) > 1e-10 || std::abs(eval(-1.0, 0)) > 1e-10)
    throw std::runtime_error("well must vanish at +-1");
  if (eval(1.0, 2) <= 0.0 || eval(-1.0, 2) <= 0.0)
    throw std::runtime_error("well must have W''(+-1) > 0");
  if (sign_changes != 3)
    throw std::runtime_error("well must have exactly three critical points, found " +
                             std::to_string(sign_changes));
}

double DoubleWell::interior_maximum() const {
  if (kind_ == Kind::quartic) return 0.0;
  // dense scan for the maximum of W on (-1, 1), then a few bisections on W'
  const int N = 4096;
  double best_s = 0.0, best_w = -1.0;
  for (int k = 1; k < N; ++k) {
    const double s = -1.0 + 2.0 * k / N;
    const double w = eval(s, 0);
    if (w > best_w) {
      best_w = w;
      best_s = s;
    }
  }
  double lo = best_s - 2.0 / N, hi = best_s + 2.0 / N;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid, 1) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// adaptive Simpson with absolute tolerance
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, m, b == a ? fa : fa, fm, fb, whole, tol, 48);
}

}  // namespace

double sigma(const DoubleWell& well) {
  auto f = [&well](double s) { return std::sqrt(std::max(0.0, well.eval(s, 0)) / 2.0); };
  return integrate_adaptive(f, -1.0, 1.0, 1e-12);
}

StandingWave::StandingWave(const DoubleWell& well) : well_(well) {
  well_.validate();
  const double q0 = well_.interior_maximum();
  const double wpp1 = well_.eval(1.0, 2), wppm1 = well_.eval(-1.0, 2);
  kappa_plus_ = std::sqrt(wpp1);
  kappa_minus_ = std::sqrt(wppm1);
  dt_ = 0.005 / std::sqrt(std::max(wpp1, wppm1));
  auto f = [this](double q) { return std::sqrt(std::max(0.0, 2.0 * well_.eval(q, 0))); };
  auto rk4 = [&f](double q, double h) {
    const double k1 = f(q);
    const double k2 = f(q + 0.5 * h * k1);
    const double k3 = f(q + 0.5 * h * k2);
    const double k4 = f(q + h * k3);
    return q + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  std::vector<double> fwd{q0}, bwd;
  const double t_cap = 400.0 / std::min(kappa_plus_, kappa_minus_);
  double q = q0;
  while (1.0 - q > 1e-13 && dt_ * fwd.size() < t_cap) {
    q = std::min(rk4(q, dt_), 1.0);
    fwd.push_back(q);
  }
  q = q0;
  while (q + 1.0 > 1e-13 && dt_ * (bwd.size() + 1) < t_cap) {
    q = std::max(rk4(q, -dt_), -1.0);
    bwd.push_back(q);
  }
  q_.assign(bwd.rbegin(), bwd.rend());
  q_.insert(q_.end(), fwd.begin(), fwd.end());
  t_lo_ = -dt_ * static_cast<double>(bwd.size());
  t_hi_ = dt_ * static_cast<double>(fwd.size() - 1);
  qp_.resize(q_.size());
  for (size_t i = 0; i < q_.size(); ++i) {
    qp_[i] = f(q_[i]);
    if (i > 0 && q_[i] <= q_[i - 1] && qp_[i] > 0.0 && qp_[i - 1] > 0.0)
      throw std::runtime_error("standing wave profile is not strictly increasing");
  }
}

double StandingWave::value(double t) const {
  if (t >= t_hi_) {
    const double tail = 1.0 - q_.back();
    return 1.0 - tail * std::exp(-kappa_plus_ * (t - t_hi_));
  }
  if (t <= t_lo_) {
    const double tail = q_.front() + 1.0;
    return -1.0 + tail * std::exp(kappa_minus_ * (t - t_lo_));
  }
  const double s = (t - t_lo_) / dt_;
  size_t i = std::min(static_cast<size_t>(s), q_.size() - 2);
  const double x = s - static_cast<double>(i);  // in [0,1]
  // cubic Hermite with exact derivatives q' = sqrt(2W(q))
  const double h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
  const double h10 = x * (1.0 - x) * (1.0 - x);
  const double h01 = x * x * (3.0 - 2.0 * x);
  const double h11 = x * x * (x - 1.0);
  return h00 * q_[i] + h10 * dt_ * qp_[i] + h01 * q_[i + 1] + h11 * dt_ * qp_[i + 1];
}

double StandingWave::derivative(double t) const {
  return std::sqrt(std::max(0.0, 2.0 * well_.eval(std::clamp(value(t), -1.0, 1.0), 0)));
}

double standing_wave(const DoubleWell& well, double eps, double x) {
  if (eps <= 0.0) throw std::invalid_argument("standing_wave requires eps > 0");
  if (well.kind() == DoubleWell::Kind::quartic) {
    // closed form of the quartic profile; the ODE table is tested against it
    return std::tanh(x / (std::sqrt(2.0) * eps));
  }
  static std::mutex mu;
  static std::unordered_map<const DoubleWell*, std::shared_ptr<StandingWave>> cache;
  std::shared_ptr<StandingWave> sw;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[&well];
    if (!slot) slot = std::make_shared<StandingWave>(well);
    sw = slot;
  }
  return sw->value(x / eps);
}

}  // namespace acvf
