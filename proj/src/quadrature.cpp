#include "archvar/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "archvar/errors.hpp"

namespace archvar {

namespace {

// Kronrod abscissae on (0, 1]; odd indices (1, 3, ...) are the Gauss nodes.
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_21(const std::function<double(double)>& f, double a,
                       double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::fabs(half);

  std::array<double, 10> left{};
  std::array<double, 10> right{};
  const double fc = f(center);
  double gauss = 0.0;
  double kronrod = kKronrodWeights[10] * fc;
  double resabs = std::fabs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    left[j] = f1;
    right[j] = f2;
    kronrod += kKronrodWeights[j] * (f1 + f2);
    resabs += kKronrodWeights[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * kronrod;
  double resasc = kKronrodWeights[10] * std::fabs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kKronrodWeights[j] *
              (std::fabs(left[j] - mean) + std::fabs(right[j] - mean));
  }
  resabs *= abs_half;
  resasc *= abs_half;

  double err = std::fabs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, kronrod * half, err};
}

// Breakpoints at a + (b-a)·2^{-k} and b - (b-a)·2^{-k}.
std::vector<double> graded_mesh(double a, double b) {
  constexpr int kLevels = 6;
  const double width = b - a;
  std::vector<double> pts;
  pts.reserve(2 * kLevels + 3);
  pts.push_back(a);
  for (int k = kLevels; k >= 2; --k) pts.push_back(a + width * std::ldexp(1.0, -k));
  pts.push_back(a + 0.5 * width);
  for (int k = 2; k <= kLevels; ++k) pts.push_back(b - width * std::ldexp(1.0, -k));
  pts.push_back(b);
  return pts;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("quadrature max_subdivisions must be at least 1");
  }
}

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (a == b) return {0.0, 0.0, 0};
  if (a > b) {
    QuadResult r = integrate(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_err = 0.0;
  const std::vector<double> mesh = graded_mesh(a, b);
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    Panel p = gauss_kronrod_21(f, mesh[i], mesh[i + 1]);
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }

  int splits = 0;
  auto converged = [&] {
    return total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
  };
  while (!converged()) {
    if (splits >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "integrate: no convergence on [" << a << ", " << b << "] after "
          << splits << " subdivisions (estimate " << total << ", error "
          << total_err << ")";
      throw NumericalError(msg.str(), total, total_err);
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel is at machine resolution; its error cannot be reduced further.
      std::ostringstream msg;
      msg << "integrate: panel [" << worst.a << ", " << worst.b
          << "] reached machine resolution (estimate " << total << ", error "
          << total_err << ")";
      throw NumericalError(msg.str(), total, total_err);
    }
    panels.pop();
    const Panel lo = gauss_kronrod_21(f, worst.a, mid);
    const Panel hi = gauss_kronrod_21(f, mid, worst.b);
    total += lo.value + hi.value - worst.value;
    total_err += lo.error + hi.error - worst.error;
    panels.push(lo);
    panels.push(hi);
    ++splits;
  }

  // Re-sum from the panels to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  return {value, err, splits};
}

}  // namespace archvar
