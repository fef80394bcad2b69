#include "archvar/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "archvar/errors.hpp"

namespace archvar {

QuantileFn QuantileFn::uniform() {
  static const auto impl =
      std::make_shared<const Impl>(Impl{[](double u) { return u; }, "uniform"});
  return QuantileFn(impl);
}

QuantileFn QuantileFn::constant(double value) {
  if (!std::isfinite(value)) {
    throw ArgumentError("constant quantile function must be finite");
  }
  std::ostringstream name;
  name << "constant(" << value << ")";
  return QuantileFn(std::make_shared<const Impl>(
      Impl{[value](double) { return value; }, name.str()}));
}

QuantileFn QuantileFn::tabulated(std::vector<double> u, std::vector<double> q) {
  if (u.size() != q.size()) {
    throw ArgumentError("tabulated quantile: column lengths differ");
  }
  if (u.size() < 2) {
    throw ArgumentError("tabulated quantile: need at least two rows");
  }
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!(u[k] >= 0.0 && u[k] <= 1.0) || !std::isfinite(q[k])) {
      throw ArgumentError("tabulated quantile: row " + std::to_string(k + 1) +
                          " has u outside [0, 1] or a non-finite quantile");
    }
    if (k > 0 && !(u[k] > u[k - 1] && q[k] > q[k - 1])) {
      throw ArgumentError("tabulated quantile: columns must be strictly "
                          "increasing (violated at row " +
                          std::to_string(k + 1) + ")");
    }
  }
  auto fn = [u = std::move(u), q = std::move(q)](double x) {
    if (x <= u.front()) return q.front();
    if (x >= u.back()) return q.back();
    const auto hi = std::upper_bound(u.begin(), u.end(), x) - u.begin();
    const auto lo = hi - 1;
    const double w = (x - u[lo]) / (u[hi] - u[lo]);
    return q[lo] + w * (q[hi] - q[lo]);
  };
  return QuantileFn(std::make_shared<const Impl>(Impl{std::move(fn), "tabulated"}));
}

QuantileFn QuantileFn::from_function(std::function<double(double)> fn,
                                     std::string name) {
  if (!fn) throw ArgumentError("quantile function is empty");
  constexpr int kGrid = 1000;
  constexpr double kEdge = 1e-6;
  double prev = -HUGE_VAL;
  for (int k = 0; k <= kGrid; ++k) {
    const double u = kEdge + (1.0 - 2.0 * kEdge) * k / kGrid;
    const double v = fn(u);
    if (!std::isfinite(v)) {
      throw ArgumentError("quantile function '" + name +
                          "' is not finite at u = " + std::to_string(u));
    }
    if (v < prev) {
      throw ArgumentError("quantile function '" + name +
                          "' decreases near u = " + std::to_string(u));
    }
    prev = v;
  }
  return QuantileFn(
      std::make_shared<const Impl>(Impl{std::move(fn), std::move(name)}));
}

QuantileFn QuantileFn::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ArgumentError("quantile scale factor must be positive and finite");
  }
  std::ostringstream name;
  name << factor << "*" << impl_->name;
  return QuantileFn(std::make_shared<const Impl>(
      Impl{[inner = impl_, factor](double u) { return factor * inner->fn(u); },
           name.str()}));
}

Margins uniform_margins(int dim) {
  if (dim < 1) throw ArgumentError("margin count must be positive");
  return Margins(static_cast<std::size_t>(dim), QuantileFn::uniform());
}

}  // namespace archvar
