#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace archvar {

/// Marginal quantile map u ↦ VaR_u(X) on (0, 1).
///
/// Copies share the underlying function, and same_as() compares that
/// identity; VaR routines use it to integrate each distinct margin once.
class QuantileFn {
 public:
  /// Identity map, the quantile function of U(0, 1). All calls return the
  /// same shared instance.
  static QuantileFn uniform();

  static QuantileFn constant(double value);

  /// Piecewise-linear interpolation through (u_k, q_k). Both columns must be
  /// strictly increasing and u must lie in [0, 1]. Outside [u_0, u_last] the
  /// end values are held.
  static QuantileFn tabulated(std::vector<double> u, std::vector<double> q);

  /// Wraps an arbitrary function. It is checked to be finite and
  /// nondecreasing on a grid over [1e-6, 1 - 1e-6]; ArgumentError otherwise.
  static QuantileFn from_function(std::function<double(double)> fn,
                                  std::string name);

  /// c·q(u) for c > 0.
  QuantileFn scaled(double factor) const;

  double operator()(double u) const { return impl_->fn(u); }
  const std::string& name() const { return impl_->name; }
  bool same_as(const QuantileFn& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    std::function<double(double)> fn;
    std::string name;
  };
  explicit QuantileFn(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

using Margins = std::vector<QuantileFn>;

Margins uniform_margins(int dim);

}  // namespace archvar
