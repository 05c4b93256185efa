#pragma once

#include <functional>

namespace urllc {

// Probability strictly inside (0, 1).
class Probability {
 public:
  explicit Probability(double value);

  double value() const noexcept { return value_; }

  friend bool operator==(Probability, Probability) = default;

 private:
  double value_;
};

struct SolverSettings {
  double rel_tolerance = 1e-10;
  double abs_tolerance = 1e-14;
  // Stop as soon as |f(x)| <= residual_tolerance; 0 disables the test.
  double residual_tolerance = 0.0;
  int max_iterations = 200;

  // Throws DomainError if any field is out of range.
  void validate() const;
};

struct RootResult {
  double value = 0.0;
  int iterations = 0;
  // True when fixed_point had to switch to bracketed bisection.
  bool used_fallback = false;
};

using ScalarFunction = std::function<double(double)>;

// Standard normal tail Q(x) = P(Z > x).
double q_function(double x);

// Inverse of q_function on (0, 1). Throws DomainError outside the open interval.
double inv_q_function(double p);

// Bisection on a bracketing interval. Throws BracketError if f(lo) and f(hi)
// share a sign, ConvergenceError if max_iterations runs out first.
RootResult bisect(const ScalarFunction& f, double lo, double hi,
                  const SolverSettings& settings = {});

// Iterates x <- g(x) until |x - g(x)| <= max(abs_tolerance, rel_tolerance * |x|).
// After three detected oscillations, a divergent step, or an exhausted
// iteration budget, switches to bisection on x - g(x) over a bracket built from
// the visited iterates (or by expanding around x0).
RootResult fixed_point(const ScalarFunction& g, double x0,
                       const SolverSettings& settings = {});

}  // namespace urllc
