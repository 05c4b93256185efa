#include "urllc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "urllc/error.hpp"

namespace urllc {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = std::numbers::inv_sqrtpi * kInvSqrt2;

// Q(x) underflows to zero just below x = 38.5, so [0, 40] brackets every
// representable tail probability.
constexpr double kUpperTailBracket = 40.0;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

bool converged(double width, double x, const SolverSettings& s) {
  return width <= std::max(s.abs_tolerance, s.rel_tolerance * std::abs(x));
}

// Solves Q(x) = p for p in (0, 0.5), so x > 0.
double upper_tail_quantile(double p) {
  const double log_p = std::log(p);
  auto residual = [log_p](double x) { return std::log(q_function(x)) - log_p; };

  double lo = 0.0;
  double hi = kUpperTailBracket;
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Newton on ln Q(x) - ln p; ln Q is concave so steps stay well behaved once
  // the bracket is this narrow.
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double q = q_function(x);
    const double step = (std::log(q) - log_p) * q / normal_pdf(x);
    double next = x + step;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (residual(next) > 0.0) {
      lo = next;
    } else {
      hi = next;
    }
    const bool done = std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * next;
    x = next;
    if (done) {
      break;
    }
  }
  return x;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    std::ostringstream msg;
    msg << "probability must lie in (0, 1), got " << value;
    throw DomainError(msg.str());
  }
}

void SolverSettings::validate() const {
  if (!(rel_tolerance > 0.0) || !(abs_tolerance > 0.0) || residual_tolerance < 0.0 ||
      max_iterations < 1) {
    throw DomainError("solver settings: tolerances must be positive and max_iterations >= 1");
  }
}

double q_function(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double inv_q_function(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "inv_q_function: p must lie in (0, 1), got " << p;
    throw DomainError(msg.str());
  }
  if (p == 0.5) {
    return 0.0;
  }
  if (p > 0.5) {
    // 1 - p is exact for p in [0.5, 1).
    return -upper_tail_quantile(1.0 - p);
  }
  return upper_tail_quantile(p);
}

RootResult bisect(const ScalarFunction& f, double lo, double hi, const SolverSettings& settings) {
  settings.validate();
  if (lo > hi) {
    std::swap(lo, hi);
  }
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) {
    return {lo, 0, false};
  }
  if (f_hi == 0.0) {
    return {hi, 0, false};
  }
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << lo << ", " << hi << "] (f(lo)=" << f_lo
        << ", f(hi)=" << f_hi << ")";
    throw BracketError(msg.str());
  }

  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      // Bracket is down to adjacent doubles.
      return {mid, iter, false};
    }
    const double f_mid = f(mid);
    if (f_mid == 0.0 || std::abs(f_mid) <= settings.residual_tolerance) {
      return {mid, iter, false};
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (converged(hi - lo, 0.5 * (lo + hi), settings)) {
      return {lo + 0.5 * (hi - lo), iter, false};
    }
  }
  std::ostringstream msg;
  msg << "bisect: no convergence after " << settings.max_iterations << " iterations, bracket ["
      << lo << ", " << hi << "]";
  throw ConvergenceError(msg.str());
}

RootResult fixed_point(const ScalarFunction& g, double x0, const SolverSettings& settings) {
  settings.validate();
  if (!std::isfinite(x0)) {
    throw DomainError("fixed_point: starting point must be finite");
  }

  // Visited points with their residual x - g(x), reused to build a bracket.
  std::vector<std::pair<double, double>> visited;
  double x = x0;
  double previous_step = 0.0;
  int oscillations = 0;
  int iter = 0;

  for (iter = 1; iter <= settings.max_iterations; ++iter) {
    const double gx = g(x);
    if (!std::isfinite(gx)) {
      break;
    }
    const double step = gx - x;
    visited.emplace_back(x, -step);
    if (converged(std::abs(step), x, settings)) {
      return {gx, iter, false};
    }
    if (previous_step != 0.0 && std::signbit(previous_step) != std::signbit(step)) {
      if (++oscillations >= 3) {
        break;
      }
    }
    previous_step = step;
    x = gx;
  }

  auto residual = [&g](double t) { return t - g(t); };

  std::sort(visited.begin(), visited.end());
  for (std::size_t i = 1; i < visited.size(); ++i) {
    const auto& [a, ra] = visited[i - 1];
    const auto& [b, rb] = visited[i];
    if (ra == 0.0) {
      return {a, iter, true};
    }
    if (std::signbit(ra) != std::signbit(rb)) {
      RootResult r = bisect(residual, a, b, settings);
      r.iterations += iter;
      r.used_fallback = true;
      return r;
    }
  }

  const double r0 = residual(x0);
  if (r0 == 0.0) {
    return {x0, iter, true};
  }
  const double scale = std::max(1.0, std::abs(x0));
  for (double d = 1.0; d <= 0x1p60; d *= 2.0) {
    for (const double candidate : {x0 - d * scale, x0 + d * scale}) {
      const double rc = residual(candidate);
      if (std::isfinite(rc) && std::signbit(rc) != std::signbit(r0)) {
        RootResult r = bisect(residual, std::min(x0, candidate), std::max(x0, candidate), settings);
        r.iterations += iter;
        r.used_fallback = true;
        return r;
      }
    }
  }

  std::ostringstream msg;
  msg << "fixed_point: no convergence from x0=" << x0 << " after " << settings.max_iterations
      << " iterations and no sign change of x - g(x) found within +/-" << 0x1p60 * scale
      << " of x0; last iterate " << x;
  throw ConvergenceError(msg.str());
}

}  // namespace urllc
