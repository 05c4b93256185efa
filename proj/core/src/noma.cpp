#include "urllc/noma.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "urllc/error.hpp"

namespace urllc {

namespace {

constexpr double kAlphaSumTolerance = 1e-12;

// Minimum rho with s g rho / (i g rho + 1) >= target for signal share s,
// interference share i and channel gain g. Ceiling is s / i.
double rho_for_interference_limited(double target, double signal, double interference,
                                    double gain, const char* label) {
  if (target == 0.0) {
    return 0.0;
  }
  const double ceiling = signal / interference;
  const double headroom = signal - target * interference;
  if (!(target < ceiling) || !(headroom > 0.0)) {
    std::ostringstream msg;
    msg << "target " << label << " = " << target << " is at or above its ceiling " << ceiling
        << " (unreachable at any transmit power)";
    throw InfeasibleError(msg.str());
  }
  return target / (gain * headroom);
}

}  // namespace

LinkGeometry::LinkGeometry(double h1_sq, double h2_sq, double alpha1, double alpha2)
    : h1_sq_(h1_sq), h2_sq_(h2_sq), alpha1_(alpha1), alpha2_(alpha2) {
  if (!(h1_sq > 0.0) || !(h2_sq > 0.0) || !std::isfinite(h1_sq) || !std::isfinite(h2_sq)) {
    throw DomainError("link: channel gains must be finite and > 0");
  }
  if (!(alpha1 > 0.0 && alpha1 < 1.0) || !(alpha2 > 0.0 && alpha2 < 1.0)) {
    throw DomainError("link: power coefficients must lie in (0, 1)");
  }
  if (std::abs(alpha1 + alpha2 - 1.0) > kAlphaSumTolerance) {
    std::ostringstream msg;
    msg << "link: alpha1 + alpha2 must equal 1, got " << alpha1 + alpha2;
    throw DomainError(msg.str());
  }
  if (!(alpha2 > alpha1)) {
    std::ostringstream msg;
    msg << "link: the weak user needs the larger power share (alpha2 > alpha1), got alpha1="
        << alpha1 << ", alpha2=" << alpha2;
    throw DomainError(msg.str());
  }
  if (h1_sq_ < h2_sq_) {
    std::swap(h1_sq_, h2_sq_);
    swapped_ = true;
  }
}

NomaLink::NomaLink(LinkGeometry geometry, double rho) : geometry_(geometry), rho_(rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << "link: transmit SNR rho must be finite and > 0, got " << rho;
    throw DomainError(msg.str());
  }
}

SinrTriple sinr_triple(const NomaLink& link, SinrMode mode) {
  const LinkGeometry& g = link.geometry();
  const double rho = link.rho();
  const double interference_h = mode == SinrMode::PaperLiteral ? g.h2_sq() : g.h1_sq();
  SinrTriple t;
  t.gamma_22 = Sinr(g.alpha2() * g.h2_sq() * rho / (g.alpha1() * g.h2_sq() * rho + 1.0));
  t.gamma_12 = Sinr(g.alpha2() * g.h1_sq() * rho / (g.alpha1() * interference_h * rho + 1.0));
  t.gamma_11 = Sinr(g.alpha1() * g.h1_sq() * rho);
  return t;
}

double weak_user_sinr_ceiling(const LinkGeometry& geometry) {
  return geometry.alpha2() / geometry.alpha1();
}

double solve_rho_for_targets(const LinkGeometry& g, const SinrTriple& target, SinrMode mode) {
  const double rho_22 = rho_for_interference_limited(target.gamma_22.linear(), g.alpha2(),
                                                     g.alpha1(), g.h2_sq(), "gamma_22");
  // Literal: a2 h1 rho / (a1 h2 rho + 1); corrected: a2 h1 rho / (a1 h1 rho + 1).
  const double rho_12 =
      mode == SinrMode::PaperLiteral
          ? rho_for_interference_limited(target.gamma_12.linear(), g.alpha2() * g.h1_sq() / g.h2_sq(),
                                         g.alpha1(), g.h2_sq(), "gamma_12")
          : rho_for_interference_limited(target.gamma_12.linear(), g.alpha2(), g.alpha1(),
                                         g.h1_sq(), "gamma_12");
  const double rho_11 = target.gamma_11.linear() / (g.alpha1() * g.h1_sq());
  return std::max({rho_22, rho_12, rho_11});
}

}  // namespace urllc
