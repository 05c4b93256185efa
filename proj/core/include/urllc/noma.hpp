#pragma once

#include <string>

#include "urllc/fbl.hpp"

namespace urllc {

// How the strong user's SINR for the weak user's message is formed.
enum class SinrMode {
  // Interference term uses the weak user's channel, as in the original
  // derivation: gamma_12 = a2 h1 rho / (a1 h2 rho + 1).
  PaperLiteral,
  // Interference term uses the strong user's own channel:
  // gamma_12 = a2 h1 rho / (a1 h1 rho + 1).
  Corrected,
};

// Channel power gains and the power split of a two-user downlink. User 1 is the
// strong user (h1_sq >= h2_sq) and gets the smaller share (alpha1 < alpha2).
class LinkGeometry {
 public:
  static constexpr double kDefaultAlpha1 = 0.2;
  static constexpr double kDefaultAlpha2 = 0.8;

  // Reorders the gains (and records it) if h1_sq < h2_sq. Throws DomainError
  // on non-positive gains, alphas outside (0, 1), alpha1 + alpha2 != 1 or
  // alpha2 <= alpha1.
  LinkGeometry(double h1_sq, double h2_sq, double alpha1 = kDefaultAlpha1,
               double alpha2 = kDefaultAlpha2);

  double h1_sq() const noexcept { return h1_sq_; }
  double h2_sq() const noexcept { return h2_sq_; }
  double alpha1() const noexcept { return alpha1_; }
  double alpha2() const noexcept { return alpha2_; }
  bool swapped() const noexcept { return swapped_; }

 private:
  double h1_sq_;
  double h2_sq_;
  double alpha1_;
  double alpha2_;
  bool swapped_ = false;
};

// Geometry plus transmit SNR rho = P / (N_o B), linear.
class NomaLink {
 public:
  NomaLink(LinkGeometry geometry, double rho);

  const LinkGeometry& geometry() const noexcept { return geometry_; }
  double rho() const noexcept { return rho_; }

 private:
  LinkGeometry geometry_;
  double rho_;
};

// gamma_ij: SINR at user i when decoding message j.
struct SinrTriple {
  Sinr gamma_22{0.0};
  Sinr gamma_12{0.0};
  Sinr gamma_11{0.0};
};

SinrTriple sinr_triple(const NomaLink& link, SinrMode mode = SinrMode::PaperLiteral);

// sup over rho of gamma_22: alpha2 / alpha1.
double weak_user_sinr_ceiling(const LinkGeometry& geometry);

// Smallest rho at which every component of sinr_triple meets its target.
// Returns 0 when all targets are 0. Throws InfeasibleError naming the
// constraint and its ceiling when an interference-limited target is at or
// above the supremum reachable as rho grows.
double solve_rho_for_targets(const LinkGeometry& geometry, const SinrTriple& target,
                             SinrMode mode = SinrMode::PaperLiteral);

}  // namespace urllc
