#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "urllc/fbl.hpp"
#include "urllc/noma.hpp"
#include "urllc/numerics.hpp"
#include "urllc/traffic.hpp"

namespace urllc {

// Overall loss target eps_d = eps_c + eps_q.
struct ReliabilityBudget {
  double eps_d = 0.0;
  double eps_c = 0.0;
  double eps_q = 0.0;

  // Builds eps_c = ratio * eps_d and eps_q = eps_d - eps_c. Throws DomainError
  // if eps_d is not in (0, 1) or either share is empty.
  static ReliabilityBudget from_ratio(double eps_d, double ratio);
};

struct SplitPolicy {
  enum class Kind { Equal, Fixed, Optimized };

  Kind kind = Kind::Equal;
  // Fraction of eps_d given to transmission errors (Kind::Fixed only).
  double ratio = 0.5;

  static SplitPolicy equal() { return {}; }
  static SplitPolicy fixed(double ratio) { return {Kind::Fixed, ratio}; }
  static SplitPolicy optimized() { return {Kind::Optimized, 0.5}; }
};

struct SinrSolution {
  Sinr gamma{0.0};
  // Fixed-point (plus fallback) iterations; 0 for closed-form cases.
  int iterations = 0;
  bool used_fallback = false;
};

// Solves ln(1 + gamma) = T_f u ln2 E_B(theta) / n + sqrt(V(gamma) / n) Qinv(eps_c)
// with n = phi B, i.e. the gamma at which achievable_packets equals the
// constant-rate demand T_f E_B(theta). When the demand is zero the answer is 0.
SinrSolution solve_required_sinr(const SystemConfig& cfg, const TrafficModel& traffic,
                                 QosExponent qos, Probability eps_c,
                                 DispersionMode mode = DispersionMode::PaperLiteral);

// Orthogonal baseline: same equation with the blocklength halved, so both the
// demand term and the dispersion term double under the logarithm.
SinrSolution solve_required_sinr_oma(const SystemConfig& cfg, const TrafficModel& traffic,
                                     QosExponent qos, Probability eps_c,
                                     DispersionMode mode = DispersionMode::PaperLiteral);

inline Sinr required_sinr(const SystemConfig& cfg, const TrafficModel& traffic, QosExponent qos,
                          Probability eps_c, DispersionMode mode = DispersionMode::PaperLiteral) {
  return solve_required_sinr(cfg, traffic, qos, eps_c, mode).gamma;
}

inline Sinr required_sinr_oma(const SystemConfig& cfg, const TrafficModel& traffic,
                              QosExponent qos, Probability eps_c,
                              DispersionMode mode = DispersionMode::PaperLiteral) {
  return solve_required_sinr_oma(cfg, traffic, qos, eps_c, mode).gamma;
}

// Splits eps_d between transmission errors and delay violations. The
// optimized policy searches the split (on a log-odds scale) that minimizes
// the required SINR when theta is derived from eps_q and cfg.delay_bound_s; it
// never returns a split worse than the equal one.
ReliabilityBudget split_budget(double eps_d, SplitPolicy policy, const SystemConfig& cfg,
                               const TrafficModel& traffic,
                               DispersionMode mode = DispersionMode::PaperLiteral);

enum class Message { M11, M12, M22 };

// "11", "12", "22": receiving user then decoded message.
std::string_view message_label(Message m);

struct Modes {
  DispersionMode dispersion = DispersionMode::PaperLiteral;
  SinrMode sinr = SinrMode::PaperLiteral;
};

// One arrival model per decoded message, indexed by Message.
struct MessageTraffic {
  TrafficModel m11;
  TrafficModel m12;
  TrafficModel m22;

  static MessageTraffic uniform(const TrafficModel& t) { return {t, t, t}; }
  const TrafficModel& operator[](Message m) const;
};

struct MessagePlan {
  Message message = Message::M11;
  TrafficModel traffic;
  std::optional<ReliabilityBudget> budget;
  // Empty when the stream has no arrivals (no queue to bound).
  std::optional<double> theta;
  double demand_packets_per_frame = 0.0;
  std::optional<double> required_sinr;
  int iterations = 0;
};

struct PlanResult {
  std::array<MessagePlan, 3> messages;
  std::optional<double> required_rho;
  bool feasible = false;
  // Names the binding infeasibility when feasible is false.
  std::string diagnostics;
  std::vector<std::string> warnings;
  Modes modes;
  SplitPolicy policy;
  double eps_d = 0.0;
};

// Per message: split eps_d, derive theta from eps_q, solve the required SINR;
// then reconcile the three SINR targets into one transmit SNR. In-domain
// inputs never throw; infeasibility is reported in the result.
PlanResult plan_noma(const SystemConfig& cfg, const MessageTraffic& traffic,
                     const LinkGeometry& geometry, double eps_d, SplitPolicy policy = {},
                     Modes modes = {});

struct MessageResidual {
  Message message = Message::M11;
  // (achievable_packets(gamma) - T_f E_B(theta)) / (T_f E_B(theta)); absolute
  // when the demand is zero.
  double residual = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<MessageResidual> residuals;
  double tolerance = 1e-9;
  bool pass = false;
};

// Checks the constant-rate service identity achievable_packets(gamma_ij) =
// T_f E_B(theta_ij) for every message of a feasible plan.
VerifyReport verify_plan(const PlanResult& plan, const SystemConfig& cfg,
                         double tolerance = 1e-9);

}  // namespace urllc
