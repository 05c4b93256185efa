#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <doctest.h>

#include "oracles.hpp"
#include "urllc/error.hpp"
#include "urllc/planner.hpp"

using namespace urllc;

namespace {

const TrafficModel kTraffic{0.01, 5e-4};

double demand_nats(const SystemConfig& cfg, const TrafficModel& t, double theta, double share) {
  const double eb = t.mean_arrivals_per_frame * std::expm1(theta) / (t.frame_duration_s * theta);
  return cfg.frame_duration_s * eb * cfg.packet_size_bits * std::numbers::ln2 /
         (cfg.blocklength() / share);
}

// gamma from the grid scan in y = ln(1 + gamma).
double scanned_sinr(const SystemConfig& cfg, double theta, double eps_c, double share,
                    DispersionMode mode) {
  const double q = oracle::q_inverse_by_bisection(eps_c);
  const auto v = mode == DispersionMode::PaperLiteral ? oracle::literal_dispersion_of_y
                                                      : oracle::standard_dispersion_of_y;
  const double y =
      oracle::scan_required_log_sinr(demand_nats(cfg, kTraffic, theta, share), q,
                                     cfg.blocklength() / share, v);
  return std::expm1(y);
}

SystemConfig wideband() {
  SystemConfig c;
  c.bandwidth_hz = 1e6;
  return c;
}

}  // namespace

TEST_SUITE("planner") {
  TEST_CASE("required SINR against the grid-scan oracle") {
    const SystemConfig cfg;
    for (auto mode : {DispersionMode::PaperLiteral, DispersionMode::Standard}) {
      const double expected = scanned_sinr(cfg, 0.1, 1e-5, 1.0, mode);
      const double got = required_sinr(cfg, kTraffic, QosExponent(0.1), Probability(1e-5), mode).linear();
      CHECK(got == doctest::Approx(expected).epsilon(1e-8));
      const double expected_oma = scanned_sinr(cfg, 0.1, 1e-5, 2.0, mode);
      const double got_oma =
          required_sinr_oma(cfg, kTraffic, QosExponent(0.1), Probability(1e-5), mode).linear();
      CHECK(got_oma == doctest::Approx(expected_oma).epsilon(1e-8));
    }
  }

  TEST_CASE("required SINR golden values") {
    // mpmath, 40 digits.
    const SystemConfig cfg;
    const QosExponent qos(0.1);
    const Probability eps(1e-5);
    CHECK(required_sinr(cfg, kTraffic, qos, eps).linear() ==
          doctest::Approx(0.6952108503183995).epsilon(1e-9));
    CHECK(required_sinr_oma(cfg, kTraffic, qos, eps).linear() ==
          doctest::Approx(1.482585336543843).epsilon(1e-9));
    CHECK(required_sinr(cfg, kTraffic, qos, eps, DispersionMode::Standard).linear() ==
          doctest::Approx(1.026763590389142).epsilon(1e-9));
    CHECK(required_sinr_oma(cfg, kTraffic, qos, eps, DispersionMode::Standard).linear() ==
          doctest::Approx(1.992831158900363).epsilon(1e-9));

    SystemConfig one_use = cfg;
    one_use.tx_phase_s = 1e-5;
    CHECK(required_sinr(one_use, kTraffic, qos, eps).linear() ==
          doctest::Approx(167.5115806731531).epsilon(1e-9));
  }

  TEST_CASE("Shannon point closes in closed form") {
    const SystemConfig cfg;
    const double a = demand_nats(cfg, kTraffic, 0.1, 1.0);
    const SinrSolution sol = solve_required_sinr(cfg, kTraffic, QosExponent(0.1), Probability(0.5));
    CHECK(sol.iterations == 0);
    CHECK(sol.gamma.linear() == doctest::Approx(std::expm1(a)).epsilon(1e-14));
    const double noma = sol.gamma.linear();
    const double oma = required_sinr_oma(cfg, kTraffic, QosExponent(0.1), Probability(0.5)).linear();
    CHECK((1.0 + oma) == doctest::Approx((1.0 + noma) * (1.0 + noma)).epsilon(1e-12));
  }

  TEST_CASE("no arrivals need no SINR") {
    const SystemConfig cfg;
    const TrafficModel silent{0.0, 5e-4};
    CHECK(required_sinr(cfg, silent, QosExponent(0.1), Probability(1e-5)).linear() == 0.0);
    CHECK(required_sinr_oma(cfg, silent, QosExponent(0.1), Probability(1e-5)).linear() == 0.0);
  }

  TEST_CASE("frame mismatch is rejected") {
    const TrafficModel other{0.01, 1e-3};
    CHECK_THROWS_AS(required_sinr(SystemConfig{}, other, QosExponent(0.1), Probability(1e-5)),
                    DomainError);
  }

  TEST_CASE("round trip, OMA dominance and monotone trends over random draws") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      SystemConfig cfg;
      cfg.bandwidth_hz = std::pow(10.0, 5.0 + u01(gen));
      cfg.packet_size_bits = 8.0 * (5.0 + 30.0 * u01(gen));
      cfg.tx_phase_s = 1e-5 + (cfg.frame_duration_s - 1e-5) * u01(gen);
      const TrafficModel t{std::pow(10.0, -3.0 + 3.0 * u01(gen)), cfg.frame_duration_s};
      const QosExponent qos(std::pow(10.0, -3.0 + 3.0 * u01(gen)));
      const Probability eps(std::pow(10.0, -7.0 + 6.0 * u01(gen)));
      const double demand = cfg.frame_duration_s * effective_bandwidth(t, qos);
      for (auto mode : {DispersionMode::PaperLiteral, DispersionMode::Standard}) {
        const Sinr noma = required_sinr(cfg, t, qos, eps, mode);
        const Sinr oma = required_sinr_oma(cfg, t, qos, eps, mode);
        CHECK(std::abs(achievable_packets(noma, cfg, eps, mode) - demand) / demand < 1e-9);
        CHECK(std::abs(achievable_packets_oma(oma, cfg, eps, mode) - demand) / demand < 1e-9);
        CHECK(oma.linear() >= noma.linear());

        const Sinr stricter = required_sinr(cfg, t, qos, Probability(eps.value() / 2.0), mode);
        CHECK(stricter.linear() > noma.linear());
        const Sinr busier = required_sinr(cfg, t, QosExponent(qos.theta() * 1.5), eps, mode);
        CHECK(busier.linear() > noma.linear());
      }
    }
  }

  TEST_CASE("budget construction") {
    const ReliabilityBudget b = ReliabilityBudget::from_ratio(1e-5, 0.5);
    CHECK(b.eps_c == 5e-6);
    CHECK(b.eps_q == 5e-6);
    CHECK(b.eps_c + b.eps_q == doctest::Approx(1e-5).epsilon(1e-15));
    CHECK_THROWS_AS(ReliabilityBudget::from_ratio(1e-5, 0.0), DomainError);
    CHECK_THROWS_AS(ReliabilityBudget::from_ratio(1e-5, 1.0), DomainError);
    CHECK_THROWS_AS(ReliabilityBudget::from_ratio(1.5, 0.5), DomainError);

    const ReliabilityBudget f = split_budget(1e-5, SplitPolicy::fixed(0.25), SystemConfig{}, kTraffic);
    CHECK(f.eps_c == doctest::Approx(2.5e-6));
    CHECK(f.eps_q == doctest::Approx(7.5e-6));
  }

  TEST_CASE("optimized split beats equal and a dense grid") {
    const SystemConfig cfg = wideband();
    auto sinr_at = [&](double ratio) {
      const ReliabilityBudget b = ReliabilityBudget::from_ratio(1e-5, ratio);
      const QosExponent qos = solve_qos_exponent(kTraffic, DelayBound(cfg.delay_bound_s), b.eps_q);
      return required_sinr(cfg, kTraffic, qos, Probability(b.eps_c)).linear();
    };
    double grid_best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 200; ++i) {
      grid_best = std::min(grid_best, sinr_at(i / 200.0));
    }
    const ReliabilityBudget opt = split_budget(1e-5, SplitPolicy::optimized(), cfg, kTraffic);
    const double opt_sinr = sinr_at(opt.eps_c / opt.eps_d);
    CHECK(opt_sinr <= sinr_at(0.5));
    CHECK(opt_sinr <= grid_best * (1.0 + 1e-6));
  }

  TEST_CASE("message labels") {
    CHECK(message_label(Message::M11) == "11");
    CHECK(message_label(Message::M12) == "12");
    CHECK(message_label(Message::M22) == "22");
  }

  TEST_CASE("plan on the narrowband operating point hits the weak-user ceiling") {
    const PlanResult plan = plan_noma(SystemConfig{}, MessageTraffic::uniform(kTraffic),
                                      LinkGeometry(2.0, 1.0), 1e-5);
    CHECK_FALSE(plan.feasible);
    CHECK_FALSE(plan.required_rho.has_value());
    CHECK(plan.diagnostics.rfind("ceiling:", 0) == 0);
    CHECK(plan.diagnostics.find("22") != std::string::npos);
    CHECK_FALSE(plan.warnings.empty());
  }

  TEST_CASE("plan on a wideband carrier is feasible and verifies") {
    const SystemConfig cfg = wideband();
    for (auto policy : {SplitPolicy::equal(), SplitPolicy::optimized()}) {
      for (Modes modes : {Modes{}, Modes{DispersionMode::Standard, SinrMode::Corrected}}) {
        const PlanResult plan = plan_noma(cfg, MessageTraffic::uniform(kTraffic),
                                          LinkGeometry(2.0, 1.0), 1e-5, policy, modes);
        REQUIRE(plan.feasible);
        REQUIRE(plan.required_rho.has_value());
        CHECK(plan.diagnostics.empty());
        const VerifyReport report = verify_plan(plan, cfg);
        CHECK(report.pass);
        CHECK(report.residuals.size() == 3);

        // The achieved SINRs at the planned rho meet every target.
        const SinrTriple got = sinr_triple(NomaLink(LinkGeometry(2.0, 1.0), *plan.required_rho),
                                           modes.sinr);
        CHECK(got.gamma_11.linear() >= *plan.messages[0].required_sinr * (1.0 - 1e-12));
        CHECK(got.gamma_12.linear() >= *plan.messages[1].required_sinr * (1.0 - 1e-12));
        CHECK(got.gamma_22.linear() >= *plan.messages[2].required_sinr * (1.0 - 1e-12));

        PlanResult perturbed = plan;
        perturbed.messages[1].required_sinr = *perturbed.messages[1].required_sinr * 1.01;
        const VerifyReport bad = verify_plan(perturbed, cfg);
        CHECK_FALSE(bad.pass);
        CHECK_FALSE(bad.residuals[1].pass);
        CHECK(bad.residuals[0].pass);
      }
    }
  }

  TEST_CASE("plan with no traffic") {
    const PlanResult plan = plan_noma(SystemConfig{}, MessageTraffic::uniform({0.0, 5e-4}),
                                      LinkGeometry(2.0, 1.0), 1e-5);
    CHECK(plan.feasible);
    CHECK(*plan.required_rho == 0.0);
    for (const MessagePlan& mp : plan.messages) {
      CHECK(*mp.required_sinr == 0.0);
      CHECK_FALSE(mp.theta.has_value());
      CHECK_FALSE(mp.budget.has_value());
    }
    CHECK(verify_plan(plan, SystemConfig{}).pass);
  }

  TEST_CASE("plan reports unusable inputs instead of throwing") {
    SystemConfig bad;
    bad.tx_phase_s = 1e-3;
    const PlanResult p1 = plan_noma(bad, MessageTraffic::uniform(kTraffic), LinkGeometry(2.0, 1.0), 1e-5);
    CHECK_FALSE(p1.feasible);
    CHECK(p1.diagnostics.rfind("blocklength/system:", 0) == 0);

    // A delay bound so long that no positive theta can reach the target.
    SystemConfig slow = wideband();
    slow.delay_bound_s = 1e12;
    const PlanResult p2 = plan_noma(slow, MessageTraffic::uniform(kTraffic), LinkGeometry(2.0, 1.0), 0.5);
    CHECK_FALSE(p2.feasible);
    CHECK(p2.diagnostics.find("queue/budget infeasible") != std::string::npos);
  }
}
