#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "urllc/error.hpp"
#include "urllc/numerics.hpp"
#include "urllc/traffic.hpp"

using namespace urllc;

namespace {

TrafficModel table1_traffic() { return TrafficModel{0.01, 5e-4}; }

// Independent inverse: bisection on the forward map in theta.
double theta_by_bisection(const TrafficModel& t, double bound_s, double target) {
  double lo = 1e-14;
  double hi = 1.0;
  auto excess = [&](double theta) {
    const double eb = t.mean_arrivals_per_frame * (std::exp(theta) - 1.0) /
                      (t.frame_duration_s * theta);
    return std::exp(-theta * eb * bound_s) - target;
  };
  while (excess(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("traffic") {
  TEST_CASE("effective_bandwidth matches the Poisson pmf summation") {
    const TrafficModel t = table1_traffic();
    const double eb = effective_bandwidth(t, QosExponent(0.1));
    const double oracle = oracle::poisson_log_mgf(0.01, 0.1) / (5e-4 * 0.1);
    CHECK(eb == doctest::Approx(oracle).epsilon(1e-12));
    // 0.01 (e^0.1 - 1) / (5e-4 * 0.1) = 21.0341836151295249623 (mpmath)
    CHECK(eb == doctest::Approx(21.03418361512952).epsilon(1e-13));

    for (double lambda : {0.01, 0.5, 5.0}) {
      for (double theta : {1e-3, 0.1, 1.0}) {
        CAPTURE(lambda);
        CAPTURE(theta);
        const TrafficModel m{lambda, 5e-4};
        const double want = oracle::poisson_log_mgf(lambda, theta) / (5e-4 * theta);
        CHECK(std::abs(effective_bandwidth(m, QosExponent(theta)) - want) / want < 1e-12);
      }
    }
  }

  TEST_CASE("effective_bandwidth limits") {
    const TrafficModel t = table1_traffic();
    const double mean_rate = 20.0;
    CHECK(std::abs(effective_bandwidth(t, QosExponent(1e-9)) - mean_rate) / mean_rate < 1e-6);
    const TrafficModel empty{0.0, 5e-4};
    for (double theta : {1e-6, 0.1, 10.0}) {
      CHECK(effective_bandwidth(empty, QosExponent(theta)) == 0.0);
    }
    CHECK_THROWS_AS(QosExponent(0.0), DomainError);
    CHECK_THROWS_AS(QosExponent(-1.0), DomainError);
  }

  TEST_CASE("effective_bandwidth is strictly increasing in theta") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> log_theta(-6.0, 1.5);
    const TrafficModel t{0.3, 1e-3};
    for (int i = 0; i < 500; ++i) {
      double a = std::pow(10.0, log_theta(gen));
      double b = std::pow(10.0, log_theta(gen));
      if (std::abs(a - b) < 1e-9 * std::max(a, b)) continue;
      if (a > b) std::swap(a, b);
      CHECK(effective_bandwidth(t, QosExponent(a)) < effective_bandwidth(t, QosExponent(b)));
    }
  }

  TEST_CASE("delay_violation_probability") {
    const TrafficModel t = table1_traffic();
    const QosExponent qos(0.1);
    // exp(-0.1 * 21.0341836151295 * 8e-4) = 0.99831868031500326 (mpmath)
    CHECK(delay_violation_probability(t, qos, DelayBound(8e-4)) ==
          doctest::Approx(0.9983186803150033).epsilon(1e-14));
    CHECK(delay_violation_probability(t, qos, DelayBound(1e-300)) == 1.0);
    CHECK_THROWS_AS(DelayBound(0.0), DomainError);

    const double p1 = delay_violation_probability(t, qos, DelayBound(8e-4));
    const double p2 = delay_violation_probability(t, qos, DelayBound(16e-4));
    CHECK(p2 == doctest::Approx(p1 * p1).epsilon(1e-12));

    // Clamped away from zero.
    const TrafficModel heavy{50.0, 5e-4};
    const double tiny = delay_violation_probability(heavy, QosExponent(20.0), DelayBound(1.0));
    CHECK(tiny > 0.0);
  }

  TEST_CASE("delay_violation_probability log identity and composition") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const TrafficModel t{0.001 + 2.0 * u01(gen), 1e-4 + 1e-3 * u01(gen)};
      const QosExponent qos(1e-3 + 2.0 * u01(gen));
      const double d1 = 1e-4 + 1e-3 * u01(gen);
      const double d2 = 1e-4 + 1e-3 * u01(gen);
      const double p = delay_violation_probability(t, qos, DelayBound(d1));
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
      const double exponent = qos.theta() * effective_bandwidth(t, qos) * d1;
      CHECK(std::abs(std::log(p) + exponent) <= 1e-12 * std::max(1.0, exponent));
      const double p12 = delay_violation_probability(t, qos, DelayBound(d1 + d2));
      const double p_2 = delay_violation_probability(t, qos, DelayBound(d2));
      CHECK(std::abs(p12 - p * p_2) <= 1e-12);
    }
  }

  TEST_CASE("eta scales the violation probability") {
    TrafficModel t = table1_traffic();
    t.eta = 0.5;
    const QosExponent qos(0.1);
    TrafficModel base = table1_traffic();
    CHECK(delay_violation_probability(t, qos, DelayBound(8e-4)) ==
          doctest::Approx(0.5 * delay_violation_probability(base, qos, DelayBound(8e-4))));
    t.eta = 1.5;
    CHECK_THROWS_AS(delay_violation_probability(t, qos, DelayBound(8e-4)), DomainError);
  }

  TEST_CASE("solve_qos_exponent") {
    const TrafficModel t = table1_traffic();
    const DelayBound d(8e-4);

    const QosExponent unit = solve_qos_exponent(t, d, std::exp(-1.0));
    CHECK(unit.theta() * effective_bandwidth(t, unit) * 8e-4 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.theta() == doctest::Approx(theta_by_bisection(t, 8e-4, std::exp(-1.0))).epsilon(1e-10));

    for (double theta : {0.01, 0.1, 1.0}) {
      const double p = delay_violation_probability(t, QosExponent(theta), d);
      CHECK(solve_qos_exponent(t, d, p).theta() == doctest::Approx(theta).epsilon(1e-8));
    }

    const QosExponent small = solve_qos_exponent(t, DelayBound(1e-6), 0.999999);
    CHECK(small.theta() > 0.0);
    CHECK(small.theta() ==
          doctest::Approx(theta_by_bisection(t, 1e-6, 0.999999)).epsilon(1e-8));

    CHECK_THROWS_AS(solve_qos_exponent(t, d, 0.0), DomainError);
    CHECK_THROWS_AS(solve_qos_exponent(t, d, 1.0), DomainError);
    CHECK_THROWS_AS(solve_qos_exponent(TrafficModel{0.0, 5e-4}, d, 0.5), InfeasibleError);
    // A barely-below-one target on a huge bound needs theta below 1e-12.
    CHECK_THROWS_AS(solve_qos_exponent(t, DelayBound(1e6), 1.0 - 1e-12), InfeasibleError);
  }
}
