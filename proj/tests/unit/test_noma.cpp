#include <cmath>
#include <random>
#include <string>

#include <doctest.h>

#include "urllc/error.hpp"
#include "urllc/noma.hpp"

using namespace urllc;

TEST_SUITE("noma") {
  TEST_CASE("sinr_triple hand-computed example") {
    // h1 = 2, h2 = 1, rho = 10, alphas 0.2 / 0.8.
    const NomaLink link(LinkGeometry(2.0, 1.0), 10.0);
    const SinrTriple lit = sinr_triple(link, SinrMode::PaperLiteral);
    CHECK(lit.gamma_22.linear() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(lit.gamma_12.linear() == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
    CHECK(lit.gamma_11.linear() == doctest::Approx(4.0).epsilon(1e-15));

    const SinrTriple cor = sinr_triple(link, SinrMode::Corrected);
    CHECK(cor.gamma_12.linear() == doctest::Approx(16.0 / 5.0).epsilon(1e-15));
    CHECK(cor.gamma_22.linear() == lit.gamma_22.linear());
    CHECK(cor.gamma_11.linear() == lit.gamma_11.linear());
  }

  TEST_CASE("equal channels collapse the two decodings of message 2") {
    const NomaLink link(LinkGeometry(1.5, 1.5), 7.0);
    for (auto mode : {SinrMode::PaperLiteral, SinrMode::Corrected}) {
      const SinrTriple t = sinr_triple(link, mode);
      CHECK(t.gamma_12.linear() == doctest::Approx(t.gamma_22.linear()).epsilon(1e-15));
    }
  }

  TEST_CASE("low power is noise limited") {
    const SinrTriple t = sinr_triple(NomaLink(LinkGeometry(2.0, 1.0), 1e-9));
    CHECK(t.gamma_22.linear() == doctest::Approx(0.8e-9).epsilon(1e-8));
    CHECK(t.gamma_11.linear() == doctest::Approx(0.4e-9).epsilon(1e-14));
  }

  TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(LinkGeometry(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(LinkGeometry(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(LinkGeometry(2.0, 1.0, 0.8, 0.2), DomainError);
    CHECK_THROWS_AS(LinkGeometry(2.0, 1.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(LinkGeometry(2.0, 1.0, 0.2, 0.7), DomainError);
    CHECK_THROWS_AS(NomaLink(LinkGeometry(2.0, 1.0), -1.0), DomainError);
    CHECK_THROWS_AS(NomaLink(LinkGeometry(2.0, 1.0), 0.0), DomainError);

    const LinkGeometry swapped(1.0, 2.0);
    CHECK(swapped.swapped());
    CHECK(swapped.h1_sq() == 2.0);
    CHECK(swapped.h2_sq() == 1.0);
    CHECK_FALSE(LinkGeometry(2.0, 1.0).swapped());
  }

  TEST_CASE("weak-user ceiling") {
    const LinkGeometry g(2.0, 1.0);
    CHECK(weak_user_sinr_ceiling(g) == doctest::Approx(4.0));
    const SinrTriple far = sinr_triple(NomaLink(g, 1e12));
    CHECK(far.gamma_22.linear() < 4.0);
    CHECK(far.gamma_22.linear() == doctest::Approx(4.0).epsilon(1e-9));

    SinrTriple target;
    target.gamma_22 = Sinr(4.0);
    try {
      solve_rho_for_targets(g, target);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      const std::string what = e.what();
      CHECK(what.find("22") != std::string::npos);
      CHECK(what.find('4') != std::string::npos);
    }
    target.gamma_22 = Sinr(3.999);
    CHECK(solve_rho_for_targets(g, target) > 0.0);
  }

  TEST_CASE("ceiling on gamma_12") {
    const LinkGeometry g(2.0, 1.0);
    SinrTriple target;
    // Literal supremum: a2 h1 / (a1 h2) = 8; corrected: a2 / a1 = 4.
    target.gamma_12 = Sinr(6.0);
    CHECK(solve_rho_for_targets(g, target, SinrMode::PaperLiteral) > 0.0);
    CHECK_THROWS_AS(solve_rho_for_targets(g, target, SinrMode::Corrected), InfeasibleError);
    target.gamma_12 = Sinr(8.0);
    CHECK_THROWS_AS(solve_rho_for_targets(g, target, SinrMode::PaperLiteral), InfeasibleError);
  }

  TEST_CASE("zero targets need zero power") {
    CHECK(solve_rho_for_targets(LinkGeometry(2.0, 1.0), SinrTriple{}) == 0.0);
  }

  TEST_CASE("gamma_11 alone has no ceiling") {
    SinrTriple target;
    target.gamma_11 = Sinr(1e6);
    const double rho = solve_rho_for_targets(LinkGeometry(2.0, 1.0), target);
    CHECK(rho == doctest::Approx(1e6 / (0.2 * 2.0)).epsilon(1e-14));
  }

  TEST_CASE("forward-inverse round trip") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double h2 = std::pow(10.0, -2.0 + 3.0 * u01(gen));
      const double h1 = h2 * (1.0 + 10.0 * u01(gen));
      const double a1 = 0.05 + 0.4 * u01(gen);
      const double rho = std::pow(10.0, -1.0 + 5.0 * u01(gen));
      const LinkGeometry g(h1, h2, a1, 1.0 - a1);
      for (auto mode : {SinrMode::PaperLiteral, SinrMode::Corrected}) {
        const double back = solve_rho_for_targets(g, sinr_triple(NomaLink(g, rho), mode), mode);
        CHECK(std::abs(back - rho) / rho < 1e-9);
      }
    }
  }

  TEST_CASE("SINRs are increasing in rho") {
    const LinkGeometry g(3.0, 0.5, 0.3, 0.7);
    SinrTriple prev = sinr_triple(NomaLink(g, 0.1));
    for (double rho = 0.2; rho < 1e4; rho *= 2.0) {
      const SinrTriple t = sinr_triple(NomaLink(g, rho));
      CHECK(t.gamma_22.linear() > prev.gamma_22.linear());
      CHECK(t.gamma_12.linear() > prev.gamma_12.linear());
      CHECK(t.gamma_11.linear() > prev.gamma_11.linear());
      prev = t;
    }
  }
}
