// test_params.cpp — containers, reduced units, and regime validity checks.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bhwg/errors.hpp"
#include "bhwg/params.hpp"

using namespace bhwg;

namespace {

bool has_error(const std::vector<Diagnostic>& notes) {
  for (const auto& n : notes) {
    if (n.severity == Severity::error) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("lattice params reject structural violations") {
  CHECK_THROWS_AS(validate(LatticeParams{.omega_c = 10.0, .J = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(LatticeParams{.omega_c = 10.0, .J = -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(LatticeParams{.omega_c = 10.0, .U = -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(LatticeParams{.omega_c = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(LatticeParams{.omega_c = 10.0, .N_p = 0}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(LatticeParams{.omega_c = nan}), std::invalid_argument);
}

TEST_CASE("omega_c below 5J warns without failing") {
  auto notes = validate(LatticeParams{.omega_c = 2.0});
  REQUIRE(notes.size() == 1);
  CHECK(notes[0].severity == Severity::warning);
  CHECK(validate(LatticeParams{.omega_c = 10.0}).empty());
}

TEST_CASE("emitter array invariants") {
  const LatticeParams lp{.omega_c = 10.0, .N_p = 64};
  EmitterArray em{.positions = {0, 5, 9}, .omega_e = 10.0, .g = 0.1};
  CHECK(validate(lp, em).empty());

  SUBCASE("empty positions") {
    em.positions.clear();
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
  }
  SUBCASE("not strictly increasing") {
    em.positions = {0, 5, 5};
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
  }
  SUBCASE("out of range") {
    em.positions = {0, 64};
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
    em.positions = {-1, 5};
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
  }
  SUBCASE("nonpositive rates") {
    em.omega_e = 0.0;
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
    em.omega_e = 10.0;
    em.g = 0.0;
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
    em.g = 0.1;
    em.gamma_prime = -1e-3;
    CHECK_THROWS_AS(validate(lp, em), std::invalid_argument);
  }
  SUBCASE("strong coupling warns") {
    em.g = 0.6;
    auto notes = validate(lp, em);
    REQUIRE(notes.size() == 1);
    CHECK(notes[0].severity == Severity::warning);
  }
}

TEST_CASE("reduced units round-trip to machine precision") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> freq(0.01, 50.0);
  std::uniform_real_distribution<double> hop(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    LatticeParams lp{.omega_c = freq(rng), .J = hop(rng), .U = freq(rng)};
    const double omega = freq(rng);
    const auto ru = reduced_units(lp, omega);
    CHECK(ru.w * 2.0 * lp.J == doctest::Approx(omega).epsilon(1e-15));
    CHECK(ru.w_c * 2.0 * lp.J == doctest::Approx(lp.omega_c).epsilon(1e-15));
    CHECK(ru.u_cal * 2.0 * lp.J == doctest::Approx(lp.U).epsilon(1e-15));
  }
}

TEST_CASE("superfluid regime check") {
  SUBCASE("weakly interacting condensate passes") {
    CHECK(validate_sf_regime(LatticeParams{.omega_c = 2.0, .U = 0.5}, SfParams{1.0}).empty());
  }
  SUBCASE("noninteracting limit passes") {
    CHECK(validate_sf_regime(LatticeParams{.omega_c = 2.0, .U = 0.0}, SfParams{1.0}).empty());
  }
  SUBCASE("low resonator frequency breaks the quasiparticle construction") {
    auto notes = validate_sf_regime(LatticeParams{.omega_c = 0.1, .U = 0.5}, SfParams{1.0});
    REQUIRE(!notes.empty());
    CHECK(has_error(notes));
  }
  SUBCASE("strong interaction warns") {
    auto notes = validate_sf_regime(LatticeParams{.omega_c = 10.0, .U = 1.0}, SfParams{1.0});
    REQUIRE(notes.size() == 1);
    CHECK(notes[0].severity == Severity::warning);
  }
  SUBCASE("malformed condensate fraction throws") {
    CHECK_THROWS_AS(validate_sf_regime(LatticeParams{.omega_c = 2.0}, SfParams{0.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("mott regime window") {
  SUBCASE("unit filling, high resonator frequency: unbounded window") {
    const auto win =
        validate_mi_regime(LatticeParams{.omega_c = 10.0, .U = 3.0}, MiParams{1});
    CHECK(win.u_min == 0.0);
    CHECK(std::isinf(win.u_max));
    CHECK(win.ok);
  }
  SUBCASE("unit filling, omega_c between 2J and 4J: lower edge 4J - omega_c") {
    const auto win =
        validate_mi_regime(LatticeParams{.omega_c = 3.0, .U = 2.0}, MiParams{1});
    CHECK(win.u_min == doctest::Approx(1.0));
    CHECK(std::isinf(win.u_max));
    CHECK(win.ok);
  }
  SUBCASE("double filling, high resonator frequency: bounded window") {
    const auto win =
        validate_mi_regime(LatticeParams{.omega_c = 10.0, .U = 3.0}, MiParams{2});
    CHECK(win.u_min == 0.0);
    CHECK(win.u_max == doctest::Approx(6.0));
    CHECK(win.ok);
  }
  SUBCASE("double filling, middle branch keeps the literal min/max pair") {
    // omega_c = 5J sits between 2*nbar*J = 4J and 2*(nbar+1)*J = 6J.
    const auto win =
        validate_mi_regime(LatticeParams{.omega_c = 5.0, .U = 3.0}, MiParams{2});
    CHECK(win.u_min == doctest::Approx(-0.5));
    CHECK(win.u_max == doctest::Approx(1.0));
    CHECK_FALSE(win.ok);
  }
  SUBCASE("soft Mott threshold: U below 2J is not ok even inside the window") {
    const auto win =
        validate_mi_regime(LatticeParams{.omega_c = 10.0, .U = 1.0}, MiParams{1});
    CHECK_FALSE(win.ok);
  }
  SUBCASE("omega_c at or below 2J is outside the case table") {
    CHECK_THROWS_AS(validate_mi_regime(LatticeParams{.omega_c = 2.0}, MiParams{1}),
                    PhysicsError);
    CHECK_THROWS_AS(validate_mi_regime(LatticeParams{.omega_c = 1.5}, MiParams{2}),
                    PhysicsError);
  }
  SUBCASE("malformed filling throws") {
    CHECK_THROWS_AS(validate_mi_regime(LatticeParams{.omega_c = 10.0}, MiParams{0}),
                    std::invalid_argument);
  }
  SUBCASE("accepted inputs always give an open window") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> freq(2.001, 30.0);
    std::uniform_int_distribution<int> fill(1, 5);
    for (int trial = 0; trial < 500; ++trial) {
      const LatticeParams lp{.omega_c = freq(rng), .U = 3.0};
      const auto win = validate_mi_regime(lp, MiParams{fill(rng)});
      CHECK(win.u_min < win.u_max);
    }
  }
}
