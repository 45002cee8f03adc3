// test_superradiance.cpp — burst criterion algebra, decay delegation, and
// phase-map structure.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "bhwg/errors.hpp"
#include "bhwg/mi_bath.hpp"
#include "bhwg/sf_bath.hpp"
#include "bhwg/superradiance.hpp"

namespace {

constexpr double pi_v = 3.14159265358979323846;

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> values;
  values.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    values.push_back(lo + (hi - lo) * idx / (count - 1));
  }
  return values;
}

int row_transitions(const bhwg::BurstMap& map, int ne_index) {
  int transitions = 0;
  bool have_prev = false;
  bhwg::BurstCellState prev{};
  for (std::size_t iu = 0; iu < map.u_grid.size(); ++iu) {
    const auto& cell = map.cells[iu * map.ne_grid.size() + ne_index];
    if (cell.state == bhwg::BurstCellState::undefined) {
      have_prev = false;
      continue;
    }
    if (have_prev && cell.state != prev) {
      ++transitions;
    }
    prev = cell.state;
    have_prev = true;
  }
  return transitions;
}

}  // namespace

TEST_CASE("burst condition evaluates the closed inequality") {
  using bhwg::burst_condition;

  SUBCASE("two emitters never burst without parasitic decay") {
    for (double k : linspace(0.0, pi_v, 101)) {
      const auto crit = burst_condition(2, k, 0.0);
      const double cos_k = std::cos(k);
      CHECK(crit.lhs == doctest::Approx(1.0 + cos_k * cos_k).epsilon(1e-12));
      CHECK(crit.rhs == 2.0);
      CHECK_FALSE(crit.burst);
    }
  }

  SUBCASE("ten emitters at quarter momentum") {
    const auto crit = burst_condition(10, 0.5 * pi_v, 0.0);
    CHECK(crit.lhs == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(crit.rhs == 2.0);
    CHECK(crit.burst);
  }

  SUBCASE("mirror limit at both momentum endpoints") {
    const auto at_zero = burst_condition(4, 0.0, 0.0);
    CHECK(at_zero.lhs == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(at_zero.burst);
    const auto at_pi = burst_condition(4, pi_v, 0.0);
    CHECK(at_pi.lhs == doctest::Approx(4.0).epsilon(1e-12));
    const auto large = burst_condition(17, pi_v, 0.0);
    CHECK(large.lhs == doctest::Approx(8.5 + 17.0 * 17.0 / 34.0).epsilon(1e-12));
  }

  SUBCASE("matches the trigonometric form away from the nodes") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> pick_n(1, 64);
    std::uniform_real_distribution<double> pick_x(0.05, pi_v - 0.05);
    std::uniform_real_distribution<double> pick_ratio(0.0, 3.0);
    for (int draw = 0; draw < 400; ++draw) {
      const int n_e = pick_n(rng);
      const double x = pick_x(rng);
      const double ratio = pick_ratio(rng);
      const auto crit = burst_condition(n_e, x, ratio);
      const double sin_n = std::sin(n_e * x);
      const double sin_1 = std::sin(x);
      const double direct =
          0.5 * n_e + sin_n * sin_n / (2.0 * n_e * sin_1 * sin_1);
      CHECK(crit.lhs == doctest::Approx(direct).epsilon(1e-10));
      CHECK(crit.rhs == doctest::Approx(2.0 + ratio).epsilon(1e-14));
      CHECK(crit.burst == (crit.lhs > crit.rhs));
    }
  }

  SUBCASE("continuous through both removable singularities") {
    for (int n_e : {3, 8, 17}) {
      const double at_zero = burst_condition(n_e, 0.0, 0.0).lhs;
      const double at_pi = burst_condition(n_e, pi_v, 0.0).lhs;
      double gap_zero = 1e300;
      double gap_pi = 1e300;
      for (int level = 1; level <= 7; ++level) {
        const double x = std::pow(10.0, -level);
        const double near_zero = burst_condition(n_e, x, 0.0).lhs;
        const double near_pi = burst_condition(n_e, pi_v - x, 0.0).lhs;
        CHECK(std::isfinite(near_zero));
        CHECK(std::isfinite(near_pi));
        CHECK(std::abs(near_zero - at_zero) <= gap_zero + 1e-12);
        CHECK(std::abs(near_pi - at_pi) <= gap_pi + 1e-12);
        gap_zero = std::abs(near_zero - at_zero);
        gap_pi = std::abs(near_pi - at_pi);
      }
      CHECK(gap_zero <= 1e-9);
      CHECK(gap_pi <= 1e-9);
    }
  }

  SUBCASE("burst guaranteed at large emitter number") {
    for (double k : {0.0, 0.3, 0.5 * pi_v, 2.9, pi_v}) {
      for (double ratio : {0.0, 5.0, 20.0}) {
        int threshold = -1;
        for (int n_e = 1; n_e <= 64; ++n_e) {
          if (burst_condition(n_e, k, ratio).burst) {
            threshold = n_e;
            break;
          }
        }
        REQUIRE(threshold > 0);
        const int safe = static_cast<int>(2.0 * (2.0 + ratio)) + 1;
        for (int n_e = safe; n_e <= 64; ++n_e) {
          CHECK(burst_condition(n_e, k, ratio).burst);
        }
      }
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(burst_condition(0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(burst_condition(4, -0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(burst_condition(4, pi_v + 0.01, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(burst_condition(4, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(burst_condition(4, std::nan(""), 0.0), std::invalid_argument);
  }
}

TEST_CASE("single emitter decay delegates to the phase closed forms") {
  using bhwg::gamma_1d;
  const bhwg::SfParams sf{.n_0 = 1.0};
  const bhwg::MiParams mi{.n_bar = 1};

  SUBCASE("superfluid in-band values equal the closed form") {
    const bhwg::LatticeParams lp{.omega_c = 2.0, .J = 1.0, .U = 0.5};
    for (double omega : {1.2, 2.0, 3.5}) {
      CHECK(gamma_1d(bhwg::Phase::sf, omega, lp, sf, mi, 0.1) ==
            bhwg::gamma_sf(0, 0, omega, lp, sf, 0.1));
    }
  }

  SUBCASE("mott in-band values equal the closed form") {
    const bhwg::LatticeParams lp{.omega_c = 10.0, .J = 1.0, .U = 3.0};
    for (double omega : {9.5, 11.0, 13.0}) {
      CHECK(gamma_1d(bhwg::Phase::mi, omega, lp, sf, mi, 0.1) ==
            bhwg::gamma_mi(0, 0, omega, lp, mi, 0.1).gamma);
    }
  }

  SUBCASE("out-of-band frequencies are an error") {
    const bhwg::LatticeParams sf_lp{.omega_c = 2.0, .J = 1.0, .U = 0.5};
    CHECK_THROWS_AS(gamma_1d(bhwg::Phase::sf, 6.0, sf_lp, sf, mi, 0.1),
                    bhwg::PhysicsError);
    CHECK_THROWS_AS(gamma_1d(bhwg::Phase::sf, 0.5, sf_lp, sf, mi, 0.1),
                    bhwg::PhysicsError);
    const bhwg::LatticeParams mi_lp{.omega_c = 12.0, .J = 1.0, .U = 8.0};
    CHECK_THROWS_AS(gamma_1d(bhwg::Phase::mi, 15.0, mi_lp, sf, mi, 0.1),
                    bhwg::PhysicsError);
    CHECK_THROWS_AS(gamma_1d(bhwg::Phase::mi, 9.0, mi_lp, sf, mi, 0.1),
                    bhwg::PhysicsError);
    CHECK_THROWS_AS(gamma_1d(bhwg::Phase::mi, 30.0, mi_lp, sf, mi, 0.1),
                    bhwg::PhysicsError);
  }
}

TEST_CASE("burst phase maps") {
  using bhwg::BurstCellState;
  using bhwg::burst_phase_map;

  SUBCASE("superfluid map: banded row plus undefined tail") {
    const bhwg::BurstMapFixed fixed{.omega_e = 2.0,
                                    .omega_c = 2.0,
                                    .filling = 1.0,
                                    .gamma_prime = 0.03,
                                    .g = 0.1,
                                    .J = 1.0};
    const std::vector<int> ne_grid{2, 4, 6, 8};
    const auto map =
        burst_phase_map(bhwg::Phase::sf, linspace(0.0, 2.0, 21), ne_grid, fixed);
    REQUIRE(map.cells.size() == 21 * 4);
    double prev_k = 10.0;
    for (std::size_t iu = 0; iu < map.u_grid.size(); ++iu) {
      const double u = map.u_grid[iu];
      for (std::size_t in = 0; in < ne_grid.size(); ++in) {
        const auto& cell = map.cells[iu * ne_grid.size() + in];
        if (u > 1.16) {
          CHECK(cell.state == BurstCellState::undefined);
          CHECK(std::isnan(cell.k1d));
          CHECK(std::isnan(cell.gamma_1d));
          continue;
        }
        REQUIRE(cell.state != BurstCellState::undefined);
        const auto recomputed = bhwg::burst_condition(
            ne_grid[in], cell.k1d * bhwg::LatticeParams::d,
            fixed.gamma_prime / cell.gamma_1d);
        CHECK(cell.criterion.lhs == recomputed.lhs);
        CHECK(cell.criterion.rhs == recomputed.rhs);
        CHECK((cell.state == BurstCellState::burst) == recomputed.burst);
      }
      const auto& first_cell = map.cells[iu * ne_grid.size()];
      if (first_cell.state != BurstCellState::undefined) {
        CHECK(first_cell.k1d < prev_k);
        prev_k = first_cell.k1d;
      }
    }
    CHECK(row_transitions(map, 2) >= 1);
    const auto& low_u = map.cells[0 * ne_grid.size() + 2];
    const auto& high_u = map.cells[11 * ne_grid.size() + 2];
    CHECK(low_u.state == BurstCellState::no_burst);
    CHECK(high_u.state == BurstCellState::burst);
  }

  SUBCASE("two-emitter row never bursts at zero parasitic decay") {
    for (bhwg::Phase phase : {bhwg::Phase::sf, bhwg::Phase::mi}) {
      const bool is_sf = phase == bhwg::Phase::sf;
      const bhwg::BurstMapFixed fixed{.omega_e = is_sf ? 2.0 : 11.0,
                                      .omega_c = is_sf ? 2.0 : 10.0,
                                      .filling = 1.0,
                                      .gamma_prime = 0.0,
                                      .g = 0.1,
                                      .J = 1.0};
      const auto grid = is_sf ? linspace(0.0, 2.0, 21) : linspace(2.0, 8.0, 25);
      const auto map = burst_phase_map(phase, grid, {2}, fixed);
      for (const auto& cell : map.cells) {
        CHECK(cell.state != BurstCellState::burst);
      }
    }
  }

  SUBCASE("mott map stays defined and flips with interaction strength") {
    const bhwg::BurstMapFixed fixed{.omega_e = 11.0,
                                    .omega_c = 10.0,
                                    .filling = 1.0,
                                    .gamma_prime = 0.03,
                                    .g = 0.1,
                                    .J = 1.0};
    const std::vector<int> ne_grid{2, 6, 8};
    const auto map = burst_phase_map(bhwg::Phase::mi, linspace(2.0, 8.0, 25),
                                     ne_grid, fixed);
    for (const auto& cell : map.cells) {
      CHECK(cell.state != BurstCellState::undefined);
    }
    const int row = 1;  // the six-emitter row
    const auto state_at = [&](std::size_t iu) {
      return map.cells[iu * ne_grid.size() + row].state;
    };
    CHECK(state_at(0) == BurstCellState::no_burst);
    CHECK(state_at(24) == BurstCellState::no_burst);
    bool any_burst = false;
    for (std::size_t iu = 0; iu < 25; ++iu) {
      any_burst = any_burst || state_at(iu) == BurstCellState::burst;
    }
    CHECK(any_burst);
    CHECK(row_transitions(map, row) >= 2);
    // Band handoff: the selected momentum jumps when the dominant kernel
    // switches between the doublon and holon branches.
    bool jump = false;
    for (std::size_t iu = 1; iu < 25; ++iu) {
      jump = jump || std::abs(map.cells[iu * ne_grid.size()].k1d -
                              map.cells[(iu - 1) * ne_grid.size()].k1d) > 0.5;
    }
    CHECK(jump);
    for (std::size_t iu = 0; iu < 25; ++iu) {
      if (map.u_grid[iu] >= 5.4) {
        const double k = map.cells[iu * ne_grid.size()].k1d;
        CHECK(k > 1.9);
        CHECK(k < 2.0);
      }
    }
  }

  SUBCASE("identical requests give identical maps") {
    const bhwg::BurstMapFixed fixed{.omega_e = 11.0,
                                    .omega_c = 10.0,
                                    .filling = 1.0,
                                    .gamma_prime = 0.02,
                                    .g = 0.1,
                                    .J = 1.0};
    const auto grid = linspace(2.0, 6.0, 9);
    const std::vector<int> ne_grid{2, 6};
    const auto first = burst_phase_map(bhwg::Phase::mi, grid, ne_grid, fixed);
    const auto second = burst_phase_map(bhwg::Phase::mi, grid, ne_grid, fixed);
    REQUIRE(first.cells.size() == second.cells.size());
    for (std::size_t idx = 0; idx < first.cells.size(); ++idx) {
      CHECK(first.cells[idx].state == second.cells[idx].state);
      if (first.cells[idx].state != BurstCellState::undefined) {
        CHECK(first.cells[idx].k1d == second.cells[idx].k1d);
        CHECK(first.cells[idx].gamma_1d == second.cells[idx].gamma_1d);
      }
    }
  }

  SUBCASE("map input validation") {
    const bhwg::BurstMapFixed fixed{.omega_e = 2.0,
                                    .omega_c = 2.0,
                                    .filling = 1.0,
                                    .gamma_prime = 0.0,
                                    .g = 0.1,
                                    .J = 1.0};
    CHECK_THROWS_AS(burst_phase_map(bhwg::Phase::sf, {}, {2}, fixed),
                    std::invalid_argument);
    CHECK_THROWS_AS(burst_phase_map(bhwg::Phase::sf, {0.5}, {}, fixed),
                    std::invalid_argument);
    CHECK_THROWS_AS(burst_phase_map(bhwg::Phase::sf, {0.5}, {0}, fixed),
                    std::invalid_argument);
    CHECK_THROWS_AS(burst_phase_map(bhwg::Phase::sf, {-0.5}, {2}, fixed),
                    std::invalid_argument);
    auto bad = fixed;
    bad.gamma_prime = -0.1;
    CHECK_THROWS_AS(burst_phase_map(bhwg::Phase::sf, {0.5}, {2}, bad),
                    std::invalid_argument);
    bad = fixed;
    bad.g = 0.0;
    CHECK_THROWS_AS(burst_phase_map(bhwg::Phase::sf, {0.5}, {2}, bad),
                    std::invalid_argument);
  }
}
