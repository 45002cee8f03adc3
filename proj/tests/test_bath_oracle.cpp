// test_bath_oracle.cpp — discrete-sum correlators, broadening ladder, closed-form cross-checks.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bhwg/bath_oracle.hpp"
#include "bhwg/mi_bath.hpp"
#include "bhwg/sf_bath.hpp"

using namespace bhwg;

namespace {

CorrelatorSpec sf_spec(double omega_c, double u, double n_0) {
  CorrelatorSpec spec;
  spec.phase = Phase::sf;
  spec.lattice = LatticeParams{.omega_c = omega_c, .U = u};
  spec.sf = SfParams{n_0};
  return spec;
}

CorrelatorSpec mi_spec(double omega_c, double u, int n_bar) {
  CorrelatorSpec spec;
  spec.phase = Phase::mi;
  spec.lattice = LatticeParams{.omega_c = omega_c, .U = u};
  spec.mi = MiParams{n_bar};
  return spec;
}

}  // namespace

TEST_CASE("spec validation") {
  CorrelatorSpec spec = sf_spec(2.0, 0.0, 1.0);
  spec.eta = 0.0;
  CHECK_THROWS_AS(correlator_xx(spec, 0.0), std::invalid_argument);
  spec = sf_spec(2.0, 0.0, 1.0);
  spec.k_grid_size = 255;
  CHECK_THROWS_AS(correlator_xx(spec, 0.0), std::invalid_argument);
  spec = sf_spec(2.0, 0.0, 1.0);
  spec.k_grid_size = 128;
  CHECK_THROWS_AS(response_quadrature(spec, 2.0), std::invalid_argument);
  spec = sf_spec(2.0, 0.0, 1.0);
  spec.g = 0.0;
  CHECK_THROWS_AS(response_quadrature(spec, 2.0), std::invalid_argument);
}

TEST_CASE("equal-time correlator sum rules") {
  SUBCASE("superfluid at zero interaction") {
    const CorrelatorSpec spec = sf_spec(2.0, 0.0, 1.0);
    const std::complex<double> value = correlator_xx(spec, 0.0);
    // Every quasiparticle weight is exactly one; the condensate mode is
    // excluded from the sum, so the discrete average of one is (N-1)/N.
    const double expected = 4.0 + double(spec.k_grid_size - 1) / spec.k_grid_size;
    CHECK(value.real() == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(value.imag()) <= 1e-13);
    CHECK(value.real() == doctest::Approx(5.0).epsilon(3e-4));
  }
  SUBCASE("Mott insulator in the flat-band limit") {
    for (const int nb : {1, 2, 3}) {
      CorrelatorSpec spec = mi_spec(10.0, 3.0, nb);
      spec.lattice.J = 1e-8;
      const std::complex<double> value = correlator_xx(spec, 0.0);
      CHECK(value.real() == doctest::Approx(2.0 * nb + 1.0).epsilon(1e-6));
      CHECK(std::abs(value.imag()) <= 1e-10);
    }
  }
  SUBCASE("site exchange symmetry at finite delay") {
    CorrelatorSpec lhs = sf_spec(2.2, 0.3, 1.0);
    lhs.i = 2;
    lhs.j = 5;
    CorrelatorSpec rhs = lhs;
    rhs.i = 5;
    rhs.j = 2;
    CHECK(std::abs(correlator_xx(lhs, 0.7) - correlator_xx(rhs, 0.7)) <= 1e-13);
  }
  SUBCASE("time reversal conjugates") {
    CorrelatorSpec spec = mi_spec(10.0, 3.0, 1);
    spec.i = 1;
    const std::complex<double> fwd = correlator_xx(spec, 0.4);
    const std::complex<double> bwd = correlator_xx(spec, -0.4);
    CHECK(std::abs(bwd - std::conj(fwd)) <= 1e-13);
  }
}

TEST_CASE("response at resonance matches the decay closed forms") {
  SUBCASE("superfluid, zero interaction, band center") {
    const CorrelatorSpec spec = sf_spec(2.0, 0.0, 1.0);
    const auto resp = response_quadrature(spec, 2.0);
    CHECK(resp.gamma == doctest::Approx(spec.g * spec.g).epsilon(1e-3));
  }
  SUBCASE("superfluid, interacting, several separations") {
    CorrelatorSpec spec = sf_spec(2.2, 0.5, 1.0);
    const auto [low, high] = band_edges_sf(spec.lattice, spec.sf);
    for (const int m : {0, 1, 3}) {
      spec.i = m;
      for (const double frac : {0.25, 0.5, 0.7}) {
        const double omega = low + frac * (high - low);
        const auto resp = response_quadrature(spec, omega);
        const double closed = gamma_sf(m, 0, omega, spec.lattice, spec.sf, spec.g);
        CHECK(resp.gamma == doctest::Approx(closed).epsilon(1e-3));
      }
    }
  }
  SUBCASE("Mott insulator, mid-doublon band, on site") {
    const CorrelatorSpec spec = mi_spec(10.0, 3.0, 1);
    const double omega = 13.0;
    const auto resp = response_quadrature(spec, omega);
    const double closed = gamma_mi(0, 0, omega, spec.lattice, spec.mi, spec.g).gamma;
    CHECK(resp.gamma == doctest::Approx(closed).epsilon(1e-3));
  }
  SUBCASE("Mott insulator, overlapping bands, separated pair") {
    CorrelatorSpec spec = mi_spec(10.0, 3.0, 1);
    spec.i = 3;
    const double omega = 10.5;
    const auto resp = response_quadrature(spec, omega);
    const double closed = gamma_mi(3, 0, omega, spec.lattice, spec.mi, spec.g).gamma;
    CHECK(resp.gamma == doctest::Approx(closed).epsilon(1e-3));
  }
}

TEST_CASE("gap response") {
  SUBCASE("no decay, finite coupling") {
    CorrelatorSpec spec = mi_spec(12.0, 8.0, 1);
    spec.g = 1.0;
    const auto resp = response_quadrature(spec, 15.0);  // between the bands
    CHECK(std::abs(resp.gamma) <= 1e-4);
    CHECK(std::abs(resp.delta) > 0.01);
  }
  SUBCASE("condensate plateau at large separation") {
    CorrelatorSpec spec = sf_spec(2.0, 0.5, 1.0);
    spec.i = 40;
    spec.eta = 0.004;
    const double omega = 5.5;
    const double plateau = 4.0 * spec.g * spec.g * spec.sf.n_0 / omega;
    for (const auto mode : {DispersionMode::exact, DispersionMode::approximated}) {
      spec.dispersion_mode = mode;
      const auto resp = response_quadrature(spec, omega);
      CHECK(resp.delta == doctest::Approx(plateau).epsilon(1e-3));
    }
  }
}

TEST_CASE("residue algebra against the matched-approximation quadrature") {
  SUBCASE("superfluid upper gap") {
    CorrelatorSpec spec = sf_spec(2.0, 0.5, 1.0);
    spec.dispersion_mode = DispersionMode::approximated;
    spec.eta = 0.004;
    const double omega = 5.5;  // approximated band top is 5J
    for (int m = 0; m <= 10; ++m) {
      spec.i = m;
      const auto oracle = response_quadrature(spec, omega);
      const auto closed = delta_sf(m, 0, omega, spec.lattice, spec.sf, spec.g);
      CHECK(oracle.delta == doctest::Approx(closed.delta).epsilon(1e-6));
    }
  }
  SUBCASE("superfluid negative-frequency branch") {
    CorrelatorSpec spec = sf_spec(2.0, 0.5, 1.0);
    spec.dispersion_mode = DispersionMode::approximated;
    spec.eta = 0.004;
    const double omega = -0.7;
    for (int m = 0; m <= 6; ++m) {
      spec.i = m;
      const auto oracle = response_quadrature(spec, omega);
      const auto closed = delta_sf(m, 0, omega, spec.lattice, spec.sf, spec.g);
      CHECK(oracle.delta == doctest::Approx(closed.delta).epsilon(1e-6));
    }
  }
  SUBCASE("Mott insulator upper gap") {
    for (const int nb : {1, 2}) {
      CorrelatorSpec spec = mi_spec(10.0, 3.0, nb);
      spec.dispersion_mode = DispersionMode::approximated;
      spec.eta = 0.004;
      const double top = band_edges_mi(+1, spec.lattice, spec.mi).second;
      const double omega = top + 0.5;
      for (int m = 0; m <= 10; ++m) {
        spec.i = m;
        const auto oracle = response_quadrature(spec, omega);
        const auto closed = delta_mi(m, 0, omega, spec.lattice, spec.mi, spec.g);
        CHECK(oracle.delta == doctest::Approx(closed.delta).epsilon(1e-6));
      }
    }
  }
  SUBCASE("superfluid exact dispersion degrades gracefully with interaction") {
    for (const auto& [u, tol] : {std::pair{0.05, 1e-3}, std::pair{0.5, 5e-2}}) {
      CorrelatorSpec spec = sf_spec(2.2, u, 1.0);
      spec.eta = 0.004;
      const double top = spec.lattice.omega_c + 2.0 * u * spec.sf.n_0 + 2.0;
      const double omega = top + 0.5;
      for (int m = 0; m <= 10; ++m) {
        spec.i = m;
        const auto oracle = response_quadrature(spec, omega);
        const auto closed = delta_sf(m, 0, omega, spec.lattice, spec.sf, spec.g);
        CHECK(oracle.delta == doctest::Approx(closed.delta).epsilon(tol));
      }
    }
  }
}

TEST_CASE("ladder and grid robustness") {
  SUBCASE("on-site decay dominates every pair") {
    const CorrelatorSpec base = sf_spec(2.2, 0.5, 1.0);
    const auto [low, high] = band_edges_sf(base.lattice, base.sf);
    for (const double frac : {0.2, 0.5, 0.8}) {
      const double omega = low + frac * (high - low);
      const double self = response_quadrature(base, omega).gamma;
      for (int m = 1; m <= 5; ++m) {
        CorrelatorSpec spec = base;
        spec.i = m;
        CHECK(std::abs(response_quadrature(spec, omega).gamma) <= self + 1e-6);
      }
    }
  }
  SUBCASE("grid doubling stays within the reported error bar") {
    CorrelatorSpec gap_spec = mi_spec(10.0, 3.0, 1);
    gap_spec.i = 2;
    gap_spec.eta = 0.004;
    const auto coarse = response_quadrature(gap_spec, 17.5);
    gap_spec.k_grid_size = 8192;
    const auto fine = response_quadrature(gap_spec, 17.5);
    CHECK(std::abs(fine.delta - coarse.delta) <=
          0.1 * std::max(coarse.delta_error, 1e-14));

    CorrelatorSpec band_spec = sf_spec(2.2, 0.5, 1.0);
    band_spec.i = 1;
    band_spec.eta = 0.08;  // keeps every rung wide against both mode spacings
    const auto coarse_g = response_quadrature(band_spec, 2.5);
    band_spec.k_grid_size = 8192;
    const auto fine_g = response_quadrature(band_spec, 2.5);
    CHECK(std::abs(fine_g.gamma - coarse_g.gamma) <= 0.1 * coarse_g.gamma_error);
  }
  SUBCASE("tolerance gate marks hopeless requests as non-converged") {
    const CorrelatorSpec spec = sf_spec(2.2, 0.5, 1.0);
    const auto strict = response_quadrature(spec, 2.5, 1e-15);
    CHECK_FALSE(strict.converged);
    const auto loose = response_quadrature(spec, 2.5, 1e-2);
    CHECK(loose.converged);
    CHECK(response_quadrature(spec, 2.5).converged);
  }
  SUBCASE("deterministic output") {
    const CorrelatorSpec spec = mi_spec(10.0, 3.0, 1);
    const auto first = response_quadrature(spec, 13.0);
    const auto second = response_quadrature(spec, 13.0);
    CHECK(first.gamma == second.gamma);
    CHECK(first.delta == second.delta);
    CHECK(first.i_value == second.i_value);
  }
}
