#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holo/rng.hpp"
#include "holo/simulation.hpp"
#include "holo/types.hpp"

using namespace holo;

TEST_CASE("make_config accepts the paper setup and derives the wavenumber") {
  const OpticalConfig c = make_config(532e-9, 4.65e-6, 20e-3, 224, 224);
  CHECK(c.wavenumber() == doctest::Approx(2.0 * std::numbers::pi / 532e-9).epsilon(1e-15));
  // the default instance is the same setup
  const OpticalConfig d{};
  CHECK(d.wavelength == 532e-9);
  CHECK(d.pixel_pitch == 4.65e-6);
  CHECK(d.distance_z == 20e-3);
  CHECK(d.height == 224);
  CHECK(d.width == 224);
}

TEST_CASE("make_config allows z = 0 and rejects bad parameters by name") {
  CHECK_NOTHROW(make_config(532e-9, 4.65e-6, 0.0, 64, 64));
  CHECK_THROWS_WITH_AS(make_config(-1e-9, 4.65e-6, 20e-3, 64, 64),
                       "wavelength must be positive", ValidationError);
  CHECK_THROWS_AS(make_config(532e-9, 0.0, 20e-3, 64, 64), ValidationError);
  CHECK_THROWS_AS(make_config(532e-9, 4.65e-6, 20e-3, 4, 64), ValidationError);
  CHECK_THROWS_AS(make_config(532e-9, 4.65e-6, std::nan(""), 64, 64), ValidationError);
}

TEST_CASE("spectral grid follows the DFT convention and its symmetry") {
  const OpticalConfig c = make_config(532e-9, 4.65e-6, 20e-3, 64, 224);
  const SpectralGrid g = make_spectral_grid(c);
  CHECK(g.fx.size() == 224);
  CHECK(g.fy.size() == 64);
  CHECK(g.fx[0] == 0.0);
  CHECK(g.fy[0] == 0.0);
  const double d = 1.0 / (224 * 4.65e-6);
  CHECK(g.fx[1] == doctest::Approx(d).epsilon(1e-15));
  CHECK(g.fx[223] == doctest::Approx(-d).epsilon(1e-15));
  // fx[n] = -fx[N-n] for 0 < n < N/2, exact for even N
  for (int n = 1; n < 112; ++n) CHECK(g.fx[n] == -g.fx[224 - n]);
  for (int n = 1; n < 32; ++n) CHECK(g.fy[n] == -g.fy[64 - n]);
}

TEST_CASE("field constructors reject mismatched data length") {
  CHECK_THROWS_AS(ComplexField(4, 4, std::vector<Complex>(15)), ValidationError);
  CHECK_THROWS_AS(Hologram(4, 4, std::vector<double>(17)), ValidationError);
  CHECK_NOTHROW(ComplexField(4, 4, std::vector<Complex>(16)));
}

TEST_CASE("field_stats on constant and empty-ish fields") {
  ComplexField ones(4, 4);
  std::fill(ones.data.begin(), ones.data.end(), Complex{1.0, 0.0});
  const FieldStats s = field_stats(ones);
  CHECK(s.energy == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(s.min_abs == 1.0);
  CHECK(s.max_abs == 1.0);

  const FieldStats z = field_stats(ComplexField(3, 3));
  CHECK(z.energy == 0.0);
  CHECK(z.min_abs == 0.0);
  CHECK(z.max_abs == 0.0);
}

TEST_CASE("field_stats energy of a one-ellipse object stays in [0.81 N, N]") {
  SeededRng rng(11);
  auto [spec, field] = sample_object(rng, ObjectParams{1, 1}, 64, 64);
  const double n = 64.0 * 64.0;
  // direct summation oracle
  double energy = 0.0;
  for (const Complex& v : field.data) energy += std::norm(v);
  CHECK(field_stats(field).energy == doctest::Approx(energy).epsilon(1e-12));
  CHECK(energy >= 0.81 * n);
  CHECK(energy <= n);
}

TEST_CASE("wrap_phase maps into (-pi, pi]") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(2.0 * std::numbers::pi) == doctest::Approx(0.0));
  CHECK(wrap_phase(0.3 - 0.1) == doctest::Approx(0.2));
}
