#include <catch2/catch_amalgamated.hpp>

#include <hc/analytic.hpp>
#include <hc/dilaton.hpp>
#include <hc/measures.hpp>

#include "svetlichny_grid.hpp"

#include <cmath>
#include <random>

using namespace hc;

namespace {

DensityMatrix bell_pair() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(v * v.adjoint(), {2, 2});
}

DensityMatrix ghz() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(v * v.adjoint(), {2, 2, 2});
}

DensityMatrix flat_w() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return DensityMatrix(v * v.adjoint(), {2, 2, 2});
}

DensityMatrix w_pair() {
  return partial_trace(flat_w(), {0, 1});
}

Matrix random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

DensityMatrix random_x_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng) + 1e-3, b = u(rng) + 1e-3, c = u(rng) + 1e-3,
         d = u(rng) + 1e-3;
  const double norm = a + b + c + d;
  a /= norm; b /= norm; c /= norm; d /= norm;
  const double phi1 = 2.0 * std::numbers::pi * u(rng);
  const double phi2 = 2.0 * std::numbers::pi * u(rng);
  const cplx w = u(rng) * std::sqrt(a * d) * std::exp(cplx(0, phi1));
  const cplx z = u(rng) * std::sqrt(b * c) * std::exp(cplx(0, phi2));
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a; m(1, 1) = b; m(2, 2) = c; m(3, 3) = d;
  m(0, 3) = w; m(3, 0) = std::conj(w);
  m(1, 2) = z; m(2, 1) = std::conj(z);
  return DensityMatrix(std::move(m), {2, 2});
}

Matrix random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

MeasurementFrame ghz_planar_frame() {
  const double s = 1.0 / std::sqrt(2.0);
  MeasurementFrame f;
  f.a = Vec3(1, 0, 0);
  f.a2 = Vec3(0, -1, 0);
  f.b = Vec3(1, 0, 0);
  f.b2 = Vec3(0, -1, 0);
  f.c = Vec3(s, s, 0);
  f.c2 = Vec3(s, -s, 0);
  return f;
}

constexpr double kWSvetlichny = 4.3546484291;

}  // namespace

TEST_CASE("concurrence reference values") {
  REQUIRE(concurrence(bell_pair()) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(concurrence(w_pair()) == Catch::Approx(2.0 / 3.0).margin(1e-10));
  // product state
  Matrix m = Matrix::Zero(4, 4);
  m(1, 1) = 1.0;
  REQUIRE(concurrence(DensityMatrix(m, {2, 2})) ==
          Catch::Approx(0.0).margin(1e-12));
  REQUIRE(concurrence(DensityMatrix(Matrix::Identity(4, 4) / 4.0, {2, 2})) ==
          Catch::Approx(0.0).margin(1e-12));
  REQUIRE_THROWS_AS(
      concurrence(DensityMatrix(Matrix::Identity(8, 8) / 8.0, {2, 2, 2})),
      std::invalid_argument);
}

TEST_CASE("x-state concurrence matches the general route") {
  REQUIRE(concurrence_x(bell_pair()) == Catch::Approx(1.0).margin(1e-12));
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto rho = random_x_state(rng);
    REQUIRE(std::abs(concurrence_x(rho) - concurrence(rho)) < 1e-12);
  }
  std::mt19937_64 rng2(72);
  auto generic = DensityMatrix(random_density(4, rng2), {2, 2});
  REQUIRE_THROWS_AS(concurrence_x(generic), std::invalid_argument);
}

TEST_CASE("pi tangle reference values") {
  REQUIRE(pi_tangle(ghz()) == Catch::Approx(1.0).margin(1e-9));
  const double expected_w = 4.0 * (std::sqrt(5.0) - 1.0) / 9.0;
  REQUIRE(pi_tangle(flat_w()) == Catch::Approx(expected_w).margin(1e-9));

  Matrix basis = Matrix::Zero(8, 8);
  basis(0, 0) = 1.0;
  REQUIRE(pi_tangle(DensityMatrix(basis, {2, 2, 2})) ==
          Catch::Approx(0.0).margin(1e-10));
  REQUIRE(pi_tangle(DensityMatrix(Matrix::Identity(8, 8) / 8.0, {2, 2, 2})) ==
          Catch::Approx(0.0).margin(1e-10));
  REQUIRE_THROWS_AS(pi_tangle(bell_pair()), std::invalid_argument);
}

TEST_CASE("pi tangle ingredient negativities of the flat W state") {
  auto w = flat_w();
  REQUIRE(trace_norm(partial_transpose(w, 0)) - 1.0 ==
          Catch::Approx(2.0 * std::sqrt(2.0) / 3.0).margin(1e-12));
  auto pair = partial_trace(w, {0, 1});
  REQUIRE(trace_norm(partial_transpose(pair, 0)) - 1.0 ==
          Catch::Approx((std::sqrt(5.0) - 1.0) / 3.0).margin(1e-12));
}

TEST_CASE("pi tangle is nonnegative on random states") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial)
    REQUIRE(pi_tangle(DensityMatrix(random_density(8, rng), {2, 2, 2})) >=
            0.0);
}

TEST_CASE("two-setting maximum reference values") {
  REQUIRE(chsh_max(bell_pair()) ==
          Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-10));
  REQUIRE(chsh_max(w_pair()) ==
          Catch::Approx(2.0 * std::sqrt(8.0 / 9.0)).margin(1e-10));
  REQUIRE(chsh_max(DensityMatrix(Matrix::Identity(4, 4) / 4.0, {2, 2})) ==
          Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("two-setting maximum never exceeds the quantum bound") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    auto rho = DensityMatrix(random_density(4, rng), {2, 2});
    REQUIRE(chsh_max(rho) <= 2.0 * std::sqrt(2.0) + 1e-9);
  }
}

TEST_CASE("x-form two-setting maximum matches the general route") {
  REQUIRE(chsh_x(bell_pair()) ==
          Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-10));
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    auto rho = random_x_state(rng);
    REQUIRE(std::abs(chsh_x(rho) - chsh_max(rho)) < 1e-10);
  }
  std::mt19937_64 rng2(84);
  REQUIRE_THROWS_AS(chsh_x(DensityMatrix(random_density(4, rng2), {2, 2})),
                    std::invalid_argument);
}

TEST_CASE("correlation tensor reference entries") {
  auto t = correlation_tensor3(ghz());
  REQUIRE(t.t[0][0][0] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(t.t[0][1][1] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(t.t[1][0][1] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(t.t[1][1][0] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(t.t[2][2][2] == Catch::Approx(0.0).margin(1e-12));

  auto w = correlation_tensor3(flat_w());
  REQUIRE(w.t[2][2][2] == Catch::Approx(-1.0).margin(1e-12));

  auto mixed =
      correlation_tensor3(DensityMatrix(Matrix::Identity(8, 8) / 8.0,
                                        {2, 2, 2}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        REQUIRE(mixed.t[i][j][k] == Catch::Approx(0.0).margin(1e-14));

  std::mt19937_64 rng(89);
  auto rnd = correlation_tensor3(DensityMatrix(random_density(8, rng),
                                               {2, 2, 2}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        REQUIRE(rnd.t[i][j][k] >= -1.0 - 1e-10);
        REQUIRE(rnd.t[i][j][k] <= 1.0 + 1e-10);
      }
}

TEST_CASE("three-setting value at the planar frame of the GHZ state") {
  auto t = correlation_tensor3(ghz());
  REQUIRE(svetlichny_value(t, ghz_planar_frame()) ==
          Catch::Approx(4.0 * std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("three-setting value validates its frame") {
  auto t = correlation_tensor3(ghz());
  MeasurementFrame bad = ghz_planar_frame();
  bad.b = Vec3(0.5, 0, 0);
  REQUIRE_THROWS_AS(svetlichny_value(t, bad), std::invalid_argument);
}

TEST_CASE("three-setting value on product states never beats 4") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_dir = [&] {
    while (true) {
      Vec3 v(u(rng), u(rng), u(rng));
      if (v.norm() > 1e-3) return Vec3(v / v.norm());
    }
  };
  auto rho = DensityMatrix(
      kron(kron(random_density(2, rng), random_density(2, rng)),
           random_density(2, rng)),
      {2, 2, 2});
  auto t = correlation_tensor3(rho);
  for (int trial = 0; trial < 10000; ++trial) {
    MeasurementFrame f{random_dir(), random_dir(), random_dir(),
                       random_dir(), random_dir(), random_dir()};
    REQUIRE(std::abs(svetlichny_value(t, f)) <= 4.0 + 1e-9);
  }
}

TEST_CASE("see-saw regressions: GHZ and flat W") {
  auto g = svetlichny_optimize(ghz());
  REQUIRE(g.value == Catch::Approx(4.0 * std::sqrt(2.0)).margin(1e-6));
  REQUIRE(g.converged);
  // the returned frame realizes the returned value
  REQUIRE(std::abs(svetlichny_value(correlation_tensor3(ghz()), g.frame) -
                   g.value) < 1e-9);

  auto w = svetlichny_optimize(flat_w());
  REQUIRE(w.value == Catch::Approx(kWSvetlichny).margin(1e-6));
  REQUIRE(w.converged);
  REQUIRE(std::abs(svetlichny_value(correlation_tensor3(flat_w()), w.frame) -
                   w.value) < 1e-9);
}

TEST_CASE("see-saw result dominates the value at random frames") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_dir = [&] {
    while (true) {
      Vec3 v(u(rng), u(rng), u(rng));
      if (v.norm() > 1e-3) return Vec3(v / v.norm());
    }
  };
  auto rho = DensityMatrix(random_density(8, rng), {2, 2, 2});
  auto t = correlation_tensor3(rho);
  const double best = svetlichny_optimize(t, {20, 500, 1e-9, 0}).value;
  for (int trial = 0; trial < 100; ++trial) {
    MeasurementFrame f{random_dir(), random_dir(), random_dir(),
                       random_dir(), random_dir(), random_dir()};
    REQUIRE(best >= std::abs(svetlichny_value(t, f)) - 1e-6);
  }
}

TEST_CASE("see-saw stays below the algebraic maximum on random states") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    auto rho = DensityMatrix(random_density(8, rng), {2, 2, 2});
    const double v = svetlichny_optimize(rho, {10, 500, 1e-9, 7}).value;
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 4.0 * std::sqrt(2.0) + 1e-9);
  }
}

TEST_CASE("see-saw is invariant under local rotations") {
  std::mt19937_64 rng(107);
  const double base = svetlichny_max(flat_w());
  for (int trial = 0; trial < 3; ++trial) {
    Matrix u = kron(kron(random_unitary2(rng), random_unitary2(rng)),
                    random_unitary2(rng));
    DensityMatrix rotated(u * flat_w().matrix() * u.adjoint(), {2, 2, 2});
    REQUIRE(std::abs(svetlichny_max(rotated) - base) < 1e-6);
  }
}

TEST_CASE("see-saw determinism: identical seeds give identical results") {
  std::mt19937_64 rng(109);
  auto rho = DensityMatrix(random_density(8, rng), {2, 2, 2});
  OptimizerConfig cfg{12, 300, 1e-10, 42};
  auto r1 = svetlichny_optimize(rho, cfg);
  auto r2 = svetlichny_optimize(rho, cfg);
  REQUIRE(r1.value == r2.value);
  REQUIRE(r1.runner_up == r2.runner_up);
  REQUIRE(r1.frame.a == r2.frame.a);
  REQUIRE(r1.frame.c2 == r2.frame.c2);
}

TEST_CASE("optimizer configuration validation") {
  auto rho = ghz();
  REQUIRE_THROWS_AS(svetlichny_optimize(rho, {0, 500, 1e-9, 0}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(svetlichny_optimize(rho, {10, 0, 1e-9, 0}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(svetlichny_optimize(rho, {10, 500, 0.0, 0}),
                    std::invalid_argument);
}

TEST_CASE("grid oracle agrees with the see-saw on the canonical states") {
  // GHZ: the grid contains an exact maximizing frame, and polish converges
  // to the algebraic maximum.
  REQUIRE(hc::testing::svetlichny_grid_oracle(ghz(), 8) ==
          Catch::Approx(4.0 * std::sqrt(2.0)).margin(1e-9));
  // flat W: coarse grid plus polish lands on the same optimum the see-saw
  // finds, well within the acceptance band.
  const double oracle = hc::testing::svetlichny_grid_oracle(flat_w(), 10);
  REQUIRE(oracle == Catch::Approx(kWSvetlichny).margin(1e-3));
  REQUIRE(std::abs(svetlichny_max(flat_w()) - oracle) < 1e-3);
}

TEST_CASE("zero tensor yields zero with a valid frame") {
  auto rho = DensityMatrix(Matrix::Identity(8, 8) / 8.0, {2, 2, 2});
  auto res = svetlichny_optimize(rho, {3, 100, 1e-9, 1});
  REQUIRE(res.value == Catch::Approx(0.0).margin(1e-12));
  REQUIRE_NOTHROW(validate(res.frame));
}
