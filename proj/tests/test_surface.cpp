#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mobius/geometry.hpp"
#include "mobius/strip.hpp"

using namespace mobius;
using std::cos;
using std::sin;
constexpr double pi = std::numbers::pi;

namespace {

// The k = 1 triad and normaliser exactly as they are usually printed.
struct Printed {
  Vec3<double> e_r, e_s, e_n;
  double N;
};

Printed printed_triad(double R, double r, double t) {
  Printed p;
  p.N = std::sqrt(4 * R * R + 8 * R * r * cos(t / 2) + 2 * r * r * cos(t) + 3 * r * r);
  const double s = 2 / p.N;
  p.e_r = {cos(t / 2) * cos(t), cos(t / 2) * sin(t), sin(t / 2)};
  p.e_s = s * Vec3<double>(-(R * sin(t) + 1.5 * r * cos(t) * sin(t / 2) + r * sin(t / 2)),
                           R * cos(t) + 0.25 * r * cos(t / 2) + 0.75 * r * cos(1.5 * t), 0.5 * r * cos(t / 2));
  p.e_n = s * Vec3<double>(R * sin(t / 2) * cos(t) - r * sin(t / 2) * sin(t / 2) * sin(t),
                           R * sin(t / 2) * sin(t) + 0.5 * r * (sin(t) * sin(t) + cos(t)),
                           -R * cos(t / 2) - r * cos(t / 2) * cos(t / 2));
  return p;
}

}  // namespace

TEST_CASE("embedding examples") {
  const StripParams p;  // R = 4, w = 1, k = 1
  CHECK((embed(p, 0.0, 0.0) - Vec3<double>(4, 0, 0)).norm() < 1e-15);
  CHECK((embed(p, 1.0, 0.0) - Vec3<double>(5, 0, 0)).norm() < 1e-15);
  CHECK((embed(p, 1.0, 2 * pi) - Vec3<double>(3, 0, 0)).norm() < 1e-14);
}

TEST_CASE("domain errors name the argument") {
  const StripParams p;
  try {
    embed(p, 1.5, 0.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("r=") == 0);
  }
  try {
    frame(p, 0.0, 4 * pi + 0.1);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("theta=") == 0);
  }
  CHECK_THROWS_AS(embed(StripParams{2, 0.5, 2}, 0.0, 3 * pi), DomainError);
  CHECK_NOTHROW(embed(p, 1.0, 4 * pi));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StripParams({4, 4, 1}).validate(), DomainError);
  CHECK_THROWS_AS(StripParams({4, 0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(StripParams({-1, 0.5, 1}).validate(), DomainError);
  CHECK_THROWS_AS(StripParams({4, 1, 0}).validate(), DomainError);
  CHECK_NOTHROW(StripParams({4, 1, 3}).validate());
  CHECK(StripParams({4, 1, 1}).theta_max() == doctest::Approx(4 * pi));
  CHECK(StripParams({4, 1, 2}).theta_max() == doctest::Approx(2 * pi));
}

TEST_CASE("frame at the origin") {
  const StripParams p;
  const auto f = frame(p, 0.0, 0.0);
  CHECK((f.e_r - Vec3<double>(1, 0, 0)).norm() < 1e-15);
  CHECK((f.e_s - Vec3<double>(0, 1, 0)).norm() < 1e-15);
  CHECK((f.e_n - Vec3<double>(0, 0, -1)).norm() < 1e-15);
  CHECK(f.N == 8.0);
  for (double t : {0.3, 1.0, 2.5, 7.0}) CHECK(frame(p, 0.0, t).N == doctest::Approx(8.0).epsilon(1e-15));
  CHECK((frame(p, 0.0, 0.0).e_n + frame(p, 0.0, 2 * pi).e_n).norm() < 1e-14);
}

TEST_CASE("k = 1 frame equals the printed triad") {
  const StripParams p;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(-1.0, 1.0), ut(0.0, 4 * pi);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double r = ur(rng), t = ut(rng);
    const auto f = frame(p, r, t);
    const auto q = printed_triad(4.0, r, t);
    worst = std::max({worst, (f.e_r - q.e_r).norm(), (f.e_s - q.e_s).norm(), (f.e_n - q.e_n).norm(),
                      std::abs(f.N - q.N) / q.N});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("frame orthonormality, orientation and the normaliser identity") {
  for (int k : {1, 2, 3}) {
    const StripParams p{4.0, 1.0, k};
    std::mt19937_64 rng(100 + k);
    std::uniform_real_distribution<double> ur(-p.w, p.w), ut(0.0, p.theta_max());
    double ortho = 0.0, tmin = 1e9, tmax = -1e9, ident = 0.0;
    for (int n = 0; n < 10000; ++n) {
      const double r = ur(rng), t = ut(rng);
      const auto f = frame(p, r, t);
      Eigen::Matrix3d F;
      F << f.e_r, f.e_s, f.e_n;
      ortho = std::max(ortho, (F.transpose() * F - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
      tmin = std::min(tmin, f.triple_product());
      tmax = std::max(tmax, f.triple_product());
      const double P = p.R + r * cos(k * t / 2);
      ident = std::max(ident, std::abs(f.N * f.N - k * k * r * r - 4 * P * P) / (4 * P * P));
    }
    CHECK(ortho < 1e-12);
    CHECK(tmin == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(tmax - tmin < 1e-12);
    CHECK(ident < 1e-12);
  }
}

TEST_CASE("non-orientability witness") {
  for (int k : {1, 2, 3, 4}) {
    const StripParams p{4.0, 1.0, k};
    const double dot = frame(p, 0.0, 0.0).e_n.dot(frame(p, 0.0, 2 * pi).e_n);
    CHECK(dot == doctest::Approx(k % 2 ? -1.0 : 1.0).epsilon(1e-12));
  }
  const StripParams p;
  for (double t : {0.1, 0.7, 1.9}) CHECK(frame(p, 0.0, t).e_n.dot(frame(p, 0.0, t + 2 * pi).e_n) == doctest::Approx(-1.0));
}

TEST_CASE("offset embedding") {
  const StripParams p;
  CHECK((embed_offset(p, 0.0, 0.0, 0.0) - embed(p, 0.0, 0.0)).norm() == 0.0);
  // Along the triad normal e_n = (0, 0, -1).
  CHECK((embed_offset(p, 0.0, 0.0, 0.1, NormalSide::left_handed) - Vec3<double>(4, 0, -0.1)).norm() < 1e-15);
  CHECK((embed_offset(p, 0.0, 0.0, 0.1) - Vec3<double>(4, 0, 0.1)).norm() < 1e-15);
  // f(q3) = 1 - q3^2 / 64 here, with its root at q3 = 8.
  const auto alpha = weingarten_closed(p, 0.0, 0.0);
  CHECK(1 + alpha.trace() * 8 + alpha.determinant() * 64 == doctest::Approx(0.0));
  CHECK_THROWS_AS(embed_offset(p, 0.0, 0.0, 8.0), RangeError);
}

TEST_CASE("numeric partials") {
  const StripParams p;
  const auto d = numeric_partials(p, 0.0, 0.0, 1e-4);
  CHECK((d.d_r - Vec3<double>(1, 0, 0)).norm() < 1e-8);
  CHECK_THROWS_AS(numeric_partials(p, 0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(numeric_partials(p, 0.0, 0.0, -1e-3), DomainError);
  CHECK(default_step(p) == doctest::Approx(4e-5));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(-1.0, 1.0), ut(0.0, 4 * pi);
  double speed = 0.0, mixed = 0.0, dir = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double r = ur(rng), t = ut(rng);
    const auto q = numeric_partials(p, r, t, default_step(p));
    const auto f = frame(p, r, t);
    speed = std::max(speed, std::abs(q.d_theta.dot(q.d_theta) - f.N * f.N / 4) / (f.N * f.N / 4));
    mixed = std::max(mixed, (q.d_rtheta - q.d_thetar).norm());
    dir = std::max(dir, (q.d_r.normalized() - f.e_r).norm());
  }
  CHECK(speed < 1e-8);
  CHECK(mixed < 1e-6);
  CHECK(dir < 1e-8);

  // One-sided stencils at the edges.
  for (double r : {-1.0, 1.0}) CHECK((numeric_partials(p, r, 1.0, 1e-4).d_r - frame(p, r, 1.0).e_r).norm() < 1e-8);
}
