// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mobius/dirac.hpp"
#include "mobius/gauge.hpp"
#include "mobius/geometry.hpp"

using namespace mobius;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::cout << "criterion " << n << (ok ? " PASS " : " FAIL ") << what << std::endl;
  if (!ok) ++failures;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

Vec3<double> X(const StripParams& p, double r, double t) {
  const double rho = p.R + r * std::cos(t / 2);
  return {rho * std::cos(t), rho * std::sin(t), r * std::sin(t / 2)};
}

double theta_x(double R, double r, double t) {
  return std::asin(r / std::sqrt(4 * R * R + 8 * R * r * std::cos(t / 2) + 2 * r * r * std::cos(t) + 3 * r * r));
}

double printed_A_s(double R, double r, double t) {
  using std::cos;
  using std::sin;
  const double N = std::sqrt(4 * R * R + 8 * R * r * cos(t / 2) + 2 * r * r * cos(t) + 3 * r * r);
  const double tx = std::asin(r / N);
  return sin(t / 2) * sin(t / 2) * sin(tx) * sin(tx) * (cos(t) * cos(tx) * cos(tx) + cos(t / 2) * sin(2 * tx)) /
             std::sqrt(N * N - r * r) +
         ((sin(t) * sin(t / 2) + 2 * cos(t / 2)) * cos(tx) - cos(t) * sin(tx)) / N;
}

void criterion1() {
  const StripParams p;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ur(-0.999, 0.999), ut(0.0, 4 * pi);
  double eg = 0.0, eh = 0.0, ea = 0.0, eK = 0.0, eKc = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double r = ur(rng), t = ut(rng), h1 = 4e-6, h2 = 2e-4;
    const Vec3<double> xr = (X(p, r + h1, t) - X(p, r - h1, t)) / (2 * h1);
    const Vec3<double> xt = (X(p, r, t + h1) - X(p, r, t - h1)) / (2 * h1);
    const Vec3<double> xrr = (X(p, r + h2, t) - 2 * X(p, r, t) + X(p, r - h2, t)) / (h2 * h2);
    const Vec3<double> xtt = (X(p, r, t + h2) - 2 * X(p, r, t) + X(p, r, t - h2)) / (h2 * h2);
    const Vec3<double> xrt =
        (X(p, r + h2, t + h2) - X(p, r + h2, t - h2) - X(p, r - h2, t + h2) + X(p, r - h2, t - h2)) / (4 * h2 * h2);
    const Vec3<double> nh = xr.cross(xt).normalized();
    Eigen::Matrix2d g, h;
    g << xr.dot(xr), xr.dot(xt), xt.dot(xr), xt.dot(xt);
    h << xrr.dot(nh), xrt.dot(nh), xrt.dot(nh), xtt.dot(nh);
    const Eigen::Matrix2d a = -h * g.inverse();

    const auto ff = fundamental_forms(p, r, t);
    eg = std::max(eg, (g - ff.first.g).cwiseAbs().maxCoeff() / ff.first.g.cwiseAbs().maxCoeff());
    eh = std::max(eh, (h - ff.h).cwiseAbs().maxCoeff());
    ea = std::max(ea, (a - ff.alpha).cwiseAbs().maxCoeff());
    eK = std::max(eK, std::abs(a.determinant() - ff.curvature.gauss));
    const double N = normalizer(p, r, t);
    eKc = std::max(eKc, std::abs(ff.curvature.gauss + 4 * p.R * p.R / std::pow(N, 4)) / std::abs(ff.curvature.gauss));
  }
  const bool ok = eg < 1e-8 && eh < 1e-6 && ea < 1e-6 && eK < 1e-6 && eKc < 1e-10;
  report(1, ok, "closed-form geometry vs finite differences at 1000 points: g " + num(eg) + ", h " + num(eh) +
                    ", alpha " + num(ea) + ", K " + num(eK) + ", K vs -4R^2/N^4 rel " + num(eKc));
}

void criterion2() {
  const StripParams p;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> ur(-1.0, 1.0), ut(0.0, 4 * pi), uq(-0.99, 0.99);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto ff = fundamental_forms(p, ur(rng), ut(rng));
    const double q3 = uq(rng) * q3_bound(ff.alpha);
    const double f = 1 + ff.alpha.trace() * q3 + ff.alpha.determinant() * q3 * q3;
    const auto G = metric3d(ff.first.g, ff.alpha, q3);
    worst = std::max(worst, std::abs(G.det - f * f * ff.first.det) / (f * f * ff.first.det));
  }
  report(2, worst < 1e-10, "det G = f^2 det g over 100 points within the q3 bound: rel " + num(worst));
}

void criterion3() {
  const StripParams p;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> ur(-0.99, 0.99), ut(0.0, 4 * pi);
  double ear = 0.0, eas = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double r = ur(rng), t = ut(rng), h = 1e-5;
    const double d = (theta_x(4.0, r + h, t) - theta_x(4.0, r - h, t)) / (2 * h);
    const auto A = gauge_closed(p, r, t);
    const double N = normalizer(p, r, t);
    ear = std::max({ear, std::abs(A.A_r - d), std::abs(A.A_r - 2 * p.R / (N * N))});
    eas = std::max(eas, std::abs(A.A_s - printed_A_s(4.0, r, t)));
  }
  std::vector<double> err;
  for (int s : {1, 2, 4}) {
    const auto f = sample_gauge(p, Grid::over(p, 16 * s + 1, 128 * s));
    double e = 0.0;
    for (int i = 0; i < 17; ++i)
      for (int j = 0; j < 128; ++j)
        e = std::max(e, std::abs(f.B_n(i * s, j * s) - magnetic_field_at(p, f.grid.r(i * s), f.grid.theta(j * s), 1e-5)));
    err.push_back(e);
  }
  const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
  const bool ok = ear < 1e-8 && eas < 1e-12 && std::abs(o1 - 2) < 0.3 && std::abs(o2 - 2) < 0.3;
  report(3, ok, "A_r vs d/dr arcsin(r/N) " + num(ear) + ", A_s vs printed transcription " + num(eas) +
                    ", B_n convergence orders " + num(o1) + " and " + num(o2));
}

void criterion4() {
  const StripParams p;
  const auto a = sample_gauge(p, Grid::over(p, 65, 512));
  const auto b = sample_gauge(p, Grid::over(p, 129, 1024));
  int agree = 0;
  for (int i = 0; i < 65; ++i)
    for (int j = 0; j < 512; ++j) agree += (a.B_n(i, j) > 0) == (b.B_n(2 * i, 2 * j) > 0);
  const double frac = double(agree) / (65.0 * 512.0);

  double per = 0.0;
  for (int i = 0; i < 65; ++i)
    for (int j = 0; j < 512; j += 7) {
      const double r = std::clamp(a.grid.r(i), -0.9999, 0.9999), t = a.grid.theta(j);
      per = std::max(per, std::abs(magnetic_field_at(p, r, t) - magnetic_field_at(p, r, t + 4 * pi)));
      const auto A0 = detail::gauge_closed_unchecked(p, r, t), A1 = detail::gauge_closed_unchecked(p, r, t + 4 * pi);
      per = std::max({per, std::abs(A0.A_r - A1.A_r), std::abs(A0.A_s - A1.A_s)});
    }
  report(4, frac >= 0.99 && per < 1e-10,
         "B_n sign agreement 65x512 vs 129x1024 " + num(100 * frac) + "%, 4pi periodicity " + num(per));
}

void criterion5() {
  const StripParams p1{4.0, 1.0, 1}, p2{4.0, 1.0, 2};
  const auto c1 = field_character(sample_gauge(p1, Grid::over(p1, 65, 512)), linking_number(p1));
  const auto c2 = field_character(sample_gauge(p2, Grid::over(p2, 65, 512)), linking_number(p2));
  report(5, c1.classification == FieldClass::monopole_like && c2.classification == FieldClass::common,
         "twist 1 " + to_string(c1.classification) + " (dominance " + num(c1.dominance) + "), twist 2 " +
             to_string(c2.classification));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void criterion6(double strip_hermiticity) {
  // 8x8 periodic unit lattice against E = +-sqrt(sin^2 p_r + sin^2 p_t + (m + W)^2).
  const double m = 0.25, rw = 0.5;
  const auto op = assemble_flat(8, 8, 1.0, 1.0, true, 1, m, rw);
  const auto ep = lowest_abs_eigenpairs(Eigen::MatrixXcd(op.H), 128);
  std::vector<double> ref;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const double pr = 2 * pi * a / 8, pt = 2 * pi * b / 8;
      const double W = 0.5 * rw * ((2 - 2 * std::cos(pr)) + (2 - 2 * std::cos(pt)));
      const double E = std::sqrt(std::sin(pr) * std::sin(pr) + std::sin(pt) * std::sin(pt) + (m + W) * (m + W));
      ref.push_back(E);
      ref.push_back(-E);
    }
  std::sort(ref.begin(), ref.end());
  double disp = 0.0;
  for (int k = 0; k < 128; ++k) disp = std::max(disp, std::abs(ep.values(k) - ref[std::size_t(k)]));

  // 4x4 brute-force Kronecker construction.
  const cd i(0.0, 1.0);
  const int n = 4;
  const double hr = 0.6, ht = 1.1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n), I = Eigen::MatrixXcd::Identity(n, n);
  for (int a = 0; a < n; ++a) S(a, (a + 1) % n) = 1.0;
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  double brute = 0.0;
  for (int s : {1, -1}) {
    const Eigen::MatrixXcd D = S - S.adjoint(), L = 2.0 * I - S - S.adjoint();
    const Eigen::MatrixXcd Mt = m * kron(I, I) + (rw / (2 * hr)) * kron(L, I) + (rw / (2 * ht)) * kron(I, L);
    const Eigen::MatrixXcd T = kron((-i / (2 * hr)) * kron(D, I), sx) + kron((-i / (2 * ht)) * kron(I, D), double(s) * sy) +
                               kron(Mt, sz);
    const auto f = assemble_flat(n, n, hr, ht, true, s, m, rw);
    brute = std::max(brute, (Eigen::MatrixXcd(f.H) - T).cwiseAbs().maxCoeff());
  }
  report(6, strip_hermiticity < 1e-12 && op.hermiticity_error < 1e-12 && disp < 1e-8 && brute < 1e-14,
         "hermiticity " + num(std::max(strip_hermiticity, op.hermiticity_error)) + ", 8x8 dispersion " + num(disp) +
             ", 4x4 textbook matrix " + num(brute));
}

void criterion9() {
  double norm = 0.0;
  bool exact = true;
  for (double eps : {0.05, 0.3, 1.0, 2.0}) {
    for (int n = 0; n <= 5; ++n) {
      const auto mode = normal_modes(eps, n);
      exact = exact && mode.k_n == double(2 * n + 1) * pi / eps;
      const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [&](double q) { return mode(q) * mode(q); }, -eps / 2, eps / 2, 10, 1e-15);
      norm = std::max(norm, std::abs(v - 1));
    }
  }
  report(9, norm < 1e-12 && exact, "normal-mode normalization " + num(norm) + ", k_n exact for n <= 5");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void criterion10() {
  const char* exe = std::getenv("MOBIUS_CLI");
  if (exe == nullptr) {
    report(10, false, "MOBIUS_CLI is not set");
    return;
  }
  const auto dir = std::filesystem::temp_directory_path() / "mobius_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> runs = {
      "geometry --set grid.n_r=16 --set grid.n_theta=64",
      "gauge --set grid.n_r=17 --set grid.n_theta=64 --format json",
      "spectrum --set grid.n_r=8 --set grid.n_theta=32 --set physics.count=10",
      "spectrum --set physics.flat_control=true --set grid.n_r=8 --set grid.n_theta=32",
      "validate --set grid.n_r=8 --set grid.n_theta=32",
  };
  bool same = true;
  int compared = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string out[2], side[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / ("run" + std::to_string(k) + "_" + std::to_string(rep) + ".out");
      const std::string cmd = std::string(exe) + " " + runs[k] + " --out " + path.string() + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) same = false;
      out[rep] = slurp(path);
      side[rep] = slurp(path.string() + ".summary.json");
    }
    // The echoed output.path differs between the two runs; compare the rest.
    auto strip_path = [&](std::string s, int rep) {
      const std::string p = (dir / ("run" + std::to_string(k) + "_" + std::to_string(rep) + ".out")).string();
      for (std::size_t at; (at = s.find(p)) != std::string::npos;) s.replace(at, p.size(), "<out>");
      return s;
    };
    same = same && !out[0].empty() && strip_path(out[0], 0) == strip_path(out[1], 1) &&
           strip_path(side[0], 0) == strip_path(side[1], 1);
    ++compared;
  }
  std::filesystem::remove_all(dir);
  report(10, same, "byte-identical artifacts across repeated CLI runs (" + std::to_string(compared) + " configs)");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();

  // Criteria 6 to 8 share one Moebius solve of both sectors.
  const StripParams p;
  const Grid g = Grid::over(p, 24, 96);
  const auto plus_op = assemble(p, g, +1, 0.0);
  const auto minus_op = assemble(p, g, -1, 0.0);
  criterion6(std::max(plus_op.hermiticity_error, minus_op.hermiticity_error));

  const auto plus = spectrum(plus_op, 20);
  const auto minus = spectrum(minus_op, 20);
  const auto pairing = sector_pairing(plus, minus);
  const double kramers = max_abs_difference(kramers_conjugate(plus_op.H), minus_op.H);
  report(7, pairing.degenerate && pairing.pairs == 20 && kramers < 1e-14,
         "24x96 lowest 20 sector gap " + num(pairing.max_gap) + ", antiunitary conjugation " + num(kramers));

  // Flat control: A = 0, m_eff = 0, unit metric, periodic in both directions.
  const auto flat_plus = spectrum(assemble_flat(24, 96, 1.0, 1.0, true, +1, 0.0, 0.5), 20);
  const auto flat_minus = spectrum(assemble_flat(24, 96, 1.0, 1.0, true, -1, 0.0, 0.5), 20);
  const double window = 1.0;
  const auto sh = spin_hall_diagnostics(plus, minus, window);
  const auto fsh = spin_hall_diagnostics(flat_plus, flat_minus, window);
  const double flat_corr = std::max(std::abs(fsh.sector_r_correlation), std::abs(fsh.current_correlation));
  report(8, sh.paired_r_correlation <= -0.5 && flat_corr < 0.2,
         "|E| <= " + num(window) + ": paired sign<r> correlation " + num(sh.paired_r_correlation) + " over " +
             std::to_string(sh.pairs) + " pairs; flat control corr(s3, sign<r>) " + num(fsh.sector_r_correlation) +
             ", corr(s3 sign<r>, sign J) " + num(fsh.current_correlation));

  criterion9();
  criterion10();
  return failures == 0 ? 0 : 1;
}
