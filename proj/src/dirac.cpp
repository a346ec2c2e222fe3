#include "mobius/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <lapacke.h>

#include "mobius/gauge.hpp"
#include "mobius/geometry.hpp"

namespace mobius {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Normal modes

double NormalMode::amplitude() const { return std::sqrt(2.0 / epsilon); }

double NormalMode::operator()(double q3) const {
  if (std::abs(q3) > 0.5 * epsilon) return 0.0;
  return amplitude() * std::cos(k_n * q3);
}

NormalMode normal_modes(double epsilon, int n) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("normal_modes: epsilon must be > 0, got " + std::to_string(epsilon));
  if (n < 0) throw DomainError("normal_modes: n must be >= 0, got " + std::to_string(n));
  NormalMode m;
  m.epsilon = epsilon;
  m.n = n;
  m.k_n = double(2 * n + 1) * std::numbers::pi / epsilon;
  m.E_perp = m.k_n;
  return m;
}

// ---------------------------------------------------------------------------
// Assembly

Eigen::ArrayXXd effective_mass_field(const StripParams& p, const Grid& grid, bool printed_sign) {
  grid.validate();
  Eigen::ArrayXXd m(grid.n_r, grid.n_theta);
  for (int i = 0; i < grid.n_r; ++i)
    for (int j = 0; j < grid.n_theta; ++j) {
      const auto forms = fundamental_forms(p, grid.r(i), grid.theta(j));
      m(i, j) = printed_sign ? -forms.curvature.mean : forms.curvature.mean;
    }
  return m;
}

GammaMatrices gamma_matrices(int sector) {
  const cd i(0.0, 1.0);
  GammaMatrices g;
  g.r << 0.0, 1.0, 1.0, 0.0;
  g.theta << 0.0, -i, i, 0.0;
  g.theta *= double(sector);
  g.mass << 1.0, 0.0, 0.0, -1.0;
  return g;
}

namespace {

void check_sector(int sector) {
  if (sector != 1 && sector != -1) throw ConfigError("sector must be +1 or -1, got " + std::to_string(sector));
}

void check_wilson(double wilson) {
  if (!(wilson >= 0.0) || !std::isfinite(wilson))
    throw ConfigError("wilson_parameter must be >= 0, got " + std::to_string(wilson));
}

double hermiticity(const SparseMatrixcd& H) {
  const SparseMatrixcd diff = H - SparseMatrixcd(H.adjoint());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixcd::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace

DiracGridOperator assemble_fields(const Lattice& lat, const NodeFields& f, int sector, double mass,
                                  const DiracOptions& options) {
  check_sector(sector);
  check_wilson(options.wilson);
  if (lat.n_r < 2 || lat.n_theta < 3) throw ConfigError("lattice needs at least 2 r nodes and 3 theta nodes");
  if (!(lat.h_r > 0.0) || !(lat.h_theta > 0.0)) throw ConfigError("lattice spacings must be > 0");
  for (const auto* a : {&f.A_r, &f.A_s, &f.m_eff, &f.L})
    if (a->rows() != lat.n_r || a->cols() != lat.n_theta) throw ConfigError("node field does not match the lattice");
  if (!(f.L > 0.0).all()) throw ConfigError("metric weight L must be positive at every node");

  const int nr = lat.n_r, nt = lat.n_theta, n = lat.nodes();
  const GammaMatrices G = gamma_matrices(sector);
  const double s3 = double(sector);
  const double rw = options.wilson;
  const cd i(0.0, 1.0);
  auto node = [nt](int a, int b) { return a * nt + b; };

  std::vector<Eigen::Triplet<cd>> trip;
  trip.reserve(std::size_t(n) * 24);
  auto put = [&](int a, int b, const Eigen::Matrix2cd& block) {
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        if (block(x, y) != cd(0.0)) trip.emplace_back(2 * a + x, 2 * b + y, block(x, y));
  };

  for (int ir = 0; ir < nr; ++ir) {
    for (int jt = 0; jt < nt; ++jt) {
      const int a = node(ir, jt);

      // on-site: gauge terms and the mass channel
      double wilson_diag = 0.0;
      if (rw > 0.0) {
        wilson_diag += rw / lat.h_r;  // (rw/2)(2/h_r), Dirichlet or periodic alike
        const int jm = (jt + nt - 1) % nt, jp = (jt + 1) % nt;
        const double Lm = 0.5 * (f.L(ir, jt) + f.L(ir, jm));
        const double Lp = 0.5 * (f.L(ir, jt) + f.L(ir, jp));
        wilson_diag += 0.5 * rw / lat.h_theta * (1.0 / Lm + 1.0 / Lp);
      }
      const Eigen::Matrix2cd onsite = -s3 * f.A_r(ir, jt) * G.r - s3 * f.A_s(ir, jt) * G.theta +
                                      (mass + f.m_eff(ir, jt) + wilson_diag) * G.mass;
      put(a, a, onsite);

      // r bond to ir + 1
      if (ir + 1 < nr || lat.r_periodic) {
        const int b = node((ir + 1) % nr, jt);
        const cd hop = -i / (2.0 * lat.h_r);  // -i D_r with D_r(a, b) = +1/(2h)
        Eigen::Matrix2cd fwd = hop * G.r;
        Eigen::Matrix2cd back = std::conj(hop) * G.r;
        if (rw > 0.0) {
          fwd -= 0.5 * rw / lat.h_r * G.mass;
          back -= 0.5 * rw / lat.h_r * G.mass;
        }
        put(a, b, fwd);
        put(b, a, back);
      }

      // theta bond to jt + 1, always periodic
      {
        const int jp = (jt + 1) % nt;
        const int b = node(ir, jp);
        const double inv_L = 0.5 * (1.0 / f.L(ir, jt) + 1.0 / f.L(ir, jp));
        const cd hop = -i * inv_L / (2.0 * lat.h_theta);
        Eigen::Matrix2cd fwd = hop * G.theta;
        Eigen::Matrix2cd back = std::conj(hop) * G.theta;
        if (rw > 0.0) {
          const double Lmid = 0.5 * (f.L(ir, jt) + f.L(ir, jp));
          fwd -= 0.5 * rw / (lat.h_theta * Lmid) * G.mass;
          back -= 0.5 * rw / (lat.h_theta * Lmid) * G.mass;
        }
        put(a, b, fwd);
        put(b, a, back);
      }
    }
  }

  DiracGridOperator op;
  op.lattice = lat;
  op.sector = sector;
  op.mass = mass;
  op.options = options;
  op.H.resize(2 * n, 2 * n);
  op.H.setFromTriplets(trip.begin(), trip.end());
  op.H.makeCompressed();
  op.weight.resize(n);
  for (int ir = 0; ir < nr; ++ir)
    for (int jt = 0; jt < nt; ++jt) op.weight(node(ir, jt)) = f.L(ir, jt);
  op.hermiticity_error = hermiticity(op.H);
  if (!(op.hermiticity_error < 1e-12))
    throw InvariantError("assembled operator is not Hermitian: max |H - H^dagger| = " +
                         std::to_string(op.hermiticity_error));
  return op;
}

DiracGridOperator assemble(const StripParams& p, const Grid& grid, int sector, double mass,
                           const DiracOptions& options) {
  p.validate();
  check_sector(sector);
  check_wilson(options.wilson);
  if (grid.n_r < 8 || grid.n_theta < 32)
    throw ConfigError("grid " + std::to_string(grid.n_r) + "x" + std::to_string(grid.n_theta) +
                      " is below the 8x32 minimum for the Dirac operator");
  if (grid.w != p.w || grid.theta_max != p.theta_max())
    throw ConfigError("grid period or width is inconsistent with the strip (theta_max must be " +
                      std::to_string(p.theta_max()) + ")");

  const int nr = grid.n_r, nt = grid.n_theta;
  NodeFields f;
  f.A_r.setZero(nr, nt);
  f.A_s.setZero(nr, nt);
  f.L.setOnes(nr, nt);
  for (int ir = 0; ir < nr; ++ir)
    for (int jt = 0; jt < nt; ++jt) {
      const double r = grid.r(ir), t = grid.theta(jt);
      if (options.gauge_coupling) {
        const auto A = gauge_closed(p, r, t);
        f.A_r(ir, jt) = A.A_r;
        f.A_s(ir, jt) = A.A_s;
      }
      if (!options.flat_metric) f.L(ir, jt) = 0.5 * normalizer(p, r, t);
    }
  f.m_eff = options.effective_mass ? effective_mass_field(p, grid, options.printed_mass_sign)
                                   : Eigen::ArrayXXd(Eigen::ArrayXXd::Zero(nr, nt));

  Lattice lat;
  lat.n_r = nr;
  lat.n_theta = nt;
  lat.h_r = grid.dr();
  lat.h_theta = grid.dtheta();
  lat.r_periodic = false;
  lat.r0 = -grid.w;
  lat.half_width = grid.w;
  DiracGridOperator op = assemble_fields(lat, f, sector, mass, options);
  op.strip = p;
  return op;
}

DiracGridOperator assemble_flat(int n_r, int n_theta, double h_r, double h_theta, bool r_periodic, int sector,
                                double mass, double wilson) {
  Lattice lat;
  lat.n_r = n_r;
  lat.n_theta = n_theta;
  lat.h_r = h_r;
  lat.h_theta = h_theta;
  lat.r_periodic = r_periodic;
  lat.r0 = -0.5 * double(n_r - 1) * h_r;
  lat.half_width = 0.5 * double(n_r - 1) * h_r;
  NodeFields f;
  f.A_r.setZero(n_r, n_theta);
  f.A_s.setZero(n_r, n_theta);
  f.m_eff.setZero(n_r, n_theta);
  f.L.setOnes(n_r, n_theta);
  DiracOptions opt;
  opt.wilson = wilson;
  opt.gauge_coupling = false;
  opt.effective_mass = false;
  opt.flat_metric = true;
  return assemble_fields(lat, f, sector, mass, opt);
}

SparseMatrixcd kramers_conjugate(const SparseMatrixcd& H) {
  SparseMatrixcd out = H.conjugate();
  // sigma_z on both sides flips the sign of entries with mixed components
  for (int k = 0; k < out.outerSize(); ++k)
    for (SparseMatrixcd::InnerIterator it(out, k); it; ++it)
      if ((it.row() % 2) != (it.col() % 2)) it.valueRef() = -it.value();
  return out;
}

double max_abs_difference(const SparseMatrixcd& a, const SparseMatrixcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("max_abs_difference: shape mismatch");
  const SparseMatrixcd d = a - b;
  double worst = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrixcd::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

// ---------------------------------------------------------------------------
// Eigensolve

namespace {

lapack_complex_double* lp(cd* p) { return reinterpret_cast<lapack_complex_double*>(p); }

// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
int sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
  const double pivmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = d(0) - x;
  for (Eigen::Index i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    if (i + 1 >= d.size()) break;
    q = d(i + 1) - x - e(i) * e(i) / q;
  }
  return count;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  Eigen::Index k = 0;
  while (std::abs(v(k)) < (1.0 - 1e-9) * peak) ++k;
  v *= std::conj(v(k)) / std::abs(v(k));
  v(k) = cd(v(k).real(), 0.0);
}

bool signature_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

EigenPairs lowest_abs_eigenpairs(Eigen::MatrixXcd A, int count) {
  const lapack_int n = lapack_int(A.rows());
  if (A.cols() != n || n == 0) throw UsageError("lowest_abs_eigenpairs: matrix must be square and non-empty");
  if (count < 1) throw ConfigError("eigenpair count must be >= 1, got " + std::to_string(count));
  count = std::min<int>(count, n);

  Eigen::VectorXd d(n), e(std::max<lapack_int>(n - 1, 1));
  Eigen::VectorXcd tau(std::max<lapack_int>(n - 1, 1));
  lapack_int info = LAPACKE_zhetrd(LAPACK_COL_MAJOR, 'L', n, lp(A.data()), n, d.data(), e.data(), lp(tau.data()));
  if (info != 0) throw InvariantError("zhetrd failed with info=" + std::to_string(info));

  // The lowest-|E| states are a contiguous index window around the zero crossing.
  const int neg = sturm_count(d, e, 0.0);
  const lapack_int il = std::max(1, neg - count + 1);
  const lapack_int iu = std::min<lapack_int>(n, neg + count);

  lapack_int m = 0, nsplit = 0;
  Eigen::VectorXd w(n);
  std::vector<lapack_int> iblock(n), isplit(n);
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, il, iu, abstol, d.data(), e.data(), &m, &nsplit, w.data(),
                        iblock.data(), isplit.data());
  if (info != 0) throw InvariantError("dstebz failed with info=" + std::to_string(info));

  Eigen::MatrixXcd Z(n, m);
  std::vector<lapack_int> ifail(m);
  info = LAPACKE_zstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), m, w.data(), iblock.data(), isplit.data(),
                        lp(Z.data()), n, ifail.data());
  if (info != 0) throw InvariantError("zstein failed to converge for " + std::to_string(info) + " eigenvectors");
  info = LAPACKE_zunmtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, m, lp(A.data()), n, lp(tau.data()), lp(Z.data()), n);
  if (info != 0) throw InvariantError("zunmtr failed with info=" + std::to_string(info));

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(w(a)) < std::abs(w(b)); });
  order.resize(std::min<int>(count, m));
  for (int k : order) fix_phase(Z.col(k));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (w(a) != w(b)) return w(a) < w(b);
    return signature_less(Z.col(a), Z.col(b));
  });

  EigenPairs out;
  out.values.resize(Eigen::Index(order.size()));
  out.vectors.resize(n, Eigen::Index(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values(Eigen::Index(k)) = w(order[k]);
    out.vectors.col(Eigen::Index(k)) = Z.col(order[k]);
  }
  return out;
}

Eigen::MatrixXcd Spectrum::psi() const {
  Eigen::VectorXd scale(2 * weight.size());
  for (Eigen::Index a = 0; a < weight.size(); ++a) scale(2 * a) = scale(2 * a + 1) = 1.0 / std::sqrt(weight(a));
  return scale.asDiagonal() * phi;
}

namespace {

// Inside each cluster of degenerate energies the solver's basis is arbitrary.
// Rotate it to diagonalize the current <G_theta>, ascending, so states carry a
// definite propagation direction and the basis does not depend on rounding.
void resolve_degeneracies(EigenPairs& ep, const Eigen::Matrix2cd& Gt) {
  const Eigen::Index m = ep.values.size();
  const Eigen::Index n = ep.vectors.rows();
  for (Eigen::Index a = 0; a < m;) {
    Eigen::Index b = a + 1;
    while (b < m && std::abs(ep.values(b) - ep.values(a)) < 1e-9 * std::max(1.0, std::abs(ep.values(a)))) ++b;
    if (b - a > 1) {
      const Eigen::MatrixXcd V = ep.vectors.middleCols(a, b - a);
      Eigen::MatrixXcd JV(n, b - a);
      for (Eigen::Index k = 0; k < n / 2; ++k) JV.middleRows<2>(2 * k) = Gt * V.middleRows<2>(2 * k);
      const Eigen::MatrixXcd M = V.adjoint() * JV;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
      ep.vectors.middleCols(a, b - a) = V * es.eigenvectors();
      for (Eigen::Index k = a; k < b; ++k) fix_phase(ep.vectors.col(k));
    }
    a = b;
  }
}

// The `count` lowest |E| of an ascending set, kept in ascending order. Ties in
// |E| go to the lower energy, then to the earlier column.
EigenPairs keep_lowest_abs(const EigenPairs& ep, int count) {
  std::vector<int> order(std::size_t(ep.values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(ep.values(a)) != std::abs(ep.values(b))) return std::abs(ep.values(a)) < std::abs(ep.values(b));
    return ep.values(a) < ep.values(b);
  });
  order.resize(std::min<std::size_t>(order.size(), std::size_t(count)));
  std::sort(order.begin(), order.end());
  EigenPairs out;
  out.values.resize(Eigen::Index(order.size()));
  out.vectors.resize(ep.vectors.rows(), Eigen::Index(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values(Eigen::Index(k)) = ep.values(order[k]);
    out.vectors.col(Eigen::Index(k)) = ep.vectors.col(order[k]);
  }
  return out;
}

}  // namespace

Spectrum spectrum(const DiracGridOperator& op, int count) {
  const int dim = op.dimension();
  if (dim > op.options.dense_cap)
    throw ConfigError("operator dimension " + std::to_string(dim) + " exceeds the dense cap " +
                      std::to_string(op.options.dense_cap) + "; reduce grid.n_r or grid.n_theta");
  if (count < 1) throw ConfigError("eigenpair count must be >= 1, got " + std::to_string(count));
  // A few spare states so a degenerate cluster is not cut at the boundary.
  EigenPairs ep = lowest_abs_eigenpairs(Eigen::MatrixXcd(op.H), std::min(dim, count + 8));
  resolve_degeneracies(ep, gamma_matrices(op.sector).theta);
  ep = keep_lowest_abs(ep, count);

  Spectrum s;
  s.strip = op.strip;
  s.lattice = op.lattice;
  s.sector = op.sector;
  s.mass = op.mass;
  s.options = op.options;
  s.energies = std::move(ep.values);
  s.phi = std::move(ep.vectors);
  s.weight = op.weight;

  const Lattice& lat = op.lattice;
  const int k = s.size();
  const Eigen::Matrix2cd Gt = gamma_matrices(op.sector).theta;
  const bool deck = !lat.r_periodic && lat.n_theta % 2 == 0;
  s.mean_r.setZero(k);
  s.edge_fraction.setZero(k);
  s.current.setZero(k);
  s.deck_overlap.setZero(k);
  for (int c = 0; c < k; ++c) {
    const auto v = s.phi.col(c);
    for (int ir = 0; ir < lat.n_r; ++ir) {
      const double r = lat.r(ir);
      const bool edge = std::abs(r) >= 0.8 * lat.half_width - 1e-12;
      for (int jt = 0; jt < lat.n_theta; ++jt) {
        const int a = ir * lat.n_theta + jt;
        const Eigen::Vector2cd u = v.segment<2>(2 * a);
        const double rho = u.squaredNorm();
        s.mean_r(c) += r * rho;
        if (edge) s.edge_fraction(c) += rho;
        s.current(c) += (u.adjoint() * Gt * u)(0).real();
        if (deck) {
          const int b = (lat.n_r - 1 - ir) * lat.n_theta + (jt + lat.n_theta / 2) % lat.n_theta;
          s.deck_overlap(c) += u.dot(v.segment<2>(2 * b)).real();
        }
      }
    }
  }
  return s;
}

double weighted_orthonormality_error(const Spectrum& s) {
  const Eigen::MatrixXcd psi = s.psi();
  Eigen::VectorXd w2(2 * s.weight.size());
  for (Eigen::Index a = 0; a < s.weight.size(); ++a) w2(2 * a) = w2(2 * a + 1) = s.weight(a);
  const Eigen::MatrixXcd gram = psi.adjoint() * w2.asDiagonal() * psi;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Sector diagnostics

PairingReport sector_pairing(const Spectrum& plus, const Spectrum& minus, double tolerance) {
  if (!(plus.lattice == minus.lattice) || !(plus.strip == minus.strip) || !(plus.options == minus.options))
    throw UsageError("sector_pairing: spectra were solved on different grids, strips or options");
  if (plus.size() != minus.size())
    throw UsageError("sector_pairing: spectra hold " + std::to_string(plus.size()) + " and " +
                     std::to_string(minus.size()) + " states");
  PairingReport rep;
  rep.tolerance = tolerance;
  rep.masses_match = plus.mass == minus.mass;
  rep.pairs = plus.size();
  for (int k = 0; k < rep.pairs; ++k) {
    const double gap = std::abs(plus.energies(k) - minus.energies(k));
    rep.gaps.push_back(gap);
    rep.max_gap = std::max(rep.max_gap, gap);
  }
  rep.degenerate = rep.max_gap < tolerance;
  return rep;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw UsageError("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

namespace {
double sign_with_deadband(double v, double band) { return std::abs(v) < band ? 0.0 : (v > 0.0 ? 1.0 : -1.0); }
}  // namespace

SpinHallReport spin_hall_diagnostics(const Spectrum& plus, const Spectrum& minus, double window) {
  if (plus.sector != 1 || minus.sector != -1)
    throw UsageError("spin_hall_diagnostics: expected the s3=+1 spectrum first and s3=-1 second");
  SpinHallReport rep;
  rep.window = window;
  std::vector<int> in_plus, in_minus;
  auto collect = [&](const Spectrum& s, std::vector<int>& idx) {
    for (int k = 0; k < s.size(); ++k)
      if (std::abs(s.energies(k)) <= window) {
        idx.push_back(int(rep.rows.size()));
        rep.rows.push_back({s.sector, s.energies(k), s.mean_r(k), s.edge_fraction(k), s.current(k),
                            s.deck_overlap(k)});
      }
  };
  collect(plus, in_plus);
  collect(minus, in_minus);
  if (in_plus.empty() || in_minus.empty())
    throw UsageError("spin_hall_diagnostics: no states with |E| <= " + std::to_string(window) +
                     " in one of the sectors");

  const double band = position_deadband * plus.lattice.half_width;
  std::vector<double> s3, sr, srs, sj;
  for (const auto& row : rep.rows) {
    const double r = sign_with_deadband(row.mean_r, band);
    s3.push_back(row.sector);
    sr.push_back(r);
    srs.push_back(row.sector * r);
    sj.push_back(sign_with_deadband(row.current, 1e-12));
  }
  rep.sector_r_correlation = pearson(s3, sr);
  rep.current_correlation = pearson(srs, sj);

  std::vector<double> rp, rm;
  for (int a : in_plus) {
    int best = -1;
    for (int b : in_minus) {
      if (sj[std::size_t(b)] != sj[std::size_t(a)]) continue;
      if (best < 0 || std::abs(rep.rows[std::size_t(b)].energy - rep.rows[std::size_t(a)].energy) <
                          std::abs(rep.rows[std::size_t(best)].energy - rep.rows[std::size_t(a)].energy))
        best = b;
    }
    if (best < 0) continue;
    rp.push_back(sr[std::size_t(a)]);
    rm.push_back(sr[std::size_t(best)]);
  }
  rep.pairs = int(rp.size());
  rep.paired_r_correlation = pearson(rp, rm);
  return rep;
}

}  // namespace mobius
