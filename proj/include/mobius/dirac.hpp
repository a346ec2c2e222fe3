#pragma once

// Normal modes across the layer and the tangent Dirac operator on the grid.
//
// The 4-component effective operator couples the gauge field only through
// sigma_3, so it splits into two 2-component problems labelled by the
// spin-normal eigenvalue s3 = +-1. In each sector
//
//   H = G_r (-i D_r - s3 A_r) + G_t (-(i/2){1/L, D_t} - s3 A_s) + G_m (m + m_eff + W)
//
// with L = N/2 = sqrt(g), G_r = sigma_x, G_t = s3 sigma_y, G_m = sigma_z and W
// the Wilson term. The s3 in G_t makes the sectors Kramers partners:
// H(-1) = sigma_z conj(H(+1)) sigma_z. The matrix acts on phi = sqrt(L) psi,
// in which the sqrt(g)-weighted inner product of psi is the plain one.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "mobius/errors.hpp"
#include "mobius/grid.hpp"
#include "mobius/strip.hpp"

namespace mobius {

struct NormalMode {
  double epsilon = 1.0;
  int n = 0;
  double k_n = 0.0;
  double E_perp = 0.0;

  double amplitude() const;
  /// chi(q3) = sqrt(2/eps) cos(k_n q3), zero outside [-eps/2, eps/2].
  double operator()(double q3) const;
};

/// k_n = (2n + 1) pi / eps and |E_perp| = k_n.
NormalMode normal_modes(double epsilon, int n);

/// m_eff = Tr(alpha) / 2 per node, shaped n_r x n_theta. `printed_sign`
/// flips it to the sign of the commonly printed mean curvature.
Eigen::ArrayXXd effective_mass_field(const StripParams& p, const Grid& grid, bool printed_sign = false);

using SparseMatrixcd = Eigen::SparseMatrix<std::complex<double>>;

struct GammaMatrices {
  Eigen::Matrix2cd r;
  Eigen::Matrix2cd theta;
  Eigen::Matrix2cd mass;
};

GammaMatrices gamma_matrices(int sector);

struct DiracOptions {
  double wilson = 0.5;
  bool gauge_coupling = true;
  bool effective_mass = true;
  bool flat_metric = false;
  bool printed_mass_sign = false;
  int dense_cap = 12000;

  friend bool operator==(const DiracOptions&, const DiracOptions&) = default;
};

/// Node layout the operator lives on. Node order is r-outer, theta-inner.
struct Lattice {
  int n_r = 0;
  int n_theta = 0;
  double h_r = 1.0;
  double h_theta = 1.0;
  bool r_periodic = false;
  double r0 = 0.0;  // r of the first node
  double half_width = 1.0;

  int nodes() const { return n_r * n_theta; }
  double r(int i) const { return r0 + double(i) * h_r; }
  friend bool operator==(const Lattice&, const Lattice&) = default;
};

struct DiracGridOperator {
  StripParams strip;
  Lattice lattice;
  int sector = +1;
  double mass = 0.0;
  DiracOptions options;
  SparseMatrixcd H;         // dimension 2 * nodes, index = 2 * node + component
  Eigen::VectorXd weight;   // sqrt(g) per node
  double hermiticity_error = 0.0;

  int dimension() const { return int(H.rows()); }
};

/// Per-node inputs of the assembly, arrays shaped n_r x n_theta.
struct NodeFields {
  Eigen::ArrayXXd A_r, A_s, m_eff, L;
};

/// Generic assembly on a lattice; theta is always periodic.
DiracGridOperator assemble_fields(const Lattice& lattice, const NodeFields& fields, int sector, double mass,
                                  const DiracOptions& options);

/// The strip operator on `grid` (at least 8 x 32 nodes), hard walls at r = +-w.
DiracGridOperator assemble(const StripParams& p, const Grid& grid, int sector, double mass,
                           const DiracOptions& options = {});

/// Flat control: A = 0, m_eff = 0, L = 1 on a uniform lattice.
DiracGridOperator assemble_flat(int n_r, int n_theta, double h_r, double h_theta, bool r_periodic, int sector,
                                double mass, double wilson);

/// sigma_z conj(H) sigma_z, the antiunitary image of one sector.
SparseMatrixcd kramers_conjugate(const SparseMatrixcd& H);

double max_abs_difference(const SparseMatrixcd& a, const SparseMatrixcd& b);

/// Lowest-|E| eigenpairs of a dense Hermitian matrix (lower triangle used),
/// returned in ascending E. Eigenvectors are columns, phase-fixed so the
/// first largest-magnitude entry is real and positive.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

EigenPairs lowest_abs_eigenpairs(Eigen::MatrixXcd dense, int count);

struct Spectrum {
  StripParams strip;
  Lattice lattice;
  int sector = +1;
  double mass = 0.0;
  DiracOptions options;

  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd phi;      // orthonormal columns in the sqrt(L) basis
  Eigen::VectorXd weight;    // sqrt(g) per node

  Eigen::VectorXd mean_r;
  Eigen::VectorXd edge_fraction;  // probability at |r| >= 0.8 w
  Eigen::VectorXd current;        // <G_theta>
  Eigen::VectorXd deck_overlap;   // Re <phi| D |phi>, D: (r, t) -> (-r, t + theta_max/2); 0 if undefined

  int size() const { return int(energies.size()); }
  /// Amplitudes psi = phi / sqrt(weight), orthonormal under sum sqrt(g) psi^* psi.
  Eigen::MatrixXcd psi() const;
};

/// The `count` lowest-|E| states. Within a degenerate cluster (|dE| < 1e-9)
/// the states are the eigenvectors of G_theta restricted to the cluster.
Spectrum spectrum(const DiracGridOperator& op, int count);

/// max |psi^dagger W psi - I| with W = diag(sqrt(g)).
double weighted_orthonormality_error(const Spectrum& s);

struct PairingReport {
  int pairs = 0;
  double max_gap = 0.0;
  std::vector<double> gaps;
  bool degenerate = false;  // max_gap < tolerance
  double tolerance = 1e-8;
  bool masses_match = true;
};

/// Pairs the sorted energies of the two sectors. Spectra on different grids
/// or strips raise UsageError; a mass mismatch is reported, not raised.
PairingReport sector_pairing(const Spectrum& plus, const Spectrum& minus, double tolerance = 1e-8);

struct SpinHallRow {
  int sector = +1;
  double energy = 0.0;
  double mean_r = 0.0;
  double edge_fraction = 0.0;
  double current = 0.0;
  double deck_overlap = 0.0;
};

/// Per-state transverse position and current in |E| <= window.
///
/// sign<r> is taken as 0 inside |<r>| < 0.05 w. sector_r_correlation is
/// corr(s3, sign<r>) over all rows and current_correlation is
/// corr(s3 sign<r>, sign J). For paired_r_correlation each s3 = +1 state is
/// paired with the nearest-energy s3 = -1 state carrying the same current
/// sign, and the correlation of sign<r> across those pairs is reported.
/// Correlations of a constant sequence are 0.
struct SpinHallReport {
  double window = 0.0;
  std::vector<SpinHallRow> rows;
  double sector_r_correlation = 0.0;
  double current_correlation = 0.0;
  double paired_r_correlation = 0.0;
  int pairs = 0;
};

inline constexpr double position_deadband = 0.05;

SpinHallReport spin_hall_diagnostics(const Spectrum& plus, const Spectrum& minus, double energy_window);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mobius
