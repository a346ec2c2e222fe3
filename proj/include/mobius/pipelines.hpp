#pragma once

// The four CLI pipelines. Each returns the table and summaries it would
// write; write_artifact() does the I/O.

#include <string>
#include <vector>

#include <json.hpp>

#include "mobius/config.hpp"
#include "mobius/io.hpp"

namespace mobius {

struct Artifact {
  Table table;
  nlohmann::json summaries = nlohmann::json::object();
  bool hard_failure = false;
};

/// r, theta, K, M, m_eff, g_det per node. M is the printed-sign mean
/// curvature; m_eff is Tr(alpha)/2 (or its negative with printed_mass_sign).
Artifact cmd_geometry(const RunConfig& c);

/// Closed-form A_r, A_s, B_n and the connection-derived A_r_conn, A_s_conn,
/// B_n_conn per node, plus the field character.
Artifact cmd_gauge(const RunConfig& c);

/// Lowest-|E| states per sector with localisation, plus the sector pairing
/// and spin-Hall summaries when both sectors are solved. With flat_control
/// the operator is the free lattice Dirac operator on an n_r x n_theta
/// periodic unit lattice and the summaries include its dispersion deviation.
Artifact cmd_spectrum(const RunConfig& c);

/// Hard invariants and soft comparisons on the configured grid; hard_failure
/// is set when any hard check fails.
Artifact cmd_validate(const RunConfig& c);

Artifact run_pipeline(const std::string& name, const RunConfig& c);

/// Analytic spectrum of the flat Wilson-Dirac operator, periodic on both
/// axes: all 2 n_r n_theta values in ascending order.
std::vector<double> flat_dispersion(int n_r, int n_theta, double h_r, double h_theta, double mass, double wilson);

}  // namespace mobius
