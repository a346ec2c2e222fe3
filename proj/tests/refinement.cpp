// Grid refinement of the Moebius spectrum: the 10 lowest-|E| eigenvalues of
// sector +1 should move by less than 2% from 24x96 to 32x128 at fixed Wilson
// parameter. Slow (several minutes), so it carries the "slow" ctest label.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

#include "mobius/dirac.hpp"

using namespace mobius;

namespace {

std::vector<double> lowest_abs(const StripParams& p, int n_r, int n_theta, int count) {
  const auto s = spectrum(assemble(p, Grid::over(p, n_r, n_theta), +1, 0.0), count);
  std::vector<double> e(s.energies.data(), s.energies.data() + s.size());
  std::sort(e.begin(), e.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  return e;
}

}  // namespace

int main() {
  const StripParams p;
  const auto coarse = lowest_abs(p, 24, 96, 10);
  const auto fine = lowest_abs(p, 32, 128, 10);
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const double rel = std::abs(fine[k] - coarse[k]) / std::abs(coarse[k]);
    worst = std::max(worst, rel);
    std::cout << "state " << k << " E(24x96) " << coarse[k] << " E(32x128) " << fine[k] << " change " << 100 * rel
              << "%\n";
  }
  const bool ok = worst < 0.02;
  std::cout << "refinement " << (ok ? "PASS" : "FAIL") << " max relative change " << 100 * worst << "% (limit 2%)\n";
  return ok ? 0 : 1;
}
