#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace c2g {

struct SelftestOptions {
  int width = 8;
  int height = 8;
  std::uint64_t seed = 1;
  int fields = 20;      // random fields per dense comparison
  int spd_probes = 100;
  int spd_size = 16;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst error or smallest margin observed
  double tolerance = 0.0;
};

/// Dense-oracle equivalence for C, C^T, M and u at the requested size,
/// adjoint identities, SPD probes of M and a finite-difference gradient
/// check. The oracle matrices are assembled from explicit Gaussian samples,
/// independently of the operator code.
std::vector<PropertyResult> run_selftest(const SelftestOptions& options);

/// "PASS name  measured=... tol=..." per property.
void print_results(std::ostream& out, const std::vector<PropertyResult>& results);

}  // namespace c2g
