#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coxforge/multigraded_ring.hpp"
#include "coxforge/reduction_engine.hpp"

namespace coxforge::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

struct Config {
  int grid = 3;
  std::uint64_t seed = 0x5eed'c0de'2024ULL;
  std::size_t max_cells = 2000;
  /// Cells (from the front of the sample) that also get full cokernel audits.
  std::size_t audit_cells = 12;
  AuditCaps caps;
};

/// Reads a JSON config over `base`; unknown keys are rejected so typos do not pass silently.
Config load_config(const std::string& path, Config base = {});

/// Every cell of [-radius, radius]^n when that is at most max_cells, otherwise max_cells distinct
/// cells drawn with a fixed-seed generator. Order is deterministic.
std::vector<MultiDegree> sample_grid(std::size_t n, int radius, std::size_t max_cells, std::uint64_t seed);

/// Entry point shared by the executable and the tests. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxforge::cli
