#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vsparse/lp.hpp"

namespace vsparse::lp {

// Maps a master candidate to violated rows; an empty result means the
// candidate satisfies every constraint the oracle represents.
using SeparationOracle = std::function<std::vector<Constraint>(std::span<const Rational> candidate)>;

struct CuttingPlaneLimits {
  std::size_t max_iterations = 10'000;
};

enum class CuttingPlaneStatus { kConverged, kIterationLimit, kMasterInfeasible, kMasterUnbounded };

struct GeneratedCut {
  std::size_t oracle = 0;
  std::size_t iteration = 0;
  std::size_t row = 0;  // row index in the final master program
};

struct CuttingPlaneResult {
  CuttingPlaneStatus status = CuttingPlaneStatus::kConverged;
  bool converged = false;
  std::size_t iterations = 0;  // master solves
  LpOutcome master;            // last master outcome (best iterate at the cap)
  LinearProgram program;       // master with every generated row
  std::vector<GeneratedCut> cuts;
  std::vector<std::size_t> cuts_per_oracle;
};

// Alternates master solves with oracle calls. Oracles are queried in order and
// the first one that reports violations ends the round; its rows are added
// and the master is re-optimized from the previous basis. Throws
// std::logic_error when an oracle returns a row that the candidate satisfies
// or that is already in the master.
CuttingPlaneResult cutting_plane(LinearProgram master, std::span<const SeparationOracle> oracles,
                                 CuttingPlaneLimits limits = {});

bool violates(const Constraint& row, std::span<const Rational> x);

}  // namespace vsparse::lp
