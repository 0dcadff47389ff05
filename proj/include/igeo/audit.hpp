#pragma once

// The acceptance suite: one randomized property audit per criterion, each
// reporting its sub-checks with the measured quantity and its bound.

#include <cstdint>
#include <string>
#include <vector>

namespace igeo::audit {

struct Check {
  std::string name;
  bool passed;
  double value;  // measured quantity
  double bound;
  std::string note;
  // Wall-clock measurement; varies between runs.
  bool timing = false;
};

struct CriterionResult {
  int id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  // Set when the criterion threw instead of completing.
  std::string error;

  bool passed() const;
};

inline constexpr int kCriteria = 13;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

CriterionResult run_criterion(int id, std::uint64_t seed);
// Criteria 1..13, evaluated concurrently; results ordered by id.
std::vector<CriterionResult> run_all(std::uint64_t seed);

// key=value lines describing one criterion. Without timings the text depends
// only on the seed.
std::string format(const CriterionResult& r, bool with_timings = true);

}  // namespace igeo::audit
