#pragma once

// Candidate enumeration for the case analysis. Internal to the survey module.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oddwaring/core.hpp"

namespace oddw::survey::detail {

using core::Int;
using core::WSet;

struct EngineConfig {
  int n = 0;
  Int lead_max = 0;
  bool rkw_exact = true;  // discharge on r_{K,w} <= n+10; otherwise on sum_{i in w} m_ii <= n+10
  bool discharge = true;
  std::optional<std::uint64_t> max_candidates;
};

struct Counters {
  std::uint64_t scanned = 0;     // matrices examined one by one
  std::uint64_t not_pd = 0;
  std::uint64_t parity = 0;
  std::uint64_t assumption = 0;  // Q(w) <= n+10 or k > n+2
  std::uint64_t rkw = 0;         // case-assumption bound on r at most n+10
  std::uint64_t rkw_family = 0;  // prefixes with no terminating split, settled by r_{K,w} <= n+10
  std::uint64_t discharge = 0;
  std::uint64_t split = 0;
  std::uint64_t pruned = 0;      // blocks of candidates discharged by one Schur-complement bound
  std::uint64_t zero_first_row = 0;
  std::uint64_t printed_bound_checked = 0;
  std::uint64_t printed_bound_tighter = 0;  // printed bound below the Schur bound
  std::uint64_t printed_bound_inapplicable = 0;
  Int max_trailing_diag = 0;
  Int max_middle_diag = 0;

  void add(const Counters& o);
};

struct RawSurvivor {
  Int a[4][4];
  unsigned wmask;
};

// Subsets handled together: all w whose last index is n-1 share one enumeration; every other w
// gets its own. tail = n-1-(last index of w).
struct Job {
  std::vector<WSet> ws;
  int tail = 0;
};

std::vector<Job> make_jobs(int n, const std::vector<WSet>& ws);

struct UnitOut {
  Counters cnt;
  std::vector<RawSurvivor> surv;
};

class ResourceCap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All candidates with m11 == a00. Throws std::logic_error if some prefix admits no terminating
// split search, ResourceCap if max_candidates is exceeded within the unit.
UnitOut run_unit(const EngineConfig& cfg, const Job& job, Int a00);

}  // namespace oddw::survey::detail
