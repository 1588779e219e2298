#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oddwaring/core.hpp"
#include "oddwaring/repsearch.hpp"

namespace oddw::survey {

using core::Int;

// One case of the n = 2, 3, 4 analysis. The w subsets share the position i_t of their last index,
// except for the single-index cases 1-i and 2-i.
struct CaseSpec {
  int n = 0;
  std::string label;
  std::vector<core::WSet> w_subsets;
  Int lead_diag_max = 0;  // bound on m_{i_t i_t} and everything before it
  bool iterate_last_diag = false;
  bool scaled = false;
};

std::vector<std::string> case_labels(int n);
// Throws std::invalid_argument for an unknown label.
CaseSpec make_case(const std::string& label, bool scaled = false);
std::vector<CaseSpec> standard_cases(int n, bool scaled = false);

// Largest m with C(n) m <= n + 2, i.e. the last diagonal value the lower-bound test fails to discharge.
Int undischarged_diag_max(int n);

struct Survivor {
  core::GramMatrix gram;
  core::WSet w;
  Int q_w = 0, k = 0, r_kw = 0;
  bool within_case_assumption = false;  // r_{K,w} > n + 10
  bool no_representation = false;  // every admissible r <= r_{K,w} refuted: no sum of odd squares works
  std::optional<Int> certified_r;
  std::optional<repsearch::RepMatrix> certificate;
};

// How the case assumption bounds r. Every representation has r <= r_{K,w} <= sum_{i in w} m_ii, so a
// candidate is settled once either bound is <= n + 10. exact discharges candidates on r_{K,w}. coarse
// uses the diagonal sum for candidates and r_{K,w} only for prefixes whose raising process has no
// terminating split; it keeps more candidates and reproduces the published survivor lists.
enum class RkwCutoff { exact, coarse };
const char* to_string(RkwCutoff c);

struct SurveyOptions {
  unsigned threads = 1;
  RkwCutoff rkw_cutoff = RkwCutoff::coarse;
  bool apply_discharge = true;
  bool certify = true;
  std::optional<std::string> snapshot_path;
  bool resume = false;
  std::optional<std::uint64_t> max_candidates;
};

struct SurveyReport {
  CaseSpec spec;
  RkwCutoff rkw_cutoff = RkwCutoff::coarse;
  std::string status;  // "complete" or "resource_cap"
  std::uint64_t candidates_scanned = 0;
  std::vector<std::pair<std::string, std::uint64_t>> filtered_by;  // fixed order
  std::vector<std::pair<std::string, std::int64_t>> stats;
  std::vector<Survivor> survivors;  // canonical matrix order, then w
};

SurveyReport run_case(const CaseSpec& spec, const SurveyOptions& opts = {});

// Raised when exhaustive search refutes a representation the analysis guarantees.
class Contradiction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Representation at exactly r with no budget; throws Contradiction if none exists.
repsearch::RepMatrix certify_survivor(const core::GramMatrix& g, core::WSet w, Int r);

struct Witness {
  core::CosetSpec coset;
  Int r_pos, r_neg;
};

struct WitnessResult {
  Witness witness;
  repsearch::Outcome pos, neg;
  std::optional<repsearch::RepMatrix> rep;
  std::uint64_t nodes = 0;
  bool matches = false;  // representable at r_pos, provably not at r_neg
};

std::vector<Witness> lower_bound_witnesses();
std::vector<WitnessResult> run_witnesses(const std::vector<Witness>& ws, const repsearch::SearchBudget& budget = {});

// The four exceptional 4x4 matrices, with w = {1,4}.
std::vector<core::GramMatrix> exceptional_matrices();

}  // namespace oddw::survey
