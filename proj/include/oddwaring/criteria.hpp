#pragma once

#include <optional>
#include <vector>

#include "oddwaring/core.hpp"

namespace oddw::criteria {

using core::Int;

struct NecessaryReport {
  bool parity_ok = false;
  Int q_w = 0;
  Int r_cap_qw = 0;  // r <= Q(w)
  Int r_kw = 0;      // largest integer <= sum of m_ii over w that is == Q(w) mod 8; may be <= 0
  std::vector<Int> admissible_r;

  bool admits(Int r) const;
};

struct SplitCertificate {
  Int k = 0;
  std::vector<Int> parts;  // one per w index, ascending index order
  core::GramMatrix reduced;
};

// Residue of q mod 8 taken in 1..8.
Int split_residue(Int q);

NecessaryReport necessary_conditions(const core::CosetSpec& c);

// C(n) as num/den: C(2)=3/4, C(3)=1/2, C(4)=1/5. Throws std::invalid_argument otherwise.
struct Ratio {
  Int num, den;
};
Ratio lower_bound_constant(int n);

// C(n) * m_ii > k, i 0-based. Throws std::invalid_argument for n outside 2..4 or k outside 1..8.
bool minkowski_lower_bound_ok(const core::GramMatrix& g, int i, Int k);

// First composition of k over the w indices (lexicographically smallest parts vector) leaving
// M - sum k_i E_ii positive definite. Throws std::domain_error if Q(w) <= 8.
std::optional<SplitCertificate> find_split(const core::CosetSpec& c);

// All compositions of k into `parts` nonnegative summands, lexicographically ascending.
std::vector<std::vector<Int>> compositions(Int k, int parts);

bool lemma1_congruence_filter(const core::CosetSpec& c, Int r);

}  // namespace oddw::criteria
