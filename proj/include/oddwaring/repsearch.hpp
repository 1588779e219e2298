#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oddwaring/core.hpp"

namespace oddw::repsearch {

using core::Int;

// n x r integer matrix T with M = T T^t and every column summing to an odd number over w.
class RepMatrix {
 public:
  RepMatrix(int rows, int cols) : rows_(rows), cols_(cols), t_(static_cast<size_t>(rows) * cols, 0) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int operator()(int i, int j) const { return t_[static_cast<size_t>(i) * cols_ + j]; }
  Int& at(int i, int j) { return t_[static_cast<size_t>(i) * cols_ + j]; }
  std::vector<std::vector<Int>> to_rows() const;
  bool operator==(const RepMatrix&) const = default;

 private:
  int rows_, cols_;
  std::vector<Int> t_;
};

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  bool canonicalize_columns = true;
  unsigned threads = 1;
};

enum class Outcome { found, none, exhausted };
const char* to_string(Outcome o);

struct SearchResult {
  Outcome outcome = Outcome::none;
  std::optional<RepMatrix> rep;
  std::uint64_t nodes = 0;
};

bool verify_representation(const core::CosetSpec& c, const RepMatrix& t);

// Exhaustive backtracking; `none` is a proof of non-representability. Throws std::invalid_argument
// for r < 1 or a gram that is not positive definite. The witness and node count do not depend on
// the thread count.
SearchResult find_representation(const core::CosetSpec& c, Int r, const SearchBudget& budget = {});

enum class Verdict { excluded, none, found, exhausted };
const char* to_string(Verdict v);

struct MinRepStep {
  Int r;
  Verdict verdict;
  std::uint64_t nodes;
};

struct MinRepResult {
  std::optional<Int> r;
  std::optional<RepMatrix> rep;
  std::vector<MinRepStep> steps;  // every r == Q(w) mod 8 up to r_max, until the first success
  bool proven_minimal = false;    // every earlier step was excluded or none
  std::uint64_t nodes = 0;
};

MinRepResult min_representation(const core::CosetSpec& c, Int r_max, const SearchBudget& budget = {});

// Vectors x with x^t M x == norm, in lexicographically descending coordinate order.
std::vector<std::vector<Int>> vectors_of_norm(const core::GramMatrix& g, Int norm);

// Integral isometry of cosets. Throws std::invalid_argument on rank mismatch or non-pd input.
bool cosets_isometric(const core::CosetSpec& a, const core::CosetSpec& b);

}  // namespace oddw::repsearch
