#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace oddw::oddsq {

using U64 = std::uint64_t;

struct OddSquareDecomposition {
  U64 target = 0;
  std::vector<U64> parts;  // odd, descending, squares sum to target
};

bool is_sum_of_two_squares(U64 m);
// m not of the form 4^a(8b+7). Throws std::invalid_argument for m == 0.
bool is_sum_of_three_squares(U64 m);

// Lexicographically greatest descending list of r odd parts, if any.
std::optional<OddSquareDecomposition> decompose_odd_squares(U64 m, U64 r);

// Smallest r admitting a decomposition. Throws std::invalid_argument for m == 0.
U64 min_odd_squares(U64 m);

}  // namespace oddw::oddsq
