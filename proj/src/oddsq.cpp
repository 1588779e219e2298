#include "oddwaring/oddsq.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace oddw::oddsq {

namespace {

U64 isqrt_u(U64 x) {
  U64 r = static_cast<U64>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > x) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

bool is_odd_square(U64 m) {
  U64 s = isqrt_u(m);
  return s * s == m && (s & 1u);
}

class Searcher {
 public:
  // r odd parts, each <= cap, squares summing to m.
  bool feasible(U64 m, U64 r, U64 cap) {
    if (r == 0) return m == 0;
    if (m < r || (m - r) % 8 != 0) return false;
    if (cap == 0) return false;
    const U64 top = largest_odd_at_most(std::min(cap, isqrt_u(m)));
    if (top == 0) return false;
    if (static_cast<unsigned __int128>(top) * top * r < m) return false;
    if (static_cast<unsigned __int128>(cap) * cap >= m) {
      if (r == 1) return is_odd_square(m);
      if (r == 2) return m % 8 == 2 && is_sum_of_two_squares(m);
      return true;  // m == r (mod 8), m >= r: m-(r-3) is == 3 (mod 8), a sum of three odd squares
    }
    auto key = std::make_tuple(m, r, top);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (U64 t = top; t >= 1 && !ok; t -= 2) {
      ok = feasible(m - t * t, r - 1, t);
      if (t == 1) break;
    }
    memo_[key] = ok;
    return ok;
  }

  static U64 largest_odd_at_most(U64 x) { return x == 0 ? 0 : ((x & 1u) ? x : x - 1); }

 private:
  std::map<std::tuple<U64, U64, U64>, bool> memo_;
};

}  // namespace

bool is_sum_of_two_squares(U64 m) {
  if (m == 0) return true;
  while (m % 2 == 0) m /= 2;
  for (U64 p = 3; p * p <= m; p += 2) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (p % 4 == 3 && (e & 1)) return false;
  }
  return m % 4 != 3;
}

bool is_sum_of_three_squares(U64 m) {
  if (m == 0) throw std::invalid_argument("M must be positive");
  while (m % 4 == 0) m /= 4;
  return m % 8 != 7;
}

std::optional<OddSquareDecomposition> decompose_odd_squares(U64 m, U64 r) {
  if (m == 0 || r == 0) throw std::invalid_argument("M and r must be positive");
  Searcher s;
  U64 cap = Searcher::largest_odd_at_most(isqrt_u(m));
  if (!s.feasible(m, r, cap)) return std::nullopt;
  OddSquareDecomposition d{m, {}};
  U64 rest = m;
  for (U64 k = r; k > 0; --k) {
    for (U64 t = Searcher::largest_odd_at_most(std::min(cap, isqrt_u(rest)));; t -= 2) {
      if (s.feasible(rest - t * t, k - 1, t)) {
        d.parts.push_back(t);
        rest -= t * t;
        cap = t;
        break;
      }
      if (t == 1) throw std::logic_error("decomposition search lost feasibility");
    }
  }
  return d;
}

U64 min_odd_squares(U64 m) {
  if (m == 0) throw std::invalid_argument("M must be positive");
  Searcher s;
  const U64 cap = Searcher::largest_odd_at_most(isqrt_u(m));
  for (U64 r = (m % 8 == 0) ? 8 : m % 8;; r += 8)
    if (s.feasible(m, r, cap)) return r;
}

}  // namespace oddw::oddsq
