#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oddw::core {

using Int = std::int64_t;
using Wide = __int128;

inline constexpr int kMaxDim = 5;

// Symmetric integer matrix of dimension 1..kMaxDim, stored densely.
class GramMatrix {
 public:
  explicit GramMatrix(int n = 1);

  // Throws std::invalid_argument on ragged, empty, oversized or asymmetric input.
  static GramMatrix from_rows(const std::vector<std::vector<Int>>& rows);
  static GramMatrix diagonal(std::span<const Int> d);
  static GramMatrix identity(int n);

  int dim() const { return n_; }
  Int operator()(int i, int j) const { return m_[i * kMaxDim + j]; }
  // Writes both (i,j) and (j,i).
  void set(int i, int j, Int v);

  std::vector<std::vector<Int>> rows() const;
  std::string to_string() const;

  bool operator==(const GramMatrix& o) const;

 private:
  int n_;
  std::array<Int, kMaxDim * kMaxDim> m_{};
};

// Ordering by (m11..mnn, m12, m13, .., m1n, m23, ..); the order used for survivor lists.
bool canonical_less(const GramMatrix& a, const GramMatrix& b);

// Nonempty subset of {0..n-1}; printed and parsed 1-based at the I/O boundary.
class WSet {
 public:
  WSet() = default;
  static WSet from_indices(std::span<const int> zero_based);
  static WSet from_mask(unsigned mask) { WSet w; w.mask_ = mask; return w; }

  unsigned mask() const { return mask_; }
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  bool empty() const { return mask_ == 0; }
  int size() const;
  int last() const;  // largest member, -1 if empty
  std::vector<int> indices() const;
  std::vector<int> one_based() const;
  bool operator==(const WSet&) const = default;

 private:
  unsigned mask_ = 0;
};

// The coset K + w/2 where w is the sum of the basis vectors in `w`.
struct CosetSpec {
  GramMatrix gram;
  WSet w;

  CosetSpec(GramMatrix g, WSet w_);

  Int q_w() const;          // Q(w) = sum over i,j in w of m_ij
  Int b_w(int i) const;     // sum over j in w of m_ij
};

Int quadratic_value(const GramMatrix& g, std::span<const Int> x);

// Exact determinant by fraction-free elimination. Throws std::overflow_error.
Wide determinant(const GramMatrix& g);
// det of the leading k x k blocks, k = 1..n; stops early (shorter result) at the first nonpositive one
// when stop_at_nonpositive is set.
std::vector<Wide> leading_minors(const GramMatrix& g, bool stop_at_nonpositive = false);
bool is_positive_definite(const GramMatrix& g);

// Minkowski reduction conditions for n <= 4. Throws std::invalid_argument for n > 4.
bool is_minkowski_reduced(const GramMatrix& g);

struct ReducedEnumSpec {
  int n = 2;
  Int diag_max = 1;
  std::optional<WSet> parity_filter;  // keep only m_ii == b_w(i) mod 2 for all i
  std::vector<std::function<bool(const GramMatrix&)>> predicates;
};

// Positive definite Minkowski-reduced matrices with diagonal <= diag_max, in canonical order.
// The visitor returns false to stop early.
void enumerate_reduced(const ReducedEnumSpec& spec, const std::function<bool(const GramMatrix&)>& visit);
std::vector<GramMatrix> enumerate_reduced(const ReducedEnumSpec& spec);

// Parity condition m_ii == sum_{j in w} m_ij (mod 2) for every i.
bool parity_ok(const GramMatrix& g, WSet w);

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Int mod_pos(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}
Int isqrt(Int x);  // floor sqrt, x >= 0
std::string to_string(Wide v);

}  // namespace oddw::core
