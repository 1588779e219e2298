#include "oddwaring/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oddw::core {

GramMatrix::GramMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension must be in 1.." + std::to_string(kMaxDim));
}

GramMatrix GramMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  const int n = static_cast<int>(rows.size());
  GramMatrix g(n);  // validates n
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw std::invalid_argument("matrix is not square");
    for (int j = 0; j < n; ++j) g.m_[i * kMaxDim + j] = rows[i][j];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rows[i][j] != rows[j][i])
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
  return g;
}

GramMatrix GramMatrix::diagonal(std::span<const Int> d) {
  GramMatrix g(static_cast<int>(d.size()));
  for (int i = 0; i < g.n_; ++i) g.set(i, i, d[i]);
  return g;
}

GramMatrix GramMatrix::identity(int n) {
  GramMatrix g(n);
  for (int i = 0; i < n; ++i) g.set(i, i, 1);
  return g;
}

void GramMatrix::set(int i, int j, Int v) {
  m_[i * kMaxDim + j] = v;
  m_[j * kMaxDim + i] = v;
}

std::vector<std::vector<Int>> GramMatrix::rows() const {
  std::vector<std::vector<Int>> r(n_, std::vector<Int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

std::string GramMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

bool GramMatrix::operator==(const GramMatrix& o) const {
  if (n_ != o.n_) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != o(i, j)) return false;
  return true;
}

bool canonical_less(const GramMatrix& a, const GramMatrix& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    if (a(i, i) != b(i, i)) return a(i, i) < b(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

WSet WSet::from_indices(std::span<const int> zero_based) {
  WSet w;
  for (int i : zero_based) {
    if (i < 0 || i >= kMaxDim) throw std::invalid_argument("w index out of range");
    w.mask_ |= 1u << i;
  }
  return w;
}

int WSet::size() const { return __builtin_popcount(mask_); }

int WSet::last() const { return mask_ ? 31 - __builtin_clz(mask_) : -1; }

std::vector<int> WSet::indices() const {
  std::vector<int> v;
  for (int i = 0; i < kMaxDim; ++i)
    if (contains(i)) v.push_back(i);
  return v;
}

std::vector<int> WSet::one_based() const {
  auto v = indices();
  for (int& i : v) ++i;
  return v;
}

CosetSpec::CosetSpec(GramMatrix g, WSet w_) : gram(std::move(g)), w(w_) {
  if (w.empty()) throw std::invalid_argument("w must be nonempty");
  if (w.last() >= gram.dim()) throw std::invalid_argument("w index exceeds dimension");
}

Int CosetSpec::q_w() const {
  Int s = 0;
  for (int i : w.indices()) s += b_w(i);
  return s;
}

Int CosetSpec::b_w(int i) const {
  Int s = 0;
  for (int j : w.indices()) s += gram(i, j);
  return s;
}

Int quadratic_value(const GramMatrix& g, std::span<const Int> x) {
  if (static_cast<int>(x.size()) != g.dim()) throw std::invalid_argument("vector length mismatch");
  Wide s = 0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) s += Wide(g(i, j)) * x[i] * x[j];
  if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("quadratic value overflows int64");
  return static_cast<Int>(s);
}

namespace {

Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("determinant overflow");
  return r;
}

Wide checked_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("determinant overflow");
  return r;
}

// Bareiss elimination without pivoting; pivots[k] is the (k+1)-th leading minor.
// Returns false if a zero pivot forced a row swap (then only the determinant is meaningful).
std::vector<Wide> bareiss(const GramMatrix& g, bool stop_at_nonpositive, bool& swapped, Wide& det) {
  const int n = g.dim();
  std::array<std::array<Wide, kMaxDim>, kMaxDim> a{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = g(i, j);
  std::vector<Wide> minors;
  swapped = false;
  int sign = 1;
  Wide prev = 1;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) {
        det = 0;
        swapped = true;  // later minors unknown; callers recompute them blockwise
        minors.push_back(0);
        return minors;
      }
      std::swap(a[p], a[k]);
      sign = -sign;
      swapped = true;
    }
    minors.push_back(swapped ? 0 : a[k][k]);
    if (stop_at_nonpositive && !swapped && a[k][k] <= 0) {
      det = 0;
      return minors;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = checked_sub(checked_mul(a[i][j], a[k][k]), checked_mul(a[i][k], a[k][j])) / prev;
    prev = a[k][k];
  }
  det = sign * a[n - 1][n - 1];
  return minors;
}

}  // namespace

Wide determinant(const GramMatrix& g) {
  bool swapped;
  Wide det;
  bareiss(g, false, swapped, det);
  return det;
}

std::vector<Wide> leading_minors(const GramMatrix& g, bool stop_at_nonpositive) {
  const int n = g.dim();
  bool swapped;
  Wide det;
  auto m = bareiss(g, stop_at_nonpositive, swapped, det);
  if (!swapped) return m;
  // A zero leading minor forced pivoting; fall back to computing each block separately.
  std::vector<Wide> out;
  for (int k = 1; k <= n; ++k) {
    GramMatrix sub(k);
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) sub.set(i, j, g(i, j));
    out.push_back(determinant(sub));
    if (stop_at_nonpositive && out.back() <= 0) break;
  }
  return out;
}

bool is_positive_definite(const GramMatrix& g) {
  auto m = leading_minors(g, true);
  if (static_cast<int>(m.size()) < g.dim()) return false;
  return std::all_of(m.begin(), m.end(), [](Wide v) { return v > 0; });
}

bool is_minkowski_reduced(const GramMatrix& g) {
  const int n = g.dim();
  if (n > 4) throw std::invalid_argument("Minkowski conditions are implemented for n <= 4");
  auto m = [&](int i, int j) { return g(i - 1, j - 1); };  // 1-based view
  if (m(1, 1) <= 0) return false;
  for (int i = 1; i < n; ++i)
    if (m(i, i) > m(i + 1, i + 1)) return false;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (2 * std::abs(m(i, j)) > m(i, i)) return false;
  for (int j = 2; j <= n; ++j)
    if (m(1, j) < 0) return false;
  // Doubled to stay in integers.
  for (int i = 2; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (2 * m(i, j) < -(m(1, 1) + m(i, i)) + 2 * m(1, i) + 2 * m(1, j)) return false;
  if (n == 4) {
    const Int s23 = m(2, 2) + m(3, 3), s123 = m(1, 1) + s23;
    const Int m12 = m(1, 2), m13 = m(1, 3), m14 = m(1, 4), m23 = m(2, 3), m24 = m(2, 4);
    const Int x = 2 * m(3, 4);
    const Int lower[4] = {-s23 - 2 * m23 - 2 * m24, -s23 + 2 * m23 + 2 * m24,
                          -s123 + 2 * (m12 + m13 + m14 - m23 - m24),
                          -s123 + 2 * (-m12 + m13 + m14 + m23 + m24)};
    const Int upper[4] = {s23 - 2 * m23 + 2 * m24, s23 + 2 * m23 - 2 * m24,
                          s123 + 2 * (-m12 + m13 - m14 - m23 + m24),
                          s123 + 2 * (-m12 - m13 + m14 + m23 - m24)};
    for (Int l : lower)
      if (x < l) return false;
    for (Int u : upper)
      if (x > u) return false;
  }
  return true;
}

bool parity_ok(const GramMatrix& g, WSet w) {
  for (int i = 0; i < g.dim(); ++i) {
    Int s = 0;
    for (int j : w.indices()) s += g(i, j);
    if (mod_pos(g(i, i) - s, 2) != 0) return false;
  }
  return true;
}

namespace {

// Walks diagonals first, then the upper triangle row by row, checking each reduction
// inequality as soon as all its entries are fixed.
struct ReducedWalker {
  const ReducedEnumSpec& spec;
  const std::function<bool(const GramMatrix&)>& visit;
  GramMatrix g;
  std::vector<std::pair<int, int>> offdiag;
  bool stopped = false;

  ReducedWalker(const ReducedEnumSpec& s, const std::function<bool(const GramMatrix&)>& v)
      : spec(s), visit(v), g(s.n) {
    for (int i = 0; i < s.n; ++i)
      for (int j = i + 1; j < s.n; ++j) offdiag.emplace_back(i, j);
  }

  void diag(int i, Int lo) {
    if (stopped) return;
    if (i == spec.n) {
      off(0);
      return;
    }
    for (Int d = lo; d <= spec.diag_max && !stopped; ++d) {
      g.set(i, i, d);
      diag(i + 1, d);
    }
  }

  bool entry_ok(int i, int j) const {
    const Int v = g(i, j);
    if (i >= 1 && 2 * v < -(g(0, 0) + g(i, i)) + 2 * g(0, i) + 2 * g(0, j)) return false;
    return true;
  }

  void off(size_t idx) {
    if (stopped) return;
    if (idx == offdiag.size()) {
      finish();
      return;
    }
    auto [i, j] = offdiag[idx];
    const Int h = g(i, i) / 2;
    const Int lo = i == 0 ? 0 : -h;
    for (Int v = lo; v <= h && !stopped; ++v) {
      g.set(i, j, v);
      if (!entry_ok(i, j)) continue;
      if (spec.n == 4 && i == 2 && j == 3 && !is_minkowski_reduced(g)) continue;
      off(idx + 1);
    }
    g.set(i, j, 0);
  }

  void finish() {
    if (!is_positive_definite(g)) return;
    if (spec.parity_filter && !parity_ok(g, *spec.parity_filter)) return;
    for (auto& p : spec.predicates)
      if (!p(g)) return;
    if (!visit(g)) stopped = true;
  }
};

}  // namespace

void enumerate_reduced(const ReducedEnumSpec& spec, const std::function<bool(const GramMatrix&)>& visit) {
  if (spec.n < 1 || spec.n > 4) throw std::invalid_argument("enumerate_reduced supports n in 1..4");
  if (spec.diag_max < 1) return;
  ReducedWalker w(spec, visit);
  w.diag(0, 1);
}

std::vector<GramMatrix> enumerate_reduced(const ReducedEnumSpec& spec) {
  std::vector<GramMatrix> out;
  enumerate_reduced(spec, [&](const GramMatrix& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

Int isqrt(Int x) {
  if (x < 0) throw std::domain_error("isqrt of negative");
  Int r = static_cast<Int>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && Wide(r) * r > x) --r;
  while (Wide(r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::string to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace oddw::core
