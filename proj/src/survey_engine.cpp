#include "survey_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "oddwaring/criteria.hpp"

namespace oddw::survey::detail {

using core::Wide;

void Counters::add(const Counters& o) {
  scanned += o.scanned;
  not_pd += o.not_pd;
  parity += o.parity;
  assumption += o.assumption;
  rkw += o.rkw;
  rkw_family += o.rkw_family;
  discharge += o.discharge;
  split += o.split;
  pruned += o.pruned;
  zero_first_row += o.zero_first_row;
  printed_bound_checked += o.printed_bound_checked;
  printed_bound_tighter += o.printed_bound_tighter;
  printed_bound_inapplicable += o.printed_bound_inapplicable;
  max_trailing_diag = std::max(max_trailing_diag, o.max_trailing_diag);
  max_middle_diag = std::max(max_middle_diag, o.max_middle_diag);
}

std::vector<Job> make_jobs(int n, const std::vector<WSet>& ws) {
  std::vector<Job> jobs;
  Job last{{}, 0};
  for (WSet w : ws) {
    if (w.last() == n - 1)
      last.ws.push_back(w);
    else
      jobs.push_back(Job{{w}, n - 1 - w.last()});
  }
  if (!last.ws.empty()) jobs.insert(jobs.begin(), last);
  return jobs;
}

namespace {

Int floor_div_w(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<Int>(q);
}

Int ceil_half(Int x) { return -core::floor_div(-x, 2); }

// Symmetric block of size 1..3 with its adjugate and determinant.
struct Block {
  int m = 0;
  Int a[3][3] = {};
  Wide adj[3][3] = {};
  Wide det = 0;

  bool pd() const {
    if (a[0][0] <= 0) return false;
    if (m >= 2 && Wide(a[0][0]) * a[1][1] - Wide(a[0][1]) * a[0][1] <= 0) return false;
    return det > 0;
  }

  void finish() {
    if (m == 1) {
      adj[0][0] = 1;
      det = a[0][0];
    } else if (m == 2) {
      adj[0][0] = a[1][1];
      adj[1][1] = a[0][0];
      adj[0][1] = adj[1][0] = -Wide(a[0][1]);
      det = Wide(a[0][0]) * a[1][1] - Wide(a[0][1]) * a[0][1];
    } else {
      adj[0][0] = Wide(a[1][1]) * a[2][2] - Wide(a[1][2]) * a[1][2];
      adj[1][1] = Wide(a[0][0]) * a[2][2] - Wide(a[0][2]) * a[0][2];
      adj[2][2] = Wide(a[0][0]) * a[1][1] - Wide(a[0][1]) * a[0][1];
      adj[0][1] = adj[1][0] = Wide(a[0][2]) * a[1][2] - Wide(a[0][1]) * a[2][2];
      adj[0][2] = adj[2][0] = Wide(a[0][1]) * a[1][2] - Wide(a[0][2]) * a[1][1];
      adj[1][2] = adj[2][1] = Wide(a[0][1]) * a[0][2] - Wide(a[0][0]) * a[1][2];
      det = a[0][0] * adj[0][0] + a[0][1] * adj[0][1] + a[0][2] * adj[0][2];
    }
  }

  // b^t adj b
  Wide form(const Int* b) const {
    Wide s = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s += adj[i][j] * b[i] * b[j];
    return s;
  }
};

bool pd4(const Int a[4][4], int n) {
  Block b;
  b.m = std::min(n, 3);
  for (int i = 0; i < b.m; ++i)
    for (int j = 0; j < b.m; ++j) b.a[i][j] = a[i][j];
  b.finish();
  if (!b.pd()) return false;
  if (n <= 3) return true;
  // det of 4x4 = det(L) * (a33 - b^t L^{-1} b), so det > 0 iff a33 * det(L) > b^t adj(L) b.
  const Int col[3] = {a[0][3], a[1][3], a[2][3]};
  return Wide(a[3][3]) * b.det > b.form(col);
}

// Largest t such that the trailing 2x2 Schur test does not certify every t' > t. Inputs: D = det of
// the (shifted) leading 2x2 block, Y = B^t adj B for the two trailing columns B.
Int schur_tail_bound(Wide d, Wide y22, Wide y23, Wide y33) {
  const Wide s = y22 + y33 + (y23 < 0 ? -y23 : y23);
  const Wide pdet = y22 * y33 - y23 * y23;
  auto g = [&](Int t) { return 3 * d * d * t * t - 4 * d * s * t + 4 * pdet; };
  Int t0 = std::max(floor_div_w(y22, d), floor_div_w(y33, d)) + 1;
  t0 = std::max<Int>(t0, floor_div_w(2 * s + 3 * d - 1, 3 * d));  // t >= vertex 2s/(3d)
  const long double ls = static_cast<long double>(s), lp = static_cast<long double>(pdet);
  const long double disc = 4 * ls * ls - 12 * lp;
  if (disc > 0) {
    const long double root = (2 * ls + std::sqrt(disc)) / (3 * static_cast<long double>(d));
    t0 = std::max<Int>(t0, static_cast<Int>(std::floor(root)) - 2);
  }
  while (g(t0) <= 0) ++t0;
  return t0 - 1;
}

class Engine {
 public:
  Engine(const EngineConfig& cfg, const Job& job)
      : cfg_(cfg), job_(job), n_(cfg.n), kmax_(cfg.n + 2), thr_(cfg.n + 10),
        c_(criteria::lower_bound_constant(cfg.n)) {
    for (Int k = 1; k <= 8; ++k)
      for (int t = 1; t <= 4; ++t) comps_[k][t] = criteria::compositions(k, t);
  }

  UnitOut run(Int a00) {
    set(0, 0, a00);
    if (job_.tail >= 2 && n_ != 4) {
      // Only a single-index w reaches here (n = 3, w = {1}); its prefix filters reject every a00.
      if (prefix_filters(job_.ws.front(), 0) != 0) throw std::logic_error("unsupported case shape");
      return std::move(out_);
    }
    switch (job_.tail) {
      case 0: run_tail0(); break;
      case 1: run_tail1(); break;
      case 2: run_tail2(); break;
      case 3: run_tail3(); break;
      default: throw std::logic_error("unsupported case shape");
    }
    return std::move(out_);
  }

 private:
  struct Comp {
    std::vector<Int> parts;
    Block blk;
  };

  void set(int i, int j, Int v) { a_[i][j] = a_[j][i] = v; }

  void tick() {
    ++out_.cnt.scanned;
    if (cfg_.max_candidates && out_.cnt.scanned > *cfg_.max_candidates)
      throw ResourceCap("candidate cap exceeded");
  }

  // Range of a_ij (i < j) allowed by the reduction conditions, given entries fixed so far.
  std::pair<Int, Int> off_range(int i, int j) const {
    const Int h = a_[i][i] / 2;
    Int lo = i == 0 ? 0 : -h, hi = h;
    if (i >= 1) lo = std::max(lo, ceil_half(-(a_[0][0] + a_[i][i]) + 2 * a_[0][i] + 2 * a_[0][j]));
    if (n_ == 4 && i == 2 && j == 3) {
      const Int s23 = a_[1][1] + a_[2][2], s123 = a_[0][0] + s23;
      const Int m12 = a_[0][1], m13 = a_[0][2], m14 = a_[0][3], m23 = a_[1][2], m24 = a_[1][3];
      const Int lower[4] = {-s23 - 2 * m23 - 2 * m24, -s23 + 2 * m23 + 2 * m24,
                            -s123 + 2 * (m12 + m13 + m14 - m23 - m24),
                            -s123 + 2 * (-m12 + m13 + m14 + m23 + m24)};
      const Int upper[4] = {s23 - 2 * m23 + 2 * m24, s23 + 2 * m23 - 2 * m24,
                            s123 + 2 * (-m12 + m13 - m14 - m23 + m24),
                            s123 + 2 * (-m12 - m13 + m14 + m23 - m24)};
      for (Int l : lower) lo = std::max(lo, ceil_half(l));
      for (Int u : upper) hi = std::min(hi, core::floor_div(u, 2));
    }
    return {lo, hi};
  }

  // Fills the leading m x m block (a00 fixed) column by column with reduced entries, diagonal <= lead_max.
  void enum_block(int m, const std::function<void()>& f) { block_slot(m, 1, 0, f); }

  void block_slot(int m, int j, int i, const std::function<void()>& f) {
    if (j == m) {
      f();
      return;
    }
    if (i < j) {
      auto [lo, hi] = off_range(i, j);
      for (Int v = lo; v <= hi; ++v) {
        set(i, j, v);
        block_slot(m, j, i + 1, f);
      }
      set(i, j, 0);
      return;
    }
    for (Int d = a_[j - 1][j - 1]; d <= cfg_.lead_max; ++d) {
      set(j, j, d);
      block_slot(m, j + 1, 0, f);
    }
    set(j, j, 0);
  }

  Block block(int m, const Int* shift = nullptr) const {
    Block b;
    b.m = m;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) b.a[i][j] = a_[i][j];
    if (shift)
      for (int i = 0; i < m; ++i) b.a[i][i] -= shift[i];
    b.finish();
    return b;
  }

  Int q_w(WSet w) const {
    Int s = 0;
    for (int i = 0; i < n_; ++i)
      if (w.contains(i))
        for (int j = 0; j < n_; ++j)
          if (w.contains(j)) s += a_[i][j];
    return s;
  }

  bool row_parity(WSet w, int i) const {
    Int s = 0;
    for (int j = 0; j < n_; ++j)
      if (w.contains(j)) s += a_[i][j];
    return core::mod_pos(a_[i][i] - s, 2) == 0;
  }

  // Filters that depend only on rows/cols 0..p (p = last index of w). Returns k, or 0 if rejected.
  Int prefix_filters(WSet w, int p) {
    for (int i = 0; i <= p; ++i)
      if (!row_parity(w, i)) {
        ++out_.cnt.parity;
        return 0;
      }
    const Int q = q_w(w);
    const Int k = criteria::split_residue(q);
    if (q <= thr_ || k > kmax_) {
      ++out_.cnt.assumption;
      return 0;
    }
    {
      Int ds = 0;
      for (int i : w.indices()) ds += a_[i][i];
      if ((cfg_.rkw_exact ? ds - core::mod_pos(ds - q, 8) : ds) <= thr_) {
        ++out_.cnt.rkw;
        return 0;
      }
    }
    if (cfg_.discharge && c_.num * a_[p][p] > k * c_.den) {
      ++out_.cnt.discharge;
      return 0;
    }
    return k;
  }

  // Compositions of k over w whose shift leaves the leading m x m block positive definite.
  std::vector<Comp> valid_comps(WSet w, Int k, int m) const {
    std::vector<Comp> out;
    const auto idx = w.indices();
    for (const auto& parts : comps_[k][idx.size()]) {
      Int shift[3] = {0, 0, 0};
      for (size_t t = 0; t < idx.size(); ++t) shift[idx[t]] = parts[t];
      Block b = block(m, shift);
      if (b.pd()) out.push_back(Comp{parts, b});
    }
    return out;
  }

  bool has_split(WSet w, Int k) const {
    const auto idx = w.indices();
    for (const auto& parts : comps_[k][idx.size()]) {
      Int s[4][4];
      std::copy(&a_[0][0], &a_[0][0] + 16, &s[0][0]);
      for (size_t t = 0; t < idx.size(); ++t) s[idx[t]][idx[t]] -= parts[t];
      if (pd4(s, n_)) return true;
    }
    return false;
  }

  void record(WSet w) {
    RawSurvivor s;
    std::copy(&a_[0][0], &a_[0][0] + 16, &s.a[0][0]);
    s.wmask = w.mask();
    out_.surv.push_back(s);
  }

  // Walks the last column b = a[0..m-1][n-1], skipping any box on which the convex form
  // b^t adj b stays below tau * det (that box has a split for every admissible last diagonal).
  void last_column_walk(const Block& blk, Wide tau_det, bool prune, const std::function<void()>& f) {
    walk_b(blk, tau_det, prune, 0, f);
  }

  void walk_b(const Block& blk, Wide tau_det, bool prune, int i, const std::function<void()>& f) {
    const int m = n_ - 1;
    if (i == m) {
      f();
      return;
    }
    auto [lo, hi] = off_range(i, n_ - 1);
    for (Int v = lo; v <= hi; ++v) {
      set(i, n_ - 1, v);
      if (prune && box_max(blk, i + 1) < tau_det) {
        ++out_.cnt.pruned;
        continue;
      }
      walk_b(blk, tau_det, prune, i + 1, f);
    }
    set(i, n_ - 1, 0);
  }

  // Max of b^t adj b with b[0..fixed-1] as set and the rest ranging over |b_i| <= a_ii/2.
  Wide box_max(const Block& blk, int fixed) const {
    const int m = n_ - 1;
    Int b[3];
    for (int i = 0; i < fixed; ++i) b[i] = a_[i][n_ - 1];
    const int free = m - fixed;
    Wide best = -1;
    for (int mask = 0; mask < (1 << free); ++mask) {
      for (int t = 0; t < free; ++t) {
        const int i = fixed + t;
        const Int h = a_[i][i] / 2;
        b[i] = (mask >> t & 1) ? h : (i == 0 ? 0 : -h);
      }
      best = std::max(best, blk.form(b));
    }
    return best;
  }

  // Tail 0: w contains the last index. L = leading (n-1) block; candidates need the last
  // diagonal d with d - k <= b^t L^{-1} b, else k E_nn already splits.
  void run_tail0() {
    enum_block(n_ - 1, [&] {
      Block L = block(n_ - 1);
      if (!L.pd()) {
        ++out_.cnt.not_pd;
        return;
      }
      const Int prev = a_[n_ - 2][n_ - 2];
      const Wide tau_det = Wide(prev - kmax_) * L.det;
      last_column_walk(L, tau_det, prev > kmax_, [&] {
        Int b[3];
        for (int i = 0; i < n_ - 1; ++i) b[i] = a_[i][n_ - 1];
        const Wide q0 = L.form(b);
        const Int fl = floor_div_w(q0, L.det);
        const Int dlo = std::max(prev, fl + 1), dhi = std::min(cfg_.lead_max, fl + kmax_);
        for (Int d = dlo; d <= dhi; ++d) {
          set(n_ - 1, n_ - 1, d);
          for (WSet w : job_.ws) {
            tick();
            const Int k = prefix_filters(w, n_ - 1);
            if (k == 0) continue;
            if (Wide(d - k) * L.det > q0 || has_split(w, k)) {
              ++out_.cnt.split;
              continue;
            }
            record(w);
          }
        }
        set(n_ - 1, n_ - 1, 0);
      });
    });
  }

  // Last column and raised last diagonal for a fixed leading (n-1) block L whose valid split
  // compositions are `comps`. Records every d from the first admissible value up to the first
  // split; the count is min over comps of floor(b^t adj b / det).
  void finish_last(const Block& L, const std::vector<Comp>& comps, WSet w) {
    Int b[3];
    for (int i = 0; i < n_ - 1; ++i) b[i] = a_[i][n_ - 1];
    const Wide q0 = L.form(b);
    Int par = 0;
    for (int j : w.indices()) par += b[j];
    Int start = std::max(a_[n_ - 2][n_ - 2], floor_div_w(q0, L.det) + 1);
    if (core::mod_pos(start - par, 2) != 0) ++start;
    Int top = INT64_MAX;
    for (const auto& c : comps) {
      top = std::min(top, floor_div_w(c.blk.form(b), c.blk.det));
      if (top < start) break;
    }
    out_.cnt.max_trailing_diag = std::max(out_.cnt.max_trailing_diag, std::max(start, top == INT64_MAX ? start : top));
    for (Int d = start; d <= top; d += 2) {
      tick();
      set(n_ - 1, n_ - 1, d);
      if (has_split(w, criteria::split_residue(q_w(w)))) throw std::logic_error("split bound disagrees with exact check");
      record(w);
    }
    tick();  // the first d with a split
    ++out_.cnt.split;
    set(n_ - 1, n_ - 1, 0);
  }

  const Comp& pick_comp(const std::vector<Comp>& comps, WSet w, Int k) const {
    // Prefer all of k on the last w index, the shift the lower-bound argument uses.
    const size_t t = w.size();
    for (const auto& c : comps)
      if (c.parts[t - 1] == k) return c;
    return comps.front();
  }

  // With the coarse cutoff a prefix whose raising process cannot end is still settled as a whole
  // family when r_{K,w}, which depends on the w block alone, is <= n+10.
  bool family_settled(WSet w) {
    if (cfg_.rkw_exact) return false;
    Int ds = 0;
    for (int i : w.indices()) ds += a_[i][i];
    const Int q = q_w(w);
    if (ds - core::mod_pos(ds - q, 8) > thr_) return false;
    ++out_.cnt.rkw_family;
    return true;
  }

  [[noreturn]] void nonterminating(const char* where) const {
    std::string m = std::string("no split composition keeps the leading block positive definite (") + where + ") at ";
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) m += std::to_string(a_[i][j]) + (i == n_ - 1 && j == n_ - 1 ? "" : ",");
    throw std::logic_error(m);
  }

  // Tail 1: w inside the leading (n-1) block; the last diagonal is raised until a split appears.
  void run_tail1() {
    const WSet w = job_.ws.front();
    enum_block(n_ - 1, [&] {
      Block L = block(n_ - 1);
      if (!L.pd()) {
        ++out_.cnt.not_pd;
        return;
      }
      const Int k = prefix_filters(w, n_ - 2);
      if (k == 0) return;
      const auto comps = valid_comps(w, k, n_ - 1);
      if (comps.empty()) {
        if (family_settled(w)) return;
        nonterminating("tail 1");
      }
      const Comp& cs = pick_comp(comps, w, k);
      const Int prev = a_[n_ - 2][n_ - 2];
      last_column_walk(cs.blk, Wide(prev) * cs.blk.det, true, [&] { finish_last(L, comps, w); });
    });
  }

  // Shared by tails 2 and 3: entries a02, a12, a03, a13 are set, P is the shifted leading 2x2.
  // Returns the largest a22 not certified by the trailing 2x2 Schur test.
  Int middle_bound(const Block& P) const {
    const Int b2[2] = {a_[0][2], a_[1][2]}, b3[2] = {a_[0][3], a_[1][3]};
    const Wide y22 = P.form(b2), y33 = P.form(b3);
    Wide y23 = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) y23 += P.adj[i][j] * b2[i] * b3[j];
    return schur_tail_bound(P.det, y22, y23, y33);
  }

  // a22 from a11 up to `top` (row-2 parity), then a23, then the last column tail.
  void middle_rest(WSet w, Int k, Int top) {
    Int par = 0;
    for (int j : w.indices()) par += a_[2][j];
    Int start = a_[1][1];
    if (core::mod_pos(start - par, 2) != 0) ++start;
    if (top >= start) out_.cnt.max_middle_diag = std::max(out_.cnt.max_middle_diag, top);
    for (Int a22 = start; a22 <= top; a22 += 2) {
      set(2, 2, a22);
      auto [lo, hi] = off_range(2, 3);
      for (Int a23 = lo; a23 <= hi; ++a23) {
        set(2, 3, a23);
        Block L = block(3);
        if (!L.pd()) {
          ++out_.cnt.not_pd;
          continue;
        }
        const auto comps = valid_comps(w, k, 3);
        if (comps.empty()) {
          if (family_settled(w)) continue;
          nonterminating("middle");
        }
        finish_last(L, comps, w);
      }
      set(2, 3, 0);
    }
    set(2, 2, 0);
  }

  // Tail 2 (n = 4, last index of w is 1).
  void run_tail2() {
    const WSet w = job_.ws.front();
    enum_block(2, [&] {
      Block P = block(2);
      if (!P.pd()) {
        ++out_.cnt.not_pd;
        return;
      }
      const Int k = prefix_filters(w, 1);
      if (k == 0) return;
      const auto comps = valid_comps(w, k, 2);
      if (comps.empty()) {
        if (family_settled(w)) return;
        nonterminating("tail 2");
      }
      // The printed completing-square bound uses all of k on index 1.
      const Int m22p = a_[1][1] - k;
      const Wide e = 2 * Wide(a_[0][0]) * m22p - 5 * Wide(a_[0][1]) * a_[0][1];
      const Int kshift[2] = {0, k};
      const bool printed_ok = m22p > 0 && e > 0 && block(2, kshift).pd();
      for (Int a02 = 0; a02 <= a_[0][0] / 2; ++a02) {
        set(0, 2, a02);
        auto [l12, h12] = off_range(1, 2);
        for (Int a12 = l12; a12 <= h12; ++a12) {
          set(1, 2, a12);
          for (Int a03 = 0; a03 <= a_[0][0] / 2; ++a03) {
            set(0, 3, a03);
            auto [l13, h13] = off_range(1, 3);
            for (Int a13 = l13; a13 <= h13; ++a13) {
              set(1, 3, a13);
              Int top = INT64_MAX;
              for (const auto& c : comps) top = std::min(top, middle_bound(c.blk));
              if (printed_ok) {
                const Int pb = printed_bound_iii(k, m22p, e);
                ++out_.cnt.printed_bound_checked;
                if (pb < top) {
                  ++out_.cnt.printed_bound_tighter;
                  top = pb;
                }
              } else {
                ++out_.cnt.printed_bound_inapplicable;
              }
              if (top < a_[1][1]) {
                ++out_.cnt.pruned;
                continue;
              }
              middle_rest(w, k, top);
            }
          }
        }
      }
      for (int j = 2; j < 4; ++j) set(0, j, 0), set(1, j, 0);
    });
  }

  // Largest a22 with 3 a22 <= 8 C0, C0 the completing-square constant:
  // C0 = max(10/3 m23^2/m22' + m13 s / C, 10/3 m24^2/m22' + m14 s / C), s = m13 + m14,
  // C = m11 - 5 m12^2 / (2 m22') = e / (2 m22'). Cleared of denominators 3 m22' e.
  Int printed_bound_iii(Int, Int m22p, Wide e) const {
    const Int m13 = a_[0][2], m14 = a_[0][3], m23 = a_[1][2], m24 = a_[1][3];
    const Wide s = m13 + m14;
    auto term = [&](Int mx3, Int m1x) { return 8 * (10 * Wide(mx3) * mx3 * e + 6 * Wide(m22p) * m22p * m1x * s); };
    const Wide rhs = std::max(term(m23, m13), term(m24, m14));
    const Wide den = 9 * Wide(m22p) * e;
    return floor_div_w(rhs, den);
  }

  // Tail 3 (n = 4, w = {0}).
  void run_tail3() {
    const WSet w = job_.ws.front();
    const Int k = prefix_filters(w, 0);
    if (k == 0) return;
    const Int a00 = a_[0][0], m11p = a00 - k;
    if (m11p <= 0) nonterminating("tail 3");
    const Int h = a00 / 2;
    for (Int a01 = 0; a01 <= h; ++a01) {
      set(0, 1, a01);
      for (Int a02 = 0; a02 <= h; ++a02) {
        set(0, 2, a02);
        for (Int a03 = 0; a03 <= h; ++a03) {
          set(0, 3, a03);
          const Int m234 = a01 + a02 + a03;
          if (m234 == 0) {
            ++out_.cnt.zero_first_row;
            continue;
          }
          // Printed bound: a split exists once m22 > 2 m234^2 / m11'.
          const Int top11 = core::floor_div(2 * m234 * m234, m11p);
          Int a11 = a00;
          if (core::mod_pos(a11 - a01, 2) != 0) ++a11;
          for (; a11 <= top11; a11 += 2) {
            set(1, 1, a11);
            out_.cnt.max_middle_diag = std::max(out_.cnt.max_middle_diag, a11);
            const Int shift[2] = {k, 0};
            Block P = block(2, shift);
            if (!P.pd()) nonterminating("tail 3 leading pair");
            auto [l12, h12] = off_range(1, 2);
            for (Int a12 = l12; a12 <= h12; ++a12) {
              set(1, 2, a12);
              auto [l13, h13] = off_range(1, 3);
              for (Int a13 = l13; a13 <= h13; ++a13) {
                set(1, 3, a13);
                const Int top = middle_bound(P);
                if (top < a11) {
                  ++out_.cnt.pruned;
                  continue;
                }
                middle_rest(w, k, top);
              }
              set(1, 3, 0);
            }
            set(1, 2, 0);
          }
          set(1, 1, 0);
        }
      }
    }
  }

  const EngineConfig& cfg_;
  const Job& job_;
  int n_;
  Int kmax_, thr_;
  criteria::Ratio c_;
  std::vector<std::vector<Int>> comps_[9][5];
  Int a_[4][4] = {};
  UnitOut out_;
};

}  // namespace

UnitOut run_unit(const EngineConfig& cfg, const Job& job, Int a00) {
  if (cfg.n < 2 || cfg.n > 4) throw std::invalid_argument("survey supports n = 2, 3, 4");
  Engine e(cfg, job);
  return e.run(a00);
}

}  // namespace oddw::survey::detail
