#include "oddwaring/repsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "oddwaring/criteria.hpp"

namespace oddw::repsearch {

using core::Wide;

std::vector<std::vector<Int>> RepMatrix::to_rows() const {
  std::vector<std::vector<Int>> out(rows_, std::vector<Int>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::found: return "found";
    case Outcome::none: return "none";
    case Outcome::exhausted: return "exhausted";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::excluded: return "excluded_by_necessary_condition";
    case Verdict::none: return "none";
    case Verdict::found: return "found";
    case Verdict::exhausted: return "exhausted";
  }
  return "?";
}

bool verify_representation(const core::CosetSpec& c, const RepMatrix& t) {
  const int n = c.gram.dim();
  if (t.rows() != n || t.cols() < 1) return false;
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      Wide s = 0;
      for (int j = 0; j < t.cols(); ++j) s += Wide(t(i, j)) * t(k, j);
      if (s != c.gram(i, k)) return false;
    }
  for (int j = 0; j < t.cols(); ++j) {
    Int s = 0;
    for (int i : c.w.indices()) s += t(i, j);
    if (core::mod_pos(s, 2) != 1) return false;
  }
  return true;
}

namespace {

// Rows are filled in a processing order: w rows first (the last of them has every entry's parity
// forced), then the others; both groups by ascending norm.
struct Problem {
  int n = 0, r = 0;
  std::vector<int> order;
  std::vector<Int> target;  // n*n in processing order
  std::vector<char> inw;
  int last_w = -1;
  bool canon = true;

  Int tgt(int i, int j) const { return target[i * n + j]; }
};

Problem make_problem(const core::CosetSpec& c, Int r, bool canon) {
  Problem p;
  p.n = c.gram.dim();
  p.r = static_cast<int>(r);
  p.canon = canon;
  std::vector<int> w_rows, rest;
  for (int i = 0; i < p.n; ++i) (c.w.contains(i) ? w_rows : rest).push_back(i);
  auto by_norm = [&](int a, int b) { return c.gram(a, a) != c.gram(b, b) ? c.gram(a, a) < c.gram(b, b) : a < b; };
  std::stable_sort(w_rows.begin(), w_rows.end(), by_norm);
  std::stable_sort(rest.begin(), rest.end(), by_norm);
  p.order = w_rows;
  p.order.insert(p.order.end(), rest.begin(), rest.end());
  p.last_w = static_cast<int>(w_rows.size()) - 1;
  p.target.resize(p.n * p.n);
  p.inw.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    p.inw[i] = c.w.contains(p.order[i]);
    for (int j = 0; j < p.n; ++j) p.target[i * p.n + j] = c.gram(p.order[i], p.order[j]);
  }
  return p;
}

Int isqrt_small(Int x) {
  Int s = static_cast<Int>(std::sqrt(static_cast<double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

class Engine {
 public:
  Engine(const Problem& p, std::uint64_t max_nodes)
      : p_(p),
        n_(p.n),
        r_(p.r),
        max_nodes_(max_nodes),
        t_(n_ * r_, 0),
        sufsq_(n_ * (r_ + 1), 0),
        tie_((n_ + 1) * r_, 0),
        zero_((n_ + 1) * r_, 0),
        wpar_((n_ + 1) * r_, 0),
        need_suf_(r_ + 1, 0),
        dot_(n_ * n_, 0) {
    for (int j = 0; j < r_; ++j) {
      tie_[j] = j > 0;
      zero_[j] = 1;
    }
  }

  // Collect complete first rows instead of descending further.
  std::vector<std::vector<Int>> first_rows() {
    collect_ = true;
    search_row(0);
    collect_ = false;
    return std::move(collected_);
  }

  bool run_from_first_row(const std::vector<Int>& row0) {
    std::copy(row0.begin(), row0.end(), t_.begin());
    return complete_row(0);
  }

  bool run() { return search_row(0); }

  void set_abort(const std::atomic<size_t>* best, size_t mine) {
    best_ = best;
    mine_ = mine;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }
  bool aborted() const { return aborted_; }
  Int t(int i, int j) const { return t_[i * r_ + j]; }

 private:
  Int& T(int i, int j) { return t_[i * r_ + j]; }
  Int& suf(int i, int j) { return sufsq_[i * (r_ + 1) + j]; }

  bool search_row(int k) {
    if (k == n_) return true;
    if (k == p_.last_w) {
      need_suf_[r_] = 0;
      for (int j = r_ - 1; j >= 0; --j) need_suf_[j] = need_suf_[j + 1] + (wpar_[k * r_ + j] == 0);
    }
    std::fill(dot_.begin() + k * n_, dot_.begin() + (k + 1) * n_, 0);
    return entry(k, 0, p_.tgt(k, k));
  }

  bool complete_row(int k) {
    suf(k, r_) = 0;
    for (int j = r_ - 1; j >= 0; --j) suf(k, j) = suf(k, j + 1) + T(k, j) * T(k, j);
    const char* tie = &tie_[k * r_];
    const char* zero = &zero_[k * r_];
    const char* wp = &wpar_[k * r_];
    char* ntie = &tie_[(k + 1) * r_];
    char* nzero = &zero_[(k + 1) * r_];
    char* nwp = &wpar_[(k + 1) * r_];
    for (int j = 0; j < r_; ++j) {
      ntie[j] = j > 0 && tie[j] && T(k, j) == T(k, j - 1);
      nzero[j] = zero[j] && T(k, j) == 0;
      nwp[j] = static_cast<char>(wp[j] ^ (p_.inw[k] ? (T(k, j) & 1) : 0));
    }
    if (collect_ && k == 0) {
      collected_.emplace_back(t_.begin(), t_.begin() + r_);
      return false;
    }
    return search_row(k + 1);
  }

  bool entry(int k, int j, Int rem) {
    Int* dot = &dot_[k * n_];
    if (j == r_) {
      if (rem != 0) return false;
      for (int l = 0; l < k; ++l)
        if (dot[l] != p_.tgt(k, l)) return false;
      return complete_row(k);
    }
    if (++nodes_ > max_nodes_) {
      exhausted_ = true;
      return false;
    }
    if (best_ && (nodes_ & 0xfff) == 0 && best_->load(std::memory_order_relaxed) < mine_) {
      aborted_ = true;
      return false;
    }
    Int hi = isqrt_small(rem), lo = -hi;
    if (p_.canon) {
      if (zero_[k * r_ + j]) lo = 0;
      if (tie_[k * r_ + j]) hi = std::min(hi, T(k, j - 1));
    }
    const bool forced = k == p_.last_w;
    const Int need = forced ? (wpar_[k * r_ + j] == 0) : 0;
    for (Int v = hi; v >= lo; --v) {
      if (forced && (v & 1) != need) continue;
      const Int rem2 = rem - v * v;
      if (forced) {
        const Int ns = need_suf_[j + 1];
        if (rem2 < ns || ((rem2 - ns) & 3) != 0) continue;
      }
      bool ok = true;
      for (int l = 0; l < k && ok; ++l) {
        const Int diff = p_.tgt(k, l) - dot[l] - v * T(l, j);
        ok = Wide(diff) * diff <= Wide(rem2) * suf(l, j + 1);
      }
      if (!ok) continue;
      for (int l = 0; l < k; ++l) dot[l] += v * T(l, j);
      T(k, j) = v;
      if (entry(k, j + 1, rem2)) return true;
      for (int l = 0; l < k; ++l) dot[l] -= v * T(l, j);
      if (exhausted_ || aborted_) break;
    }
    T(k, j) = 0;
    return false;
  }

  const Problem& p_;
  int n_, r_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false, aborted_ = false, collect_ = false;
  const std::atomic<size_t>* best_ = nullptr;
  size_t mine_ = 0;
  std::vector<Int> t_, sufsq_;
  std::vector<char> tie_, zero_, wpar_;
  std::vector<Int> need_suf_, dot_;
  std::vector<std::vector<Int>> collected_;
};

RepMatrix unpermute(const Problem& p, const Engine& e) {
  RepMatrix t(p.n, p.r);
  for (int k = 0; k < p.n; ++k)
    for (int j = 0; j < p.r; ++j) t.at(p.order[k], j) = e.t(k, j);
  return t;
}

struct SubtreeResult {
  bool found = false, exhausted = false, ran = false;
  std::uint64_t nodes = 0;
  std::optional<RepMatrix> rep;
};

}  // namespace

SearchResult find_representation(const core::CosetSpec& c, Int r, const SearchBudget& budget) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  if (r > 4096) throw std::invalid_argument("r is unreasonably large");
  if (!core::is_positive_definite(c.gram)) throw std::invalid_argument("gram matrix is not positive definite");
  if (budget.max_nodes && *budget.max_nodes < 1) throw std::invalid_argument("max_nodes must be >= 1");
  const std::uint64_t cap = budget.max_nodes.value_or(std::numeric_limits<std::uint64_t>::max());
  const Problem p = make_problem(c, r, budget.canonicalize_columns);

  auto finish = [&](SearchResult res) {
    if (res.rep && !verify_representation(c, *res.rep))
      throw std::logic_error("search produced an invalid representation");
    return res;
  };

  // The search always enumerates complete first rows, then explores their subtrees in order, so
  // the node count is the same whether or not the subtrees run concurrently.
  Engine head(p, cap);
  auto rows0 = head.first_rows();
  std::uint64_t used = head.nodes();
  if (head.exhausted()) return SearchResult{Outcome::exhausted, std::nullopt, cap};
  if (p.n == 1) {
    if (rows0.empty()) return SearchResult{Outcome::none, std::nullopt, used};
    Engine e(p, cap);
    e.run_from_first_row(rows0.front());
    return finish(SearchResult{Outcome::found, unpermute(p, e), used});
  }

  std::vector<SubtreeResult> results(rows0.size());
  const unsigned threads = std::max(1u, budget.threads);
  if (threads == 1 || rows0.size() < 2) {
    for (size_t i = 0; i < rows0.size(); ++i) {
      Engine e(p, cap - used);
      const bool ok = e.run_from_first_row(rows0[i]);
      used += e.nodes();
      if (ok) return finish(SearchResult{Outcome::found, unpermute(p, e), used});
      if (e.exhausted()) return SearchResult{Outcome::exhausted, std::nullopt, cap};
    }
    return SearchResult{Outcome::none, std::nullopt, used};
  }

  std::atomic<size_t> next{0}, best{std::numeric_limits<size_t>::max()};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < rows0.size();) {
      if (i > best.load()) continue;
      Engine e(p, cap - used);
      e.set_abort(&best, i);
      SubtreeResult& res = results[i];
      res.found = e.run_from_first_row(rows0[i]);
      res.exhausted = e.exhausted();
      res.nodes = e.nodes();
      res.ran = !e.aborted();
      if (res.found) {
        res.rep = unpermute(p, e);
        size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (size_t i = 0; i < rows0.size(); ++i) {
    const auto& res = results[i];
    if (!res.ran) throw std::logic_error("subtree skipped before the first witness");
    used += res.nodes;
    if (used > cap || res.exhausted) return SearchResult{Outcome::exhausted, std::nullopt, cap};
    if (res.found) return finish(SearchResult{Outcome::found, res.rep, used});
  }
  return SearchResult{Outcome::none, std::nullopt, used};
}

MinRepResult min_representation(const core::CosetSpec& c, Int r_max, const SearchBudget& budget) {
  if (r_max < 1) throw std::invalid_argument("r_max must be positive");
  if (!core::is_positive_definite(c.gram)) throw std::invalid_argument("gram matrix is not positive definite");
  const auto nec = criteria::necessary_conditions(c);
  MinRepResult out;
  out.proven_minimal = true;
  for (Int r = criteria::split_residue(nec.q_w); r <= r_max; r += 8) {
    if (!nec.admits(r)) {
      out.steps.push_back({r, Verdict::excluded, 0});
      continue;
    }
    auto res = find_representation(c, r, budget);
    out.nodes += res.nodes;
    if (res.outcome == Outcome::found) {
      out.steps.push_back({r, Verdict::found, res.nodes});
      out.r = r;
      out.rep = std::move(res.rep);
      return out;
    }
    const bool exhausted = res.outcome == Outcome::exhausted;
    out.steps.push_back({r, exhausted ? Verdict::exhausted : Verdict::none, res.nodes});
    if (exhausted) out.proven_minimal = false;
  }
  out.proven_minimal = false;
  return out;
}

std::vector<std::vector<Int>> vectors_of_norm(const core::GramMatrix& g, Int norm) {
  const int n = g.dim();
  if (!core::is_positive_definite(g)) throw std::invalid_argument("gram matrix is not positive definite");
  // Q(x) = sum_i q[i] (x_i + sum_{j>i} mu[i][j] x_j)^2, in long double with slack; leaves are exact.
  long double a[core::kMaxDim][core::kMaxDim];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<long double>(g(i, j));
  long double q[core::kMaxDim], mu[core::kMaxDim][core::kMaxDim] = {};
  for (int i = 0; i < n; ++i) {
    q[i] = a[i][i];
    for (int j = i + 1; j < n; ++j) mu[i][j] = a[i][j] / q[i];
    for (int j = i + 1; j < n; ++j)
      for (int l = j; l < n; ++l) a[j][l] -= mu[i][j] * a[i][l];
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> x(n, 0);
  const long double slack = 1e-9L * (static_cast<long double>(norm) + 1);
  auto rec = [&](auto&& self, int i, long double left) -> void {
    if (i < 0) {
      if (core::quadratic_value(g, x) == norm) out.push_back(x);
      return;
    }
    long double center = 0;
    for (int j = i + 1; j < n; ++j) center -= mu[i][j] * static_cast<long double>(x[j]);
    const long double rad = std::sqrt(std::max(0.0L, (left + slack) / q[i]));
    const Int lo = static_cast<Int>(std::ceil(center - rad - 1e-12L));
    const Int hi = static_cast<Int>(std::floor(center + rad + 1e-12L));
    for (Int v = lo; v <= hi; ++v) {
      const long double d = static_cast<long double>(v) - center;
      const long double used = q[i] * d * d;
      if (used > left + slack) continue;
      x[i] = v;
      self(self, i - 1, left - used);
    }
    x[i] = 0;
  };
  rec(rec, n - 1, static_cast<long double>(norm));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool cosets_isometric(const core::CosetSpec& a, const core::CosetSpec& b) {
  const int n = a.gram.dim();
  if (b.gram.dim() != n) throw std::invalid_argument("rank mismatch");
  if (!core::is_positive_definite(a.gram) || !core::is_positive_definite(b.gram))
    throw std::invalid_argument("gram matrix is not positive definite");
  if (core::determinant(a.gram) != core::determinant(b.gram)) return false;
  if (core::mod_pos(a.q_w() - b.q_w(), 4) != 0) return false;

  // Column i of U is the image of the i-th basis vector of b, a vector of norm (M_b)_ii in a.
  std::vector<std::vector<std::vector<Int>>> cand(n), image(n);  // image = M_a u
  for (int i = 0; i < n; ++i) {
    cand[i] = vectors_of_norm(a.gram, b.gram(i, i));
    for (const auto& u : cand[i]) {
      std::vector<Int> mu(n, 0);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) mu[s] += a.gram(s, t) * u[t];
      image[i].push_back(std::move(mu));
    }
  }
  std::vector<int> pick(n, -1);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) {
      for (int s = 0; s < n; ++s) {
        Int v = 0;
        for (int j : b.w.indices()) v += cand[j][pick[j]][s];
        if (core::mod_pos(v - (a.w.contains(s) ? 1 : 0), 2) != 0) return false;
      }
      return true;
    }
    for (size_t c = 0; c < cand[i].size(); ++c) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        Int d = 0;
        for (int s = 0; s < n; ++s) d += image[j][pick[j]][s] * cand[i][c][s];
        ok = d == b.gram(j, i);
      }
      if (!ok) continue;
      pick[i] = static_cast<int>(c);
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace oddw::repsearch
