#include "oddwaring/criteria.hpp"

#include <algorithm>
#include <stdexcept>

namespace oddw::criteria {

using core::mod_pos;

bool NecessaryReport::admits(Int r) const {
  return parity_ok && std::binary_search(admissible_r.begin(), admissible_r.end(), r);
}

Int split_residue(Int q) {
  Int k = mod_pos(q, 8);
  return k == 0 ? 8 : k;
}

NecessaryReport necessary_conditions(const core::CosetSpec& c) {
  NecessaryReport rep;
  rep.parity_ok = core::parity_ok(c.gram, c.w);
  rep.q_w = c.q_w();
  rep.r_cap_qw = rep.q_w;
  Int diag_sum = 0;
  for (int i : c.w.indices()) diag_sum += c.gram(i, i);
  rep.r_kw = diag_sum - mod_pos(diag_sum - rep.q_w, 8);
  const Int cap = std::min(rep.r_cap_qw, rep.r_kw);
  for (Int r = split_residue(rep.q_w); r <= cap; r += 8) rep.admissible_r.push_back(r);
  return rep;
}

Ratio lower_bound_constant(int n) {
  switch (n) {
    case 2: return {3, 4};
    case 3: return {1, 2};
    case 4: return {1, 5};
    default: throw std::invalid_argument("lower-bound constant is known only for n = 2, 3, 4");
  }
}

bool minkowski_lower_bound_ok(const core::GramMatrix& g, int i, Int k) {
  const Ratio c = lower_bound_constant(g.dim());
  if (k < 1 || k > 8) throw std::invalid_argument("k must be in 1..8");
  if (i < 0 || i >= g.dim()) throw std::invalid_argument("index out of range");
  return c.num * g(i, i) > k * c.den;
}

std::vector<std::vector<Int>> compositions(Int k, int parts) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, Int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (Int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (parts > 0) rec(rec, 0, k);
  return out;
}

std::optional<SplitCertificate> find_split(const core::CosetSpec& c) {
  const Int q = c.q_w();
  if (q <= 8) throw std::domain_error("find_split requires Q(w) > 8");
  const Int k = split_residue(q);
  const auto idx = c.w.indices();
  for (const auto& parts : compositions(k, static_cast<int>(idx.size()))) {
    core::GramMatrix red = c.gram;
    for (size_t t = 0; t < idx.size(); ++t) red.set(idx[t], idx[t], red(idx[t], idx[t]) - parts[t]);
    if (core::is_positive_definite(red)) return SplitCertificate{k, parts, red};
  }
  return std::nullopt;
}

bool lemma1_congruence_filter(const core::CosetSpec& c, Int r) { return mod_pos(r - c.q_w(), 8) == 0; }

}  // namespace oddw::criteria
