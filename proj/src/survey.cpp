#include "oddwaring/survey.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "oddwaring/criteria.hpp"
#include "oddwaring/json_io.hpp"
#include "survey_engine.hpp"

namespace oddw::survey {

using core::GramMatrix;
using core::WSet;

namespace {

WSet ws(std::initializer_list<int> one_based) {
  std::vector<int> z;
  for (int i : one_based) z.push_back(i - 1);
  return WSet::from_indices(z);
}

std::vector<WSet> subsets_with_last(int n, int last) {
  std::vector<WSet> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    WSet w = WSet::from_mask(mask);
    if (w.last() == last) out.push_back(w);
  }
  return out;
}

}  // namespace

Int undischarged_diag_max(int n) {
  const auto c = criteria::lower_bound_constant(n);
  // largest m with c.num * m <= (n + 2) * c.den
  return (static_cast<Int>(n + 2) * c.den) / c.num;
}

std::vector<std::string> case_labels(int n) {
  switch (n) {
    case 2: return {"1-i", "1-ii"};
    case 3: return {"2-i", "2-ii", "2-iii"};
    case 4: return {"3-i", "3-ii", "3-iii", "3-iv"};
    default: throw std::invalid_argument("cases exist for n = 2, 3, 4");
  }
}

CaseSpec make_case(const std::string& label, bool scaled) {
  CaseSpec c;
  c.label = label;
  c.scaled = scaled;
  if (label == "1-i") {
    c.n = 2;
    c.w_subsets = {ws({1}), ws({2})};
  } else if (label == "1-ii") {
    c.n = 2;
    c.w_subsets = {ws({1, 2})};
  } else if (label == "2-i") {
    c.n = 3;
    c.w_subsets = {ws({1}), ws({2}), ws({3})};
  } else if (label == "2-ii") {
    c.n = 3;
    c.w_subsets = {ws({1, 2})};
  } else if (label == "2-iii") {
    c.n = 3;
    c.w_subsets = {ws({1, 3}), ws({2, 3}), ws({1, 2, 3})};
  } else if (label == "3-i") {
    c.n = 4;
    c.w_subsets = subsets_with_last(4, 3);
  } else if (label == "3-ii") {
    c.n = 4;
    c.w_subsets = subsets_with_last(4, 2);
  } else if (label == "3-iii") {
    c.n = 4;
    c.w_subsets = subsets_with_last(4, 1);
  } else if (label == "3-iv") {
    c.n = 4;
    c.w_subsets = {ws({1})};
  } else {
    throw std::invalid_argument("unknown case label '" + label + "'");
  }
  c.lead_diag_max = undischarged_diag_max(c.n);
  // Scaled bounds keep the exceptional 9-diagonal matrices and the m11 = 20, 21, 22 values.
  if (scaled && c.n == 4) c.lead_diag_max = label == "3-iv" ? 22 : 12;
  c.iterate_last_diag = std::any_of(c.w_subsets.begin(), c.w_subsets.end(),
                                    [&](WSet w) { return w.last() < c.n - 1; });
  return c;
}

std::vector<CaseSpec> standard_cases(int n, bool scaled) {
  std::vector<CaseSpec> out;
  for (const auto& l : case_labels(n)) out.push_back(make_case(l, scaled));
  return out;
}

namespace {

using detail::Counters;
using detail::RawSurvivor;
using detail::UnitOut;

io::Json counters_json(const Counters& c) {
  io::Json j;
  j["scanned"] = c.scanned;
  j["not_pd"] = c.not_pd;
  j["parity"] = c.parity;
  j["assumption"] = c.assumption;
  j["rkw"] = c.rkw;
  j["rkw_family"] = c.rkw_family;
  j["discharge"] = c.discharge;
  j["split"] = c.split;
  j["pruned"] = c.pruned;
  j["zero_first_row"] = c.zero_first_row;
  j["printed_bound_checked"] = c.printed_bound_checked;
  j["printed_bound_tighter"] = c.printed_bound_tighter;
  j["printed_bound_inapplicable"] = c.printed_bound_inapplicable;
  j["max_trailing_diag"] = c.max_trailing_diag;
  j["max_middle_diag"] = c.max_middle_diag;
  return j;
}

Counters counters_from_json(const io::Json& j) {
  Counters c;
  c.scanned = j.at("scanned");
  c.not_pd = j.at("not_pd");
  c.parity = j.at("parity");
  c.assumption = j.at("assumption");
  c.rkw = j.at("rkw");
  c.rkw_family = j.at("rkw_family");
  c.discharge = j.at("discharge");
  c.split = j.at("split");
  c.pruned = j.at("pruned");
  c.zero_first_row = j.at("zero_first_row");
  c.printed_bound_checked = j.at("printed_bound_checked");
  c.printed_bound_tighter = j.at("printed_bound_tighter");
  c.printed_bound_inapplicable = j.at("printed_bound_inapplicable");
  c.max_trailing_diag = j.at("max_trailing_diag");
  c.max_middle_diag = j.at("max_middle_diag");
  return c;
}

io::Json unit_json(const CaseSpec& spec, const SurveyOptions& opts, size_t job, Int a00, const UnitOut& u) {
  io::Json j;
  j["case"] = spec.label;
  j["scaled"] = spec.scaled;
  j["rkw_cutoff"] = to_string(opts.rkw_cutoff);
  j["discharge"] = opts.apply_discharge;
  j["job"] = job;
  j["m11"] = a00;
  j["counters"] = counters_json(u.cnt);
  io::Json surv = io::Json::array();
  for (const auto& s : u.surv) {
    std::vector<Int> flat(&s.a[0][0], &s.a[0][0] + 16);
    surv.push_back({{"a", flat}, {"w", s.wmask}});
  }
  j["survivors"] = surv;
  return j;
}

// Completed units from an earlier run with the same settings, keyed by (job, m11).
std::map<std::pair<size_t, Int>, UnitOut> load_snapshot(const std::string& path, const CaseSpec& spec,
                                                        const SurveyOptions& opts) {
  std::map<std::pair<size_t, Int>, UnitOut> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    io::Json j;
    try {
      j = io::Json::parse(line);
    } catch (const nlohmann::json::exception&) {
      break;  // a torn final line from an interrupted run
    }
    if (j.at("case") != spec.label || j.at("scaled") != spec.scaled || j.at("rkw_cutoff") != to_string(opts.rkw_cutoff) ||
        j.at("discharge") != opts.apply_discharge)
      continue;
    UnitOut u;
    u.cnt = counters_from_json(j.at("counters"));
    for (const auto& s : j.at("survivors")) {
      RawSurvivor r;
      auto flat = s.at("a").get<std::vector<Int>>();
      std::copy(flat.begin(), flat.end(), &r.a[0][0]);
      r.wmask = s.at("w");
      u.surv.push_back(r);
    }
    done[{j.at("job").get<size_t>(), j.at("m11").get<Int>()}] = std::move(u);
  }
  return done;
}

GramMatrix to_gram(const RawSurvivor& s, int n) {
  GramMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g.set(i, j, s.a[i][j]);
  return g;
}

}  // namespace

SurveyReport run_case(const CaseSpec& spec, const SurveyOptions& opts) {
  if (spec.n < 2 || spec.n > 4) throw std::invalid_argument("survey supports n = 2, 3, 4");
  if (spec.lead_diag_max < 1) throw std::invalid_argument("diagonal bound must be positive");
  for (WSet w : spec.w_subsets)
    if (w.empty() || w.last() >= spec.n) throw std::invalid_argument("w subset out of range");

  detail::EngineConfig cfg{spec.n, spec.lead_diag_max, opts.rkw_cutoff == RkwCutoff::exact, opts.apply_discharge,
                           opts.max_candidates};
  const auto jobs = detail::make_jobs(spec.n, spec.w_subsets);
  std::vector<std::pair<size_t, Int>> units;
  for (size_t j = 0; j < jobs.size(); ++j)
    for (Int a = 1; a <= spec.lead_diag_max; ++a) units.emplace_back(j, a);

  std::map<std::pair<size_t, Int>, UnitOut> done;
  if (opts.snapshot_path && opts.resume) done = load_snapshot(*opts.snapshot_path, spec, opts);
  std::ofstream snap;
  if (opts.snapshot_path) snap.open(*opts.snapshot_path, opts.resume ? std::ios::app : std::ios::trunc);

  std::vector<std::optional<UnitOut>> results(units.size());
  std::mutex mu;
  std::atomic<size_t> next{0};
  std::atomic<bool> capped{false};
  std::exception_ptr failure;
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < units.size();) {
      if (capped || failure) break;
      const auto key = units[i];
      if (auto it = done.find(key); it != done.end()) {
        results[i] = it->second;
        continue;
      }
      try {
        UnitOut u = detail::run_unit(cfg, jobs[key.first], key.second);
        std::lock_guard<std::mutex> lock(mu);
        if (snap.is_open()) snap << unit_json(spec, opts, key.first, key.second, u).dump() << '\n' << std::flush;
        results[i] = std::move(u);
      } catch (const detail::ResourceCap&) {
        capped = true;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned nt = std::max(1u, opts.threads);
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SurveyReport rep;
  rep.rkw_cutoff = opts.rkw_cutoff;
  rep.spec = spec;
  rep.status = capped ? "resource_cap" : "complete";
  Counters total;
  std::vector<RawSurvivor> raw;
  for (const auto& r : results)
    if (r) {
      total.add(r->cnt);
      raw.insert(raw.end(), r->surv.begin(), r->surv.end());
    }
  if (opts.max_candidates && total.scanned > *opts.max_candidates) rep.status = "resource_cap";

  for (const auto& s : raw) {
    Survivor sv;
    sv.gram = to_gram(s, spec.n);
    sv.w = WSet::from_mask(s.wmask);
    const core::CosetSpec coset(sv.gram, sv.w);
    const auto nec = criteria::necessary_conditions(coset);
    sv.q_w = nec.q_w;
    sv.k = criteria::split_residue(nec.q_w);
    sv.r_kw = nec.r_kw;
    sv.within_case_assumption = nec.r_kw > spec.n + 10;
    // Independent re-check of every survivor through the public predicates.
    if (!core::is_minkowski_reduced(sv.gram) || !core::is_positive_definite(sv.gram) || !nec.parity_ok ||
        nec.admissible_r.empty() || criteria::find_split(coset))
      throw std::logic_error("survivor fails re-check: " + sv.gram.to_string());
    rep.survivors.push_back(std::move(sv));
  }
  std::sort(rep.survivors.begin(), rep.survivors.end(), [](const Survivor& a, const Survivor& b) {
    if (core::canonical_less(a.gram, b.gram)) return true;
    if (core::canonical_less(b.gram, a.gram)) return false;
    return a.w.mask() < b.w.mask();
  });

  if (opts.certify) {
    for (auto& sv : rep.survivors) {
      const core::CosetSpec coset(sv.gram, sv.w);
      // Every representation has r <= r_{K,w}, so searching that far either finds the least r or
      // proves no sum of odd squares represents the coset. No budget: every step is exhaustive.
      const Int target = spec.n + 10;
      auto mr = repsearch::min_representation(coset, std::max(target, sv.r_kw));
      if (!mr.r) {
        sv.no_representation = true;
        continue;
      }
      if (*mr.r > target)
        throw Contradiction("survivor " + sv.gram.to_string() + " with w=" + io::Json(sv.w.one_based()).dump() +
                            " needs " + std::to_string(*mr.r) + " odd squares, more than " + std::to_string(target));
      sv.certified_r = mr.r;
      sv.certificate = std::move(mr.rep);
    }
  }

  int outside = 0;
  for (const auto& sv : rep.survivors) outside += !sv.within_case_assumption;
  rep.candidates_scanned = total.scanned;
  rep.filtered_by = {{"not_positive_definite", total.not_pd},
                     {"parity", total.parity},
                     {"case_assumption", total.assumption},
                     {"r_kw_cap", total.rkw},
                     {"r_kw_family", total.rkw_family},
                     {"cn_discharge", total.discharge},
                     {"split_found", total.split},
                     {"schur_bound_blocks", total.pruned},
                     {"zero_first_row", total.zero_first_row}};
  rep.stats = {{"units", static_cast<std::int64_t>(units.size())},
               {"max_trailing_diag", total.max_trailing_diag},
               {"max_middle_diag", total.max_middle_diag},
               {"printed_bound_checked", static_cast<std::int64_t>(total.printed_bound_checked)},
               {"printed_bound_tighter", static_cast<std::int64_t>(total.printed_bound_tighter)},
               {"printed_bound_inapplicable", static_cast<std::int64_t>(total.printed_bound_inapplicable)},
               {"survivors_with_r_kw_at_most_n_plus_10", outside}};
  return rep;
}

const char* to_string(RkwCutoff c) { return c == RkwCutoff::exact ? "exact" : "coarse"; }

repsearch::RepMatrix certify_survivor(const GramMatrix& g, WSet w, Int r) {
  const core::CosetSpec c(g, w);
  auto res = repsearch::find_representation(c, r);
  if (res.outcome != repsearch::Outcome::found)
    throw Contradiction(g.to_string() + " is not represented by a sum of " + std::to_string(r) + " odd squares");
  return *res.rep;
}

std::vector<Witness> lower_bound_witnesses() {
  const Int d3[] = {3, 3, 23}, d4[] = {1, 3, 3, 23}, d5[] = {2, 2, 2, 2, 16};
  return {
      {core::CosetSpec(GramMatrix::from_rows({{8, 2}, {2, 12}}), ws({2})), 12, 4},
      {core::CosetSpec(GramMatrix::diagonal(d3), ws({1, 2, 3})), 13, 5},
      {core::CosetSpec(GramMatrix::diagonal(d4), ws({1, 2, 3, 4})), 14, 6},
      {core::CosetSpec(GramMatrix::diagonal(d5), ws({5})), 16, 8},
  };
}

std::vector<WitnessResult> run_witnesses(const std::vector<Witness>& list, const repsearch::SearchBudget& budget) {
  std::vector<WitnessResult> out;
  for (const auto& w : list) {
    auto pos = repsearch::find_representation(w.coset, w.r_pos, budget);
    auto neg = repsearch::find_representation(w.coset, w.r_neg, budget);
    WitnessResult r{w, pos.outcome, neg.outcome, pos.rep, pos.nodes + neg.nodes, false};
    r.matches = pos.outcome == repsearch::Outcome::found && neg.outcome == repsearch::Outcome::none;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<GramMatrix> exceptional_matrices() {
  return {
      GramMatrix::from_rows({{9, 3, 3, 2}, {3, 9, 3, -4}, {3, 3, 9, -4}, {2, -4, -4, 9}}),
      GramMatrix::from_rows({{9, 3, 4, 2}, {3, 9, 3, -4}, {4, 3, 9, -3}, {2, -4, -3, 9}}),
      GramMatrix::from_rows({{9, 4, 3, 2}, {4, 9, 3, -3}, {3, 3, 9, -4}, {2, -3, -4, 9}}),
      GramMatrix::from_rows({{9, 4, 4, 2}, {4, 9, 3, -3}, {4, 3, 9, -3}, {2, -3, -3, 9}}),
  };
}

}  // namespace oddw::survey
