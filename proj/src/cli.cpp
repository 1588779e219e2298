#include "oddwaring/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <thread>

#include "oddwaring/bounds.hpp"
#include "oddwaring/criteria.hpp"
#include "oddwaring/json_io.hpp"
#include "oddwaring/oddsq.hpp"
#include "oddwaring/repsearch.hpp"
#include "oddwaring/survey.hpp"

namespace oddw::cli {

namespace {

using io::Json;
using core::Int;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json rep_json(const repsearch::RepMatrix& t) { return Json(t.to_rows()); }

Json value_json(const bounds::Value& v) {
  Json j;
  j["value"] = v.direct ? Json(*v.direct) : Json(nullptr);
  j["log"] = v.log;
  j["log_space"] = v.log_space();
  return j;
}

Json necessary_json(const criteria::NecessaryReport& r) {
  Json j;
  j["parity_ok"] = r.parity_ok;
  j["q_w"] = r.q_w;
  j["r_cap_qw"] = r.r_cap_qw;
  j["r_kw"] = r.r_kw;
  j["admissible_r"] = r.admissible_r;
  return j;
}

Json split_json(const core::CosetSpec& c) {
  if (c.q_w() <= 8) return Json(nullptr);
  const auto s = criteria::find_split(c);
  if (!s) return Json(nullptr);
  Json j;
  j["k"] = s->k;
  j["parts"] = s->parts;
  j["reduced"] = io::to_json(s->reduced);
  return j;
}

core::CosetSpec load_coset(const std::string& path) {
  try {
    return io::coset_from_json(io::read_json_file(path));
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Json survivor_json(const survey::Survivor& s) {
  Json j = io::to_json(core::CosetSpec(s.gram, s.w));
  j["q_w"] = s.q_w;
  j["k"] = s.k;
  j["r_kw"] = s.r_kw;
  j["within_case_assumption"] = s.within_case_assumption;
  j["no_representation"] = s.no_representation;
  j["certified_r"] = s.certified_r ? Json(*s.certified_r) : Json(nullptr);
  j["certificate"] = s.certificate ? rep_json(*s.certificate) : Json(nullptr);
  return j;
}

Json report_json(const survey::SurveyReport& r) {
  Json j;
  Json c;
  c["label"] = r.spec.label;
  c["n"] = r.spec.n;
  Json ws = Json::array();
  for (const auto& w : r.spec.w_subsets) ws.push_back(w.one_based());
  c["w_subsets"] = ws;
  c["lead_diag_max"] = r.spec.lead_diag_max;
  c["iterate_last_diag"] = r.spec.iterate_last_diag;
  c["scaled"] = r.spec.scaled;
  j["case"] = c;
  j["rkw_cutoff"] = survey::to_string(r.rkw_cutoff);
  j["status"] = r.status;
  j["candidates_scanned"] = r.candidates_scanned;
  Json f;
  for (const auto& [k, v] : r.filtered_by) f[k] = v;
  j["filtered_by"] = f;
  Json st;
  for (const auto& [k, v] : r.stats) st[k] = v;
  j["stats"] = st;
  Json sv = Json::array();
  for (const auto& s : r.survivors) sv.push_back(survivor_json(s));
  j["survivors"] = sv;
  return j;
}

struct Shared {
  bool quiet = false;
  bool json = true;
  std::optional<std::uint64_t> max_nodes;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

repsearch::SearchBudget budget_of(const Shared& sh) {
  repsearch::SearchBudget b;
  b.max_nodes = sh.max_nodes;
  b.threads = sh.threads;
  return b;
}

int cmd_oddsq(std::int64_t m, std::optional<std::int64_t> r, Json& out) {
  if (m < 1) throw UsageError("M must be a positive integer");
  if (r && *r < 1) throw UsageError("--r must be positive");
  const auto um = static_cast<std::uint64_t>(m);
  const auto min_r = oddsq::min_odd_squares(um);
  out["M"] = m;
  out["min_r"] = min_r;
  const auto target = r ? static_cast<std::uint64_t>(*r) : min_r;
  const auto d = oddsq::decompose_odd_squares(um, target);
  if (r) {
    out["r"] = *r;
    out["representable"] = d.has_value();
  }
  out["parts"] = d ? Json(d->parts) : Json(nullptr);
  return d ? kOk : kNegative;
}

int cmd_min_rep(const std::string& path, Int r_max, const Shared& sh, Json& out) {
  const auto c = load_coset(path);
  if (r_max < 1) throw UsageError("--r-max must be positive");
  const auto res = repsearch::min_representation(c, r_max, budget_of(sh));
  out["coset"] = io::to_json(c);
  out["r"] = res.r ? Json(*res.r) : Json(nullptr);
  out["representation"] = res.rep ? rep_json(*res.rep) : Json(nullptr);
  out["proven_minimal"] = res.proven_minimal;
  Json steps = Json::array();
  bool exhausted = false;
  for (const auto& s : res.steps) {
    Json js;
    js["r"] = s.r;
    js["verdict"] = repsearch::to_string(s.verdict);
    js["nodes"] = s.nodes;
    steps.push_back(js);
    exhausted |= s.verdict == repsearch::Verdict::exhausted;
  }
  out["steps"] = steps;
  out["nodes"] = res.nodes;
  if (res.rep) return kOk;
  return exhausted ? kExhausted : kNegative;
}

int cmd_check(const std::string& path, std::optional<Int> r, bool filters_only, const Shared& sh, Json& out) {
  const auto c = load_coset(path);
  const auto nec = criteria::necessary_conditions(c);
  if (filters_only) {
    out["coset"] = io::to_json(c);
    out["necessary"] = necessary_json(nec);
    out["split"] = split_json(c);
    return kOk;
  }
  if (!r) throw UsageError("check needs --r or --filters-only");
  if (*r < 1) throw UsageError("--r must be positive");
  if (!nec.admits(*r)) {
    out["representable"] = false;
    out["proof"] = "necessary-condition";
    out["r"] = *r;
    out["coset"] = io::to_json(c);
    out["necessary"] = necessary_json(nec);
    return kNegative;
  }
  if (!core::is_positive_definite(c.gram)) throw UsageError("gram matrix is not positive definite");
  const auto res = repsearch::find_representation(c, *r, budget_of(sh));
  switch (res.outcome) {
    case repsearch::Outcome::found:
      out["representable"] = true;
      out["proof"] = "certificate";
      break;
    case repsearch::Outcome::none:
      out["representable"] = false;
      out["proof"] = "exhaustive";
      break;
    case repsearch::Outcome::exhausted:
      out["representable"] = nullptr;
      out["proof"] = "exhausted";
      break;
  }
  out["r"] = *r;
  out["coset"] = io::to_json(c);
  out["representation"] = res.rep ? rep_json(*res.rep) : Json(nullptr);
  out["nodes"] = res.nodes;
  if (res.outcome == repsearch::Outcome::found) return kOk;
  return res.outcome == repsearch::Outcome::none ? kNegative : kExhausted;
}

struct SurveyArgs {
  int n = 0;
  std::optional<std::string> label;
  bool scaled = false;
  std::optional<std::string> snapshot;
  bool resume = false;
  bool no_certify = false;
  std::string rkw_cutoff = "coarse";
  bool no_discharge = false;
  std::optional<std::uint64_t> max_candidates;
};

int cmd_survey(const SurveyArgs& a, const Shared& sh, Json& out) {
  if (a.n < 2 || a.n > 4) throw UsageError("--n must be 2, 3 or 4");
  std::vector<survey::CaseSpec> cases;
  if (a.label) {
    survey::CaseSpec c;
    try {
      c = survey::make_case(*a.label, a.scaled);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (c.n != a.n) throw UsageError("case " + *a.label + " does not belong to n=" + std::to_string(a.n));
    cases.push_back(c);
  } else {
    cases = survey::standard_cases(a.n, a.scaled);
  }
  std::optional<std::string> snap_dir;
  if (!a.snapshot) {
    if (const char* env = std::getenv("ODD_WARING_SNAPSHOT_DIR"); env && *env) snap_dir = env;
  }
  out["n"] = a.n;
  Json reports = Json::array();
  bool capped = false;
  for (const auto& c : cases) {
    survey::SurveyOptions o;
    o.threads = sh.threads;
    o.rkw_cutoff = a.rkw_cutoff == "exact" ? survey::RkwCutoff::exact : survey::RkwCutoff::coarse;
    o.apply_discharge = !a.no_discharge;
    o.certify = !a.no_certify;
    o.resume = a.resume;
    o.max_candidates = a.max_candidates;
    const std::string suffix = c.label + (c.scaled ? "-scaled" : "") + ".jsonl";
    if (a.snapshot) {
      o.snapshot_path = cases.size() == 1 ? *a.snapshot : *a.snapshot + "." + suffix;
    } else if (snap_dir) {
      o.snapshot_path = (std::filesystem::path(*snap_dir) / ("survey-" + suffix)).string();
    }
    const auto rep = survey::run_case(c, o);
    capped |= rep.status != "complete";
    reports.push_back(report_json(rep));
  }
  out["cases"] = reports;
  return capped ? kExhausted : kOk;
}

int cmd_witnesses(const Shared& sh, Json& out) {
  const auto res = survey::run_witnesses(survey::lower_bound_witnesses(), budget_of(sh));
  Json list = Json::array();
  bool all = true, exhausted = false;
  for (const auto& w : res) {
    Json j;
    j["coset"] = io::to_json(w.witness.coset);
    j["r_pos"] = w.witness.r_pos;
    j["r_neg"] = w.witness.r_neg;
    j["pos"] = repsearch::to_string(w.pos);
    j["neg"] = repsearch::to_string(w.neg);
    j["representation"] = w.rep ? rep_json(*w.rep) : Json(nullptr);
    j["nodes"] = w.nodes;
    j["matches"] = w.matches;
    list.push_back(j);
    all &= w.matches;
    exhausted |= w.pos == repsearch::Outcome::exhausted || w.neg == repsearch::Outcome::exhausted;
  }
  out["witnesses"] = list;
  out["all_match"] = all;
  if (exhausted) return kExhausted;
  return all ? kOk : kContradiction;
}

int cmd_bounds(int n, double d, double eps, Json& out) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (!(d >= 1)) throw UsageError("--D must be >= 1");
  if (!(eps > 0)) throw UsageError("--eps must be > 0");
  out["n"] = n;
  out["D"] = d;
  out["eps"] = eps;
  Json sig;
  for (int k = 2; k <= std::max(n, 2); ++k) sig[std::to_string(k)] = bounds::hermite_sigma(k);
  out["sigma"] = sig;
  out["alpha_bar"] = value_json(bounds::alpha_bar_value(n));
  out["c_bar"] = value_json(bounds::c_bar_value(n, d));
  out["G"] = value_json(bounds::G_value(n, d));
  out["quadratic_floor"] = 3LL * n * n - 3LL * n + 11;
  Json chain = Json::array();
  bool ok = true;
  if (n >= 3) {
    for (const auto& e : bounds::upper_bound_chain(n, d)) {
      Json j;
      j["n"] = e.n;
      j["bound"] = value_json(e.bound);
      j["n_times_G"] = value_json(e.n_times_G);
      j["within"] = e.within;
      ok &= e.within;
      chain.push_back(j);
    }
  }
  out["chain"] = chain;
  out["envelope"] = value_json(bounds::envelope(n, eps));
  return ok ? kOk : kContradiction;
}

int cmd_isometric(const std::string& pa, const std::string& pb, Json& out) {
  const auto a = load_coset(pa), b = load_coset(pb);
  bool iso = false;
  try {
    iso = repsearch::cosets_isometric(a, b);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out["a"] = io::to_json(a);
  out["b"] = io::to_json(b);
  out["isometric"] = iso;
  return iso ? kOk : kNegative;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of odd squares over integral quadratic cosets"};
  app.require_subcommand(1, 1);
  Shared sh;
  std::uint64_t max_nodes = 0;
  auto add_shared = [&](CLI::App* s) {
    s->add_flag("--json", sh.json, "JSON output (default)");
    s->add_flag("--quiet", sh.quiet, "suppress stdout; exit code only");
    s->add_option("--max-nodes", max_nodes, "search node budget")->check(CLI::PositiveNumber);
    s->add_option("--threads", sh.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  std::int64_t m = 0;
  std::optional<std::int64_t> oddsq_r;
  auto* s_oddsq = app.add_subcommand("oddsq", "fewest odd squares summing to M");
  s_oddsq->add_option("M", m)->required();
  s_oddsq->add_option("--r", oddsq_r, "decompose with exactly this many squares");

  std::string coset_path;
  Int r_max = 0;
  auto* s_min = app.add_subcommand("min-rep", "smallest r with a representation");
  s_min->add_option("--coset", coset_path)->required()->check(CLI::ExistingFile);
  s_min->add_option("--r-max", r_max, "largest r tried (default Q(w))");

  std::optional<Int> check_r;
  bool filters_only = false;
  auto* s_check = app.add_subcommand("check", "decide representability at one r");
  s_check->add_option("--coset", coset_path)->required()->check(CLI::ExistingFile);
  s_check->add_option("--r", check_r);
  s_check->add_flag("--filters-only", filters_only);

  SurveyArgs sa;
  std::string case_label;
  std::string snapshot;
  std::uint64_t max_candidates = 0;
  auto* s_survey = app.add_subcommand("survey", "run the n=2,3,4 case analysis");
  s_survey->add_option("--n", sa.n)->required();
  s_survey->add_option("--case", case_label);
  s_survey->add_flag("--scaled", sa.scaled);
  s_survey->add_option("--snapshot", snapshot, "JSON-lines checkpoint file");
  s_survey->add_flag("--resume", sa.resume, "skip units already in the snapshot");
  s_survey->add_flag("--no-certify", sa.no_certify);
  s_survey->add_option("--rkw-cutoff", sa.rkw_cutoff, "case-assumption bound: coarse (default) or exact")
      ->check(CLI::IsMember({"coarse", "exact"}));
  s_survey->add_flag("--no-discharge", sa.no_discharge, "skip the large-diagonal discharge");
  s_survey->add_option("--max-candidates", max_candidates)->check(CLI::PositiveNumber);

  auto* s_wit = app.add_subcommand("witnesses", "verify the lower-bound witnesses");

  int bn = 0;
  double bd = 1.0, beps = 0.01;
  auto* s_bounds = app.add_subcommand("bounds", "evaluate the asymptotic bound functions");
  s_bounds->add_option("--n", bn)->required();
  s_bounds->add_option("--D", bd);
  s_bounds->add_option("--eps", beps);

  std::string iso_a, iso_b;
  auto* s_iso = app.add_subcommand("isometric", "test two cosets for integral isometry");
  s_iso->add_option("a", iso_a)->required()->check(CLI::ExistingFile);
  s_iso->add_option("b", iso_b)->required()->check(CLI::ExistingFile);

  for (auto* s : {s_oddsq, s_min, s_check, s_survey, s_wit, s_bounds, s_iso}) add_shared(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (max_nodes > 0) sh.max_nodes = max_nodes;
  if (!case_label.empty()) sa.label = case_label;
  if (!snapshot.empty()) sa.snapshot = snapshot;
  if (max_candidates > 0) sa.max_candidates = max_candidates;

  Json j;
  int code = kOk;
  try {
    if (*s_oddsq) {
      code = cmd_oddsq(m, oddsq_r, j);
    } else if (*s_min) {
      code = cmd_min_rep(coset_path, r_max > 0 ? r_max : std::max<Int>(1, load_coset(coset_path).q_w()), sh, j);
    } else if (*s_check) {
      code = cmd_check(coset_path, check_r, filters_only, sh, j);
    } else if (*s_survey) {
      code = cmd_survey(sa, sh, j);
    } else if (*s_wit) {
      code = cmd_witnesses(sh, j);
    } else if (*s_bounds) {
      code = cmd_bounds(bn, bd, beps, j);
    } else {
      code = cmd_isometric(iso_a, iso_b, j);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const survey::Contradiction& e) {
    err << "contradiction: " << e.what() << "\n";
    return kContradiction;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!sh.quiet) out << j.dump(2) << "\n";
  return code;
}

}  // namespace oddw::cli
