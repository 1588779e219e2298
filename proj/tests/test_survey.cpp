#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "oddwaring/criteria.hpp"
#include "oddwaring/survey.hpp"
#include "oracles.hpp"

using namespace oddw;
using core::GramMatrix;
using core::Int;
using core::WSet;

namespace {

const WSet w14 = WSet::from_mask(0b1001);

std::vector<std::vector<std::vector<Int>>> rows_with_w(const survey::SurveyReport& r, WSet w) {
  std::vector<std::vector<std::vector<Int>>> out;
  for (const auto& s : r.survivors)
    if (s.w == w) out.push_back(s.gram.rows());
  return out;
}

// Survivors as comparable values: matrix, w, certified r, no_representation.
using Key = std::tuple<std::vector<std::vector<Int>>, unsigned, Int, bool>;
std::vector<Key> keys(const survey::SurveyReport& r) {
  std::vector<Key> out;
  for (const auto& s : r.survivors) out.emplace_back(s.gram.rows(), s.w.mask(), s.certified_r.value_or(-1), s.no_representation);
  return out;
}

const survey::SurveyReport& scaled(const std::string& label) {
  static std::map<std::string, survey::SurveyReport> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, survey::run_case(survey::make_case(label, true))).first;
  return it->second;
}

}  // namespace

TEST_CASE("case catalogue") {
  CHECK(survey::case_labels(2) == std::vector<std::string>{"1-i", "1-ii"});
  CHECK(survey::case_labels(4).size() == 4);
  CHECK_THROWS_AS(survey::case_labels(5), std::invalid_argument);
  CHECK_THROWS_AS(survey::make_case("3-v"), std::invalid_argument);
  // C(n) m <= n + 2 with C = 3/4, 1/2, 1/5
  CHECK(survey::undischarged_diag_max(2) == 5);
  CHECK(survey::undischarged_diag_max(3) == 10);
  CHECK(survey::undischarged_diag_max(4) == 30);
  const auto c = survey::make_case("3-i");
  CHECK(c.n == 4);
  CHECK(c.w_subsets.size() == 8);
  for (WSet w : c.w_subsets) CHECK(w.last() == 3);
  CHECK(survey::make_case("3-iv", true).scaled);
  CHECK(survey::make_case("3-iv", true).lead_diag_max < c.lead_diag_max);
}

TEST_CASE("n = 2 and n = 3 leave no survivors at full bounds") {
  for (int n : {2, 3})
    for (const auto& spec : survey::standard_cases(n)) {
      const auto rep = survey::run_case(spec);
      CHECK(rep.status == "complete");
      CHECK_MESSAGE(rep.survivors.empty(), spec.label);
      // 2-ii is settled entirely on prefixes, before any full candidate exists
      std::uint64_t work = rep.candidates_scanned;
      for (const auto& f : rep.filtered_by) work += f.second;
      CHECK(work > 0);
    }
}

TEST_CASE("scaled 3-i: the w = {1,4} survivors are the four exceptional matrices") {
  const auto& rep = scaled("3-i");
  REQUIRE(rep.status == "complete");
  std::vector<std::vector<std::vector<Int>>> want;
  for (const auto& g : survey::exceptional_matrices()) want.push_back(g.rows());
  CHECK(rows_with_w(rep, w14) == want);
  for (const auto& s : rep.survivors) {
    const core::CosetSpec c(s.gram, s.w);
    CHECK_FALSE(criteria::find_split(c));
    if (s.no_representation) {
      CHECK_FALSE(s.certified_r);
      continue;
    }
    REQUIRE(s.certified_r);
    CHECK(*s.certified_r <= 14);
    REQUIRE(s.certificate);
    CHECK(repsearch::verify_representation(c, *s.certificate));
    if (s.w == w14) CHECK(*s.certified_r == 14);
  }
}

TEST_CASE("scaled 3-ii and 3-iii survivors are isometric to the exceptional cosets") {
  std::vector<core::CosetSpec> ex;
  for (const auto& g : survey::exceptional_matrices()) ex.emplace_back(g, w14);
  for (const char* label : {"3-ii", "3-iii"}) {
    const auto& rep = scaled(label);
    REQUIRE(rep.status == "complete");
    CHECK(rep.survivors.size() == 4);
    for (const auto& s : rep.survivors) {
      const core::CosetSpec c(s.gram, s.w);
      bool found = false;
      for (const auto& e : ex) found = found || repsearch::cosets_isometric(c, e);
      CHECK_MESSAGE(found, label << " " << s.gram.to_string());
      CHECK(s.certified_r == Int{14});
    }
  }
}

TEST_CASE("the exceptional matrices pass every filter and have no split") {
  for (const auto& g : survey::exceptional_matrices()) {
    const core::CosetSpec c(g, w14);
    CHECK(core::is_minkowski_reduced(g));
    CHECK(core::is_positive_definite(g));
    CHECK(core::parity_ok(g, w14));
    const auto nec = criteria::necessary_conditions(c);
    CHECK(nec.r_kw == 14);
    CHECK(nec.admits(14));
    CHECK_FALSE(criteria::minkowski_lower_bound_ok(g, 3, 6));
    CHECK_FALSE(criteria::find_split(c));
    CHECK(repsearch::find_representation(c, 6).outcome == repsearch::Outcome::none);
  }
}

TEST_CASE("disabling the lower-bound discharge keeps the survivor set") {
  for (const char* label : {"1-i", "1-ii", "2-ii", "3-ii"}) {
    auto spec = survey::make_case(label, true);
    survey::SurveyOptions on, off;
    off.apply_discharge = false;
    on.certify = off.certify = false;
    const auto a = survey::run_case(spec, on);
    const auto b = survey::run_case(spec, off);
    CHECK_MESSAGE(keys(a) == keys(b), label);
    CHECK(b.candidates_scanned >= a.candidates_scanned);
  }
}

TEST_CASE("exact r_Kw cutoff settles the n = 2 and 3 cases too") {
  survey::SurveyOptions o;
  o.rkw_cutoff = survey::RkwCutoff::exact;
  for (int n : {2, 3})
    for (const auto& spec : survey::standard_cases(n)) CHECK(survey::run_case(spec, o).survivors.empty());
  CHECK(std::string(survey::to_string(survey::RkwCutoff::coarse)) == "coarse");
}

TEST_CASE("thread count does not change the report") {
  survey::SurveyOptions one, two;
  two.threads = 2;
  const auto spec = survey::make_case("3-ii", true);
  const auto a = survey::run_case(spec, one);
  const auto b = survey::run_case(spec, two);
  CHECK(keys(a) == keys(b));
  CHECK(a.candidates_scanned == b.candidates_scanned);
  CHECK(a.filtered_by == b.filtered_by);
  CHECK(a.stats == b.stats);
}

TEST_CASE("a resumed run reproduces the uninterrupted report") {
  const auto path = (std::filesystem::temp_directory_path() / "oddwaring-test-snapshot.jsonl").string();
  const auto spec = survey::make_case("3-iii", true);
  survey::SurveyOptions o;
  o.snapshot_path = path;
  const auto full = survey::run_case(spec, o);

  // keep the first half of the units plus a torn line
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  REQUIRE(lines.size() > 2);
  {
    std::ofstream out(path, std::ios::trunc);
    for (size_t i = 0; i < lines.size() / 2; ++i) out << lines[i] << '\n';
    out << lines.back().substr(0, lines.back().size() / 2);
  }
  // the torn tail stays in the file; a fresh newline keeps appended units parseable
  { std::ofstream(path, std::ios::app) << '\n'; }
  o.resume = true;
  const auto resumed = survey::run_case(spec, o);
  CHECK(keys(resumed) == keys(full));
  CHECK(resumed.candidates_scanned == full.candidates_scanned);
  CHECK(resumed.filtered_by == full.filtered_by);
  std::remove(path.c_str());
}

TEST_CASE("candidate cap reports resource_cap") {
  survey::SurveyOptions o;
  o.max_candidates = 10;
  o.certify = false;
  CHECK(survey::run_case(survey::make_case("3-ii", true), o).status == "resource_cap");
}

TEST_CASE("certify_survivor") {
  const auto rep = survey::certify_survivor(GramMatrix::identity(1), WSet::from_mask(1), 1);
  CHECK(rep.to_rows() == std::vector<std::vector<Int>>{{1}});
  const auto e = survey::exceptional_matrices().front();
  const auto t = survey::certify_survivor(e, w14, 14);
  CHECK(t.cols() == 14);
  CHECK(repsearch::verify_representation(core::CosetSpec(e, w14), t));
  CHECK_THROWS_AS(survey::certify_survivor(e, w14, 6), survey::Contradiction);
}

TEST_CASE("lower-bound witnesses") {
  const auto ws = survey::lower_bound_witnesses();
  REQUIRE(ws.size() == 4);
  const auto res = survey::run_witnesses(ws);
  for (const auto& r : res) {
    CHECK(r.matches);
    CHECK(r.pos == repsearch::Outcome::found);
    CHECK(r.neg == repsearch::Outcome::none);
    REQUIRE(r.rep);
    CHECK(repsearch::verify_representation(r.witness.coset, *r.rep));
    CHECK(r.rep->cols() == r.witness.r_pos);
  }
  CHECK(res[0].witness.r_pos == 12);
  CHECK(res[3].witness.coset.gram.dim() == 5);
  CHECK(survey::run_witnesses({}).empty());
}
