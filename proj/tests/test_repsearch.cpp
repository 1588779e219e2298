#include <doctest.h>

#include "oddwaring/criteria.hpp"
#include "oddwaring/repsearch.hpp"
#include "oracles.hpp"

using namespace oddw;
using core::GramMatrix;
using core::Int;
using core::WSet;
using repsearch::Outcome;

namespace {

core::CosetSpec coset(const std::vector<std::vector<Int>>& m, std::vector<int> w1) {
  std::vector<int> z;
  for (int i : w1) z.push_back(i - 1);
  return core::CosetSpec(GramMatrix::from_rows(m), WSet::from_indices(z));
}

// T T^t == M and every column odd over w, checked directly.
bool certificate_ok(const core::CosetSpec& c, const repsearch::RepMatrix& t) {
  const int n = c.gram.dim();
  if (t.rows() != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (int k = 0; k < t.cols(); ++k) s += t(i, k) * t(j, k);
      if (s != c.gram(i, j)) return false;
    }
  for (int k = 0; k < t.cols(); ++k) {
    Int s = 0;
    for (int i : c.w.indices()) s += t(i, k);
    if (s % 2 == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("agrees with the layered DP on every small rank-1 and rank-2 coset") {
  int checked = 0;
  for (Int a = 1; a <= 6; ++a)
    for (int r = 1; r <= 8; ++r) {
      const auto c = coset({{a}}, {1});
      const auto res = repsearch::find_representation(c, r);
      CHECK(res.outcome != Outcome::exhausted);
      CHECK((res.outcome == Outcome::found) == oracle::representable(c.gram, c.w, r));
      ++checked;
    }
  for (Int a = 1; a <= 6; ++a)
    for (Int d = 1; d <= 6; ++d)
      for (Int b = -6; b <= 6; ++b) {
        if (a * d - b * b <= 0) continue;
        for (unsigned mask = 1; mask <= 3; ++mask)
          for (int r = 1; r <= 8; ++r) {
            const core::CosetSpec c(GramMatrix::from_rows({{a, b}, {b, d}}), WSet::from_mask(mask));
            const auto res = repsearch::find_representation(c, r);
            const bool want = oracle::representable(c.gram, c.w, r);
            CHECK_MESSAGE((res.outcome == Outcome::found) == want, c.gram.to_string() << " w=" << mask << " r=" << r);
            if (res.rep) CHECK(certificate_ok(c, *res.rep));
            ++checked;
          }
      }
  CHECK(checked > 1000);
}

TEST_CASE("agrees with the layered DP on random rank-3 cosets") {
  for (int t = 0; t < 150; ++t) {
    const core::CosetSpec c(oracle::random_pd(3, 4), oracle::random_w(3));
    const int r = static_cast<int>(oracle::uniform(1, 6));
    const auto res = repsearch::find_representation(c, r);
    CHECK_MESSAGE((res.outcome == Outcome::found) == oracle::representable(c.gram, c.w, r), c.gram.to_string());
  }
}

TEST_CASE("found representations satisfy the necessary conditions") {
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(oracle::uniform(1, 3));
    const core::CosetSpec c(oracle::random_pd(n, 8), oracle::random_w(n));
    const Int r = oracle::uniform(1, 14);
    repsearch::SearchBudget b;
    b.max_nodes = 200000;
    const auto res = repsearch::find_representation(c, r, b);
    if (res.outcome != Outcome::found) continue;
    const auto nec = criteria::necessary_conditions(c);
    CHECK(nec.admits(r));
    CHECK(repsearch::verify_representation(c, *res.rep));
    CHECK(certificate_ok(c, *res.rep));
  }
}

TEST_CASE("witness verdicts") {
  const auto w2 = coset({{8, 2}, {2, 12}}, {2});
  CHECK(repsearch::find_representation(w2, 4).outcome == Outcome::none);
  const auto yes = repsearch::find_representation(w2, 12);
  REQUIRE(yes.outcome == Outcome::found);
  CHECK(certificate_ok(w2, *yes.rep));
  // r = 20 exceeds Q(w) = 12; padding with columns (0, 1) would change m_22
  CHECK(repsearch::find_representation(w2, 20).outcome == Outcome::none);
  CHECK(repsearch::find_representation(coset({{8, 2}, {2, 20}}, {2}), 20).outcome == Outcome::found);
  const auto w3 = coset({{3, 0, 0}, {0, 3, 0}, {0, 0, 23}}, {1, 2, 3});
  CHECK(repsearch::find_representation(w3, 5).outcome == Outcome::none);
  CHECK(repsearch::find_representation(w3, 13).outcome == Outcome::found);
  CHECK(repsearch::find_representation(coset({{1}}, {1}), 1).rep->to_rows() == std::vector<std::vector<Int>>{{1}});
}

TEST_CASE("input errors") {
  const auto w2 = coset({{8, 2}, {2, 12}}, {2});
  CHECK_THROWS_AS(repsearch::find_representation(w2, 0), std::invalid_argument);
  CHECK_THROWS_AS(repsearch::find_representation(coset({{1, 2}, {2, 1}}, {1}), 2), std::invalid_argument);
  repsearch::SearchBudget b;
  b.max_nodes = 0;
  CHECK_THROWS_AS(repsearch::find_representation(w2, 4, b), std::invalid_argument);
}

TEST_CASE("budget exhaustion is reported, never a false negative") {
  const auto w3 = coset({{1, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 23}}, {1, 2, 3, 4});
  repsearch::SearchBudget b;
  b.max_nodes = 5;
  const auto res = repsearch::find_representation(w3, 6, b);
  CHECK(res.outcome == Outcome::exhausted);
  CHECK(res.nodes == 5);
}

TEST_CASE("results do not depend on the thread count or column canonicalization") {
  for (int t = 0; t < 40; ++t) {
    const core::CosetSpec c(oracle::random_pd(3, 6), oracle::random_w(3));
    const Int r = oracle::uniform(3, 11);
    repsearch::SearchBudget one, four, raw;
    four.threads = 4;
    raw.canonicalize_columns = false;
    const auto a = repsearch::find_representation(c, r, one);
    const auto b = repsearch::find_representation(c, r, four);
    CHECK(a.outcome == b.outcome);
    CHECK(a.nodes == b.nodes);
    CHECK(a.rep == b.rep);
    CHECK((repsearch::find_representation(c, r, raw).outcome == Outcome::found) == (a.outcome == Outcome::found));
  }
}

TEST_CASE("min_representation walks admissible r in order") {
  const auto w2 = coset({{8, 2}, {2, 12}}, {2});
  const auto m = repsearch::min_representation(w2, 12);
  REQUIRE(m.r);
  CHECK(*m.r == 12);
  CHECK(m.proven_minimal);
  REQUIRE(m.steps.size() == 2);
  CHECK(m.steps[0].verdict == repsearch::Verdict::none);
  CHECK(m.steps[1].verdict == repsearch::Verdict::found);
  CHECK(std::string(repsearch::to_string(repsearch::Verdict::excluded)) == "excluded_by_necessary_condition");
  const auto none = repsearch::min_representation(w2, 11);
  CHECK_FALSE(none.r);
  CHECK_FALSE(none.proven_minimal);
}

TEST_CASE("vectors of a given norm") {
  const auto v = repsearch::vectors_of_norm(GramMatrix::identity(2), 1);
  CHECK(v == std::vector<std::vector<Int>>{{1, 0}, {0, 1}, {0, -1}, {-1, 0}});
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::random_pd(3, 6);
    const Int norm = oracle::uniform(1, 12);
    const auto got = repsearch::vectors_of_norm(g, norm);
    size_t want = 0;
    for (Int a = -8; a <= 8; ++a)
      for (Int b = -8; b <= 8; ++b)
        for (Int c = -8; c <= 8; ++c) want += oracle::qform(g, {a, b, c}) == norm;
    CHECK(got.size() == want);
    for (const auto& x : got) CHECK(oracle::qform(g, x) == norm);
  }
}

TEST_CASE("coset isometry") {
  // the first and last exceptional matrices are isometric with w = {1,4}, as are the middle two
  const auto e1 = coset({{9, 3, 3, 2}, {3, 9, 3, -4}, {3, 3, 9, -4}, {2, -4, -4, 9}}, {1, 4});
  const auto e2 = coset({{9, 3, 4, 2}, {3, 9, 3, -4}, {4, 3, 9, -3}, {2, -4, -3, 9}}, {1, 4});
  const auto e3 = coset({{9, 4, 3, 2}, {4, 9, 3, -3}, {3, 3, 9, -4}, {2, -3, -4, 9}}, {1, 4});
  const auto e4 = coset({{9, 4, 4, 2}, {4, 9, 3, -3}, {4, 3, 9, -3}, {2, -3, -3, 9}}, {1, 4});
  CHECK(repsearch::cosets_isometric(e1, e4));
  CHECK(repsearch::cosets_isometric(e2, e3));
  CHECK(repsearch::cosets_isometric(e1, e1));
  // same lattice, different coset
  CHECK_FALSE(repsearch::cosets_isometric(coset({{1, 0}, {0, 1}}, {1}), coset({{1, 0}, {0, 1}}, {1, 2})));
  CHECK(repsearch::cosets_isometric(coset({{1, 0}, {0, 1}}, {1}), coset({{1, 0}, {0, 1}}, {2})));
  // the basis change d2 -> d1 + d2 fixes d1, so w stays {1}
  CHECK(repsearch::cosets_isometric(coset({{2, 1}, {1, 3}}, {1}), coset({{2, 3}, {3, 7}}, {1})));
  CHECK_FALSE(repsearch::cosets_isometric(coset({{2, 1}, {1, 3}}, {1}), coset({{2, 0}, {0, 3}}, {1})));
  CHECK_THROWS_AS(repsearch::cosets_isometric(coset({{1}}, {1}), coset({{1, 0}, {0, 1}}, {1})), std::invalid_argument);
}
