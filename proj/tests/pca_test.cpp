#include "doctest.h"
#include "pcalab/embed.hpp"
#include "pcalab/k2k.hpp"
#include "pcalab/pca.hpp"
#include "test_support.hpp"

using namespace pcalab;

namespace {

pca::PcaTable xy_table() {
  pca::PcaTable t;
  t.elements = {"x", "y"};
  t.graph[{0, 0}] = 1;
  return t;
}

}  // namespace

TEST_CASE("table JSON and lookup") {
  auto t = pca::PcaTable::from_json_text(R"({"elements":["x","y"],"table":[["x","x","y"]]})");
  REQUIRE(t.elements.size() == 2);
  CHECK(*pca::table_apply(t, "x", "x") == "y");
  CHECK(!pca::table_apply(t, "x", "y"));
  CHECK(!pca::table_apply(t, "y", "y"));
  CHECK_THROWS_AS(pca::table_apply(t, "x", "z"), std::invalid_argument);

  auto back = pca::PcaTable::from_json_text(t.to_json_text());
  CHECK(back.elements == t.elements);
  CHECK(back.graph == t.graph);

  CHECK_THROWS_AS(pca::PcaTable::from_json_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(
      pca::PcaTable::from_json_text(R"({"elements":["x"],"table":[["x","x","q"]]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      pca::PcaTable::from_json_text(
          R"({"elements":["x"],"table":[["x","x","x"],["x","x","x"]]})"),
      std::invalid_argument);
}

TEST_CASE("law suites pass on both codings") {
  Fuel f{1'000'000};
  for (auto& m : {pca::k2m_model(), pca::k2k_model()}) {
    auto k = pca::check_k_law(m, 25, 24, f, 42);
    CHECK(k.failed == 0);
    CHECK(k.passed > 0);
    auto s = pca::check_s_law(m, 10, 12, f, 43);
    CHECK(s.failed == 0);
    CHECK(s.passed > 0);
  }
}

TEST_CASE("a zero budget makes every case inconclusive, never a failure") {
  for (auto& m : {pca::k2m_model(), pca::k2k_model()}) {
    auto rep = pca::check_k_law(m, 10, 16, Fuel{0}, 3);
    CHECK(rep.failed == 0);
    CHECK(rep.passed == 0);
    CHECK(rep.inconclusive == 10);
  }
}

TEST_CASE("law reports reproduce under a fixed seed") {
  auto m = pca::k2m_model();
  auto r1 = pca::check_k_law(m, 20, 16, Fuel{200'000}, 7);
  auto r2 = pca::check_k_law(m, 20, 16, Fuel{200'000}, 7);
  CHECK(r1.passed == r2.passed);
  CHECK(r1.failed == r2.failed);
  CHECK(r1.inconclusive == r2.inconclusive);
  CHECK(r1.notes == r2.notes);
}

TEST_CASE("extraction suite and lack of support") {
  auto m = pca::k2m_model();
  auto rep = pca::check_barendregt(m, 20, 24, Fuel{1'000'000}, 5);
  CHECK(rep.failed == 0);
  CHECK(rep.inconclusive == 0);

  auto kleene = pca::k2k_model();
  CHECK(!kleene.extract);
}

TEST_CASE("all five shapes separate at position zero in the machine coding") {
  auto m = pca::k2m_model();
  auto ws = pca::hnf_dissimilarity(m, parse_real("ec:1,2;0").partial(),
                                   parse_real("ec:3;1").partial(), 64, Fuel{1'000'000});
  REQUIRE(ws.size() == 10);
  for (const auto& w : ws) {
    CHECK(w.separated);
    CHECK(w.position == 0);
  }
}

TEST_CASE("same-shape witnesses separate where the operands differ") {
  auto m = pca::k2m_model();
  Real a1 = parse_real("ec:5,6,7;0");
  Real a2 = parse_real("ec:5,6,9;0");  // first difference at position 2
  PartialReal ka1 = m.apply(m.k, a1.partial());
  PartialReal ka2 = m.apply(m.k, a2.partial());
  auto cmp = prefix_eq(ka1, ka2, 16, Fuel{1'000'000});
  REQUIRE(cmp.is_diff());
  CHECK(cmp.pos == 3);  // stored shifted one slot down
}

TEST_CASE("weak embedding checks") {
  Fuel f{1'000'000};
  auto t = xy_table();

  // the certified embedding passes
  auto f_good = [&t](const std::string& name) {
    return embed::embed_element(t, *t.index_of(name)).partial();
  };
  auto apply = [](const PartialReal& a, const PartialReal& b) {
    return k2k::apply(Real(a.node()), Real(b.node())).partial();
  };
  auto good = pca::check_weak_embedding(t, f_good, apply, 48, f);
  CHECK(good.verdict == pca::Verdict3::pass);
  CHECK(good.triples_checked == 1);

  // swapping the images breaks the triple
  auto f_swapped = [&t](const std::string& name) {
    return embed::embed_element(t, name == "x" ? 1 : 0).partial();
  };
  auto bad = pca::check_weak_embedding(t, f_swapped, apply, 48, f);
  CHECK(bad.verdict == pca::Verdict3::fail);

  // an empty graph passes vacuously, injectivity section only
  pca::PcaTable empty;
  empty.elements = {"a", "b", "c", "d"};
  auto femb = [&empty](const std::string& name) {
    return embed::embed_element(empty, *empty.index_of(name)).partial();
  };
  auto vac = pca::check_weak_embedding(empty, femb, apply, 48, f);
  CHECK(vac.verdict == pca::Verdict3::pass);
  CHECK(vac.triples_checked == 0);
}

TEST_CASE("identity map of a table into itself embeds weakly") {
  auto t = xy_table();
  std::map<std::string, std::string> id{{"x", "x"}, {"y", "y"}};
  auto rep = pca::check_weak_embedding(t, id, t);
  CHECK(rep.verdict == pca::Verdict3::pass);
  CHECK(rep.triples_checked == 1);

  std::map<std::string, std::string> collapse{{"x", "x"}, {"y", "x"}};
  CHECK(pca::check_weak_embedding(t, collapse, t).verdict == pca::Verdict3::fail);
}
