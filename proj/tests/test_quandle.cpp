#include <doctest.h>

#include <numeric>

#include "alexq/classify.hpp"
#include "alexq/error.hpp"
#include "alexq/quandle.hpp"
#include "oracles.hpp"

using namespace alexq;

namespace {

QuandleTable table_of(std::size_t n, Element (*op)(Element, Element, std::size_t)) {
  std::vector<Element> cells(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) cells[x * n + y] = op(x, y, n);
  return QuandleTable(n, std::move(cells));
}

QuandleTable trivial_table(std::size_t n) {
  return table_of(n, [](Element x, Element, std::size_t) { return x; });
}

LambdaModule poly(std::uint32_t n, std::vector<std::int64_t> c) {
  return module_from_polynomial(Polynomial(n, std::move(c)));
}

std::vector<LambdaModule> structures(std::uint32_t n) {
  std::vector<LambdaModule> out;
  for (auto& s : enumerate_structures(n, true)) out.push_back(s.module);
  return out;
}

}  // namespace

TEST_CASE("alexander tables") {
  auto t = alexander_table(module_from_linear(5, 1));
  CHECK(t == trivial_table(5));

  auto d3 = alexander_table(module_from_linear(3, 2));
  for (Element x = 0; x < 3; ++x)
    for (Element y = 0; y < 3; ++y) CHECK(d3.at(x, y) == (2 * x + 2 * y) % 3);

  auto q4 = alexander_table(poly(2, {1, 1, 1}));
  CHECK(q4.order() == 4);
  CHECK(is_connected(q4));
  CHECK(check_axioms(q4).ok());
}

TEST_CASE("axiom failures carry witnesses") {
  auto projection = table_of(4, [](Element, Element y, std::size_t) { return y; });
  auto r = check_axioms(projection);
  CHECK(r.status == AxiomStatus::right_bijective);
  CHECK(r.witness == std::array<std::size_t, 3>{0, 1, 0});

  auto shift = table_of(4, [](Element x, Element, std::size_t n) { return static_cast<Element>((x + 1) % n); });
  r = check_axioms(shift);
  CHECK(r.status == AxiomStatus::idempotent);
  CHECK(r.witness == std::array<std::size_t, 3>{0, 0, 0});

  // Columns are permutations fixing the diagonal, but f_0 is not an
  // automorphism.
  auto t = QuandleTable::from_rows({{0, 2, 0}, {2, 1, 1}, {1, 0, 2}});
  r = check_axioms(t);
  REQUIRE(r.status == AxiomStatus::distributive);
  auto [a, b, c] = r.witness;
  CHECK(t.at(t.at(a, b), c) != t.at(t.at(a, c), t.at(b, c)));
  CHECK(r.describe().find("axiom (ii)") != std::string::npos);

  CHECK(check_axioms(trivial_table(1)).ok());
  CHECK(check_axioms(QuandleTable(0, {})).ok());
}

TEST_CASE("malformed tables") {
  auto t = QuandleTable::from_rows({{0, 5}, {1, 1}});
  CHECK(t.malformed());
  auto r = check_axioms(t);
  CHECK(r.status == AxiomStatus::malformed);
  CHECK(r.witness[0] == 0);
  CHECK(r.witness[1] == 1);
  CHECK_THROWS_AS(orbits(t), InvalidInput);
  CHECK_THROWS_AS(dual(t), InvalidInput);
  CHECK(QuandleTable::from_rows({{0, -1}, {1, 1}}).malformed());
  CHECK_THROWS_AS(QuandleTable::from_rows({{0, 1}, {1}}), InvalidInput);
  CHECK_THROWS_AS(QuandleTable(2, {0, 1, 1}), InvalidInput);
}

TEST_CASE("every alexander table is a quandle") {
  for (std::uint32_t n = 1; n <= 16; ++n)
    for (auto& m : structures(n)) REQUIRE(check_axioms(alexander_table(m)).ok());
}

TEST_CASE("orbits") {
  auto o = orbits(trivial_table(4));
  CHECK(o.size() == 4);
  for (auto& orbit : o) CHECK(orbit.size() == 1);

  auto o9 = orbits(alexander_table(module_from_linear(9, 4)));
  REQUIRE(o9.size() == 3);
  CHECK(o9[0] == std::vector<Element>{0, 3, 6});
  for (auto& orbit : o9) CHECK(orbit.size() == 3);

  CHECK(is_connected(alexander_table(poly(2, {1, 1, 0, 1}))));
  CHECK_FALSE(is_connected(alexander_table(poly(2, {1, 0, 0, 1}))));
}

TEST_CASE("connected iff the image of 1 - t is everything") {
  for (std::uint32_t n = 1; n <= 16; ++n)
    for (auto& m : structures(n)) {
      auto t = alexander_table(m);
      CHECK(is_connected(t) == (image_one_minus_t(m).order() == m.order()));
      CHECK(is_connected(t) == oracle::connected_by_closure(t));
    }
}

TEST_CASE("duals") {
  CHECK(dual(trivial_table(6)) == trivial_table(6));

  auto t5 = alexander_table(module_from_linear(5, 2));
  auto d5 = dual(t5);
  CHECK(dual(d5) == t5);
  CHECK(brute_iso(d5, alexander_table(module_from_linear(5, 3))).has_value());
  CHECK(oracle::tables_isomorphic(d5, alexander_table(module_from_linear(5, 3))));
  CHECK_FALSE(brute_iso(d5, t5).has_value());

  auto not_quandle = table_of(3, [](Element, Element y, std::size_t) { return y; });
  CHECK_THROWS_AS(dual(not_quandle), InvalidInput);
}

TEST_CASE("dual of an alexander table uses t inverse") {
  for (std::uint32_t n = 1; n <= 16; ++n)
    for (auto& m : structures(n)) {
      auto t = alexander_table(m);
      auto inv = module_from_pair(m.group(), m.t_action().inverse());
      CHECK(dual(t) == alexander_table(inv));
      CHECK(dual(dual(t)) == t);
    }
}

TEST_CASE("brute force isomorphism") {
  auto a = alexander_table(module_from_linear(9, 4));
  auto b = alexander_table(module_from_linear(9, 7));
  auto w = brute_iso(a, b);
  REQUIRE(w.has_value());
  CHECK(w->method == IsoMethod::brute_force);
  CHECK(is_quandle_isomorphism(a, b, w->map));

  auto t3 = trivial_table(3);
  auto self = brute_iso(t3, t3);
  REQUIRE(self.has_value());
  CHECK(self->map == std::vector<Element>{0, 1, 2});

  CHECK_FALSE(brute_iso(a, alexander_table(module_from_linear(9, 2))).has_value());
  CHECK_FALSE(brute_iso(a, trivial_table(8)).has_value());
  CHECK(brute_iso(QuandleTable(0, {}), QuandleTable(0, {})).has_value());
}

TEST_CASE("brute force agrees with trying every permutation") {
  for (std::uint32_t n = 1; n <= 7; ++n) {
    auto mods = structures(n);
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (std::size_t j = i; j < mods.size(); ++j) {
        auto a = alexander_table(mods[i]);
        auto b = alexander_table(mods[j]);
        auto w = brute_iso(a, b);
        CHECK(w.has_value() == oracle::tables_isomorphic(a, b));
        if (w) CHECK(is_quandle_isomorphism(a, b, w->map));
      }
  }
}

TEST_CASE("brute force handles non-alexander quandles") {
  // One element swaps the other two; both relabellings.
  auto a = QuandleTable::from_rows({{0, 0, 1}, {1, 1, 0}, {2, 2, 2}});
  auto b = QuandleTable::from_rows({{0, 2, 0}, {1, 1, 1}, {2, 0, 2}});
  REQUIRE(check_axioms(a).ok());
  REQUIRE(check_axioms(b).ok());
  auto w = brute_iso(a, b);
  REQUIRE(w.has_value());
  CHECK(is_quandle_isomorphism(a, b, w->map));
  CHECK_FALSE(brute_iso(a, trivial_table(3)).has_value());
}

TEST_CASE("theorem1 decider examples") {
  CHECK(theorem1_iso(module_from_linear(9, 4), module_from_linear(9, 7)));
  CHECK(theorem1_iso(module_from_linear(8, 3), module_from_linear(8, 7)));
  CHECK(theorem1_iso(poly(2, {1, 0, 1}), module_from_linear(4, 3)));
  CHECK_FALSE(theorem1_iso(module_from_linear(9, 4), module_from_linear(9, 2)));
  CHECK_FALSE(theorem1_iso(module_from_linear(3, 1), module_from_linear(4, 1)));
}

TEST_CASE("constructed isomorphisms") {
  SUBCASE("identity on the image") {
    auto m = module_from_linear(9, 4);
    auto img = image_one_minus_t(m);
    std::vector<Element> id(img.order());
    std::iota(id.begin(), id.end(), 0);
    auto w = construct_quandle_iso(m, m, id);
    CHECK(w.method == IsoMethod::theorem1_constructive);
    CHECK(is_quandle_isomorphism(alexander_table(m), alexander_table(m), w.map));
    for (auto x : img.members) CHECK(w.map[x] == x);
  }
  SUBCASE("named pairs") {
    for (auto [n, a, b] : {std::array<int, 3>{9, 4, 7}, {8, 3, 7}}) {
      auto m = module_from_linear(n, a);
      auto k = module_from_linear(n, b);
      auto h = lambda_iso(image_one_minus_t(m).module, image_one_minus_t(k).module);
      REQUIRE(h.has_value());
      auto w = construct_quandle_iso(m, k, *h);
      CHECK(is_quandle_isomorphism(alexander_table(m), alexander_table(k), w.map));
    }
  }
  SUBCASE("invalid inputs") {
    auto m = module_from_linear(9, 4);
    auto k = module_from_linear(9, 7);
    CHECK_THROWS_AS(construct_quandle_iso(m, k, std::vector<Element>{0, 0, 0}), InvalidInput);
    CHECK_THROWS_AS(construct_quandle_iso(m, k, std::vector<Element>{0, 1}), InvalidInput);
    CHECK_THROWS_AS(construct_quandle_iso(m, module_from_linear(8, 3), std::vector<Element>{0, 1, 2}),
                    InvalidInput);
  }
}

TEST_CASE("theorem1 and brute force agree up to order 8") {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    auto mods = structures(n);
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (std::size_t j = i; j < mods.size(); ++j) {
        auto a = alexander_table(mods[i]);
        auto b = alexander_table(mods[j]);
        auto brute = brute_iso(a, b);
        auto constructed = theorem1_witness(mods[i], mods[j]);
        CHECK(theorem1_iso(mods[i], mods[j]) == brute.has_value());
        CHECK(constructed.has_value() == brute.has_value());
        if (constructed) CHECK(is_quandle_isomorphism(a, b, constructed->map));
      }
  }
}

TEST_CASE("isomorphisms fixing 0 commute with t and 1 - t") {
  for (std::uint32_t n = 2; n <= 9; ++n) {
    auto mods = structures(n);
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (std::size_t j = 0; j < mods.size(); ++j) {
        auto w = theorem1_witness(mods[i], mods[j]);
        if (!w) continue;
        const auto& gn = mods[j].group();
        // Translations are quandle automorphisms, so shift f(0) to 0.
        std::vector<Element> f(w->map.size());
        for (Element x = 0; x < f.size(); ++x) f[x] = gn.sub(w->map[x], w->map[0]);
        REQUIRE(is_quandle_isomorphism(alexander_table(mods[i]), alexander_table(mods[j]), f));
        for (Element x = 0; x < f.size(); ++x) {
          CHECK(f[mods[i].t(x)] == mods[j].t(f[x]));
          CHECK(f[mods[i].one_minus_t(x)] == mods[j].one_minus_t(f[x]));
        }
      }
  }
}
