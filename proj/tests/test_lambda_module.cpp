#include <doctest.h>

#include <numeric>

#include "alexq/classify.hpp"
#include "alexq/error.hpp"
#include "alexq/lambda_module.hpp"
#include "oracles.hpp"

using namespace alexq;

namespace {

LambdaModule poly(std::uint32_t n, std::vector<std::int64_t> c) {
  return module_from_polynomial(Polynomial(n, std::move(c)));
}

std::vector<LambdaModule> modules_up_to(std::uint32_t max_order) {
  std::vector<LambdaModule> out;
  for (std::uint32_t n = 1; n <= max_order; ++n)
    for (auto& s : enumerate_structures(n, false)) out.push_back(s.module);
  return out;
}

}  // namespace

TEST_CASE("polynomials") {
  Polynomial h(2, {1, 1, 1});
  CHECK(h.degree() == 2);
  CHECK(h.to_string() == "t^2+t+1");
  CHECK(h.evaluate(1) == 1);
  CHECK(Polynomial(9, {-4, 1}).to_string() == "t+5");
  CHECK(Polynomial(2, {1, 1}).divides(Polynomial(2, {1, 0, 0, 1})));
  CHECK_FALSE(Polynomial(2, {1, 1, 1}).divides(Polynomial(2, {1, 1, 0, 1})));
  CHECK_THROWS_AS(Polynomial(2, {0, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(Polynomial(2, {1, 1, 0}), InvalidInput);
  CHECK_THROWS_AS(Polynomial(2, {1}), InvalidInput);
  CHECK_THROWS_AS(Polynomial(9, {3, 1}), InvalidInput);
  CHECK_THROWS_AS(Polynomial(1, {1, 1}), InvalidInput);
  // p^d - p^(d-1) monic polynomials with nonzero constant term.
  CHECK(monic_polynomials(2, 3).size() == 4);
  CHECK(monic_polynomials(3, 2).size() == 6);
}

TEST_CASE("module from a pair") {
  AbelianGroup z9({9});
  auto trivial = module_from_pair(z9, GroupAutomorphism::identity(z9));
  for (Element x = 0; x < 9; ++x) CHECK(trivial.t(x) == x);

  auto m = module_from_pair(z9, GroupAutomorphism(z9, {4}));
  CHECK(m.t(1) == 4);
  CHECK(oracle::lambda_isomorphic(m, module_from_linear(9, 4)));

  AbelianGroup v({2, 2});
  auto swap = module_from_pair(v, GroupAutomorphism(v, {v.basis(1), v.basis(0)}));
  CHECK(lambda_iso(swap, poly(2, {1, 0, 1})).has_value());
  CHECK(oracle::lambda_isomorphic(swap, poly(2, {1, 0, 1})));

  CHECK_THROWS_AS(module_from_pair(v, std::vector<std::vector<std::uint32_t>>{{1, 0}, {1, 0}}),
                  InvalidInput);
  CHECK_THROWS_AS(module_from_pair(v, std::vector<std::vector<std::uint32_t>>{{1, 0}}), InvalidInput);
}

TEST_CASE("module from a polynomial") {
  auto m = poly(9, {-4, 1});
  CHECK(m.group().invariant_factors().size() == 1);
  CHECK(m.order() == 9);
  for (Element x = 0; x < 9; ++x) CHECK(m.t(x) == (4 * x) % 9);

  auto q = poly(2, {1, 0, 1});
  CHECK(q.group() == AbelianGroup({2, 2}));
  CHECK(q.t(q.group().basis(0)) == q.group().basis(1));
  CHECK(q.t(q.group().basis(1)) == q.group().basis(0));

  CHECK_THROWS_AS(poly(2, {0, 1, 1}), InvalidInput);

  // Z_4[t]/(t^2 + 1) has group (4,4) and t^2 = -1.
  auto r = poly(4, {1, 0, 1});
  CHECK(r.group() == AbelianGroup({4, 4}));
  for (Element x = 0; x < r.order(); ++x) CHECK(r.t(r.t(x)) == r.group().neg(x));
}

TEST_CASE("linear modules") {
  auto m = module_from_linear(8, 3);
  CHECK(m.t(1) == 3);
  CHECK(m.provenance()->spec() == "linear:8:3");
  CHECK(module_from_linear(5, -1).t(1) == 4);
  CHECK_THROWS_AS(module_from_linear(6, 3), InvalidInput);
  CHECK_THROWS_AS(module_from_linear(1, 1), InvalidInput);
}

TEST_CASE("direct sums") {
  auto a = poly(2, {1, 1});
  auto b = poly(2, {1, 0, 1});
  auto s = direct_sum(a, b);
  CHECK(s.group() == AbelianGroup({2, 2, 2}));
  CHECK(oracle::lambda_isomorphic(direct_sum(b, a), s));

  auto zero = module_from_pair(AbelianGroup(), GroupAutomorphism::identity(AbelianGroup()));
  CHECK(oracle::lambda_isomorphic(direct_sum(b, zero), b));
  CHECK(oracle::lambda_isomorphic(direct_sum(zero, b), b));

  auto mixed = direct_sum(module_from_linear(3, 2), module_from_linear(5, 2));
  CHECK(mixed.group() == AbelianGroup({15}));
  CHECK(brute_iso(alexander_table(mixed), alexander_table(module_from_linear(15, 2))).has_value());

  // t stays additive and invertible after re-normalisation.
  auto z = direct_sum(module_from_linear(4, 3), module_from_linear(2, 1));
  CHECK(z.group() == AbelianGroup({2, 4}));
  for (Element x = 0; x < z.order(); ++x) {
    CHECK(z.t_inv(z.t(x)) == x);
    for (Element y = 0; y < z.order(); ++y)
      CHECK(z.t(z.group().add(x, y)) == z.group().add(z.t(x), z.t(y)));
  }
}

TEST_CASE("images of 1 - t") {
  auto im = image_one_minus_t(poly(2, {1, 0, 1}));
  CHECK(im.order() == 2);
  CHECK(lambda_iso(im.module, poly(2, {1, 1})).has_value());

  auto triv = image_one_minus_t(module_from_linear(7, 1));
  CHECK(triv.order() == 1);
  CHECK(triv.members == std::vector<Element>{0});

  auto im3 = image_one_minus_t(poly(3, {1, 1, 1}));
  CHECK(im3.order() == 3);
  CHECK(lambda_iso(im3.module, module_from_linear(3, -2)).has_value());

  auto m = poly(2, {1, 1, 1, 1});
  auto im1 = image_one_minus_t(m, 1);
  auto im2 = image_one_minus_t(m, 2);
  CHECK(im1.order() == 4);
  CHECK(im2.order() == 2);
  for (auto x : im2.members) CHECK(im1.locate[x] != kNoElement);
  CHECK_THROWS_AS(image_one_minus_t(m, 3), InvalidInput);
}

TEST_CASE("restriction requires a submodule") {
  auto m = module_from_linear(9, 4);
  CHECK(restrict_module(m, {0, 3, 6}).order() == 3);
  CHECK_THROWS_AS(restrict_module(m, {0, 1}), InvalidInput);
}

TEST_CASE("lambda isomorphism examples") {
  auto m4 = module_from_linear(9, 4);
  auto m7 = module_from_linear(9, 7);
  CHECK_FALSE(lambda_iso(m4, m7).has_value());

  auto self = lambda_iso(m4, m4);
  REQUIRE(self.has_value());
  CHECK(is_lambda_isomorphism(m4, m4, *self));

  auto im = image_one_minus_t(poly(2, {1, 1, 1, 1}));
  auto w = lambda_iso(poly(2, {1, 0, 1}), im.module);
  REQUIRE(w.has_value());
  CHECK(is_lambda_isomorphism(poly(2, {1, 0, 1}), im.module, *w));

  // Different orders.
  CHECK_FALSE(lambda_iso(m4, module_from_linear(3, 1)).has_value());
}

TEST_CASE("lambda_iso matches the unpruned search on all pairs of order at most 9") {
  for (std::uint32_t n = 1; n <= 9; ++n) {
    std::vector<LambdaModule> mods;
    for (auto& s : enumerate_structures(n, true)) mods.push_back(s.module);
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (std::size_t j = i; j < mods.size(); ++j) {
        auto w = lambda_iso(mods[i], mods[j]);
        INFO("order " << n << " pair " << i << "," << j);
        CHECK(w.has_value() == oracle::lambda_isomorphic(mods[i], mods[j]));
        if (w) CHECK(is_lambda_isomorphism(mods[i], mods[j], *w));
      }
  }
}

TEST_CASE("lambda_iso is reflexive, symmetric and transitive") {
  auto mods = modules_up_to(8);
  std::vector<std::size_t> cls(mods.size());
  std::iota(cls.begin(), cls.end(), 0);
  for (std::size_t i = 0; i < mods.size(); ++i) {
    REQUIRE(lambda_iso(mods[i], mods[i]).has_value());
    for (std::size_t j = i + 1; j < mods.size(); ++j) {
      if (mods[i].order() != mods[j].order()) continue;
      auto f = lambda_iso(mods[i], mods[j]);
      auto g = lambda_iso(mods[j], mods[i]);
      REQUIRE(f.has_value() == g.has_value());
      if (!f) continue;
      // Inverse of a witness is a witness.
      std::vector<Element> inv(f->size());
      for (Element x = 0; x < f->size(); ++x) inv[(*f)[x]] = x;
      CHECK(is_lambda_isomorphism(mods[j], mods[i], inv));
      cls[j] = std::min(cls[j], cls[i]);
    }
  }
  // Transitivity: isomorphic to a class leader means isomorphic to every
  // other module isomorphic to that leader.
  for (std::size_t i = 0; i < mods.size(); i += 7)
    for (std::size_t j = 0; j < mods.size(); j += 5)
      if (cls[i] == cls[j] && mods[i].order() == mods[j].order())
        CHECK(lambda_iso(mods[i], mods[j]).has_value());
}

TEST_CASE("t has an inverse on every constructed module") {
  for (auto& m : modules_up_to(16))
    for (Element x = 0; x < m.order(); ++x) {
      REQUIRE(m.t_inv(m.t(x)) == x);
      REQUIRE(m.t(m.t_inv(x)) == x);
    }
}

TEST_CASE("image of 1 - t is a submodule containing the second image") {
  for (auto& m : modules_up_to(16)) {
    auto im1 = image_one_minus_t(m, 1);
    auto im2 = image_one_minus_t(m, 2);
    CHECK(im1.order() == oracle::image_size(m));
    std::vector<char> in(m.order(), 0);
    for (auto x : im1.members) in[x] = 1;
    for (auto x : im1.members) {
      REQUIRE(in[m.t(x)]);
      REQUIRE(in[m.t_inv(x)]);
      for (auto y : im1.members) REQUIRE(in[m.group().add(x, y)]);
    }
    for (auto x : im2.members) REQUIRE(in[x]);
    // The abstract copy carries the restricted action.
    for (Element a = 0; a < im1.order(); ++a)
      REQUIRE(im1.embed[im1.module.t(a)] == m.t(im1.embed[a]));
  }
}

TEST_CASE("image order of a linear module") {
  for (std::int64_t n = 2; n <= 16; ++n)
    for (std::int64_t a = 1; a < n; ++a) {
      if (std::gcd(n, a) != 1) continue;
      auto expected = n / std::gcd(n, a - 1);
      CHECK(image_one_minus_t(module_from_linear(n, a)).order() == static_cast<std::size_t>(expected));
    }
}

TEST_CASE("identify as quotient") {
  auto im = image_one_minus_t(poly(2, {1, 0, 0, 1}));
  auto d = identify_as_quotient(im.module);
  REQUIRE(d.has_value());
  CHECK(d->spec() == "poly:2:1,1,1");

  auto zero = identify_as_quotient(image_one_minus_t(module_from_linear(2, 1)).module);
  REQUIRE(zero.has_value());
  CHECK(zero->pretty() == "0");

  auto im3 = identify_as_quotient(image_one_minus_t(poly(3, {2, 0, 1})).module);
  REQUIRE(im3.has_value());
  CHECK(im3->spec() == "poly:3:1,1");

  auto chain = identify_as_quotient(direct_sum(poly(2, {1, 1}), poly(2, {1, 0, 1})));
  REQUIRE(chain.has_value());
  CHECK(chain->pretty() == "Lambda_2/(t+1) + Lambda_2/(t^2+1)");

  auto cyclic = identify_as_quotient(module_from_linear(8, 3));
  REQUIRE(cyclic.has_value());
  CHECK(cyclic->spec() == "linear:8:3");

  AbelianGroup g({2, 4});
  CHECK_FALSE(identify_as_quotient(module_from_pair(g, GroupAutomorphism::identity(g))).has_value());
}

TEST_CASE("chain quotients cover every module on an elementary group once") {
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t m = 1; m <= 3; ++m) {
      if (p == 3 && m == 3) continue;
      auto chains = chain_quotients(p, m);
      for (std::size_t i = 0; i < chains.size(); ++i) {
        auto mi = build_module(chains[i]);
        std::size_t order = 1;
        for (std::size_t k = 0; k < m; ++k) order *= p;
        CHECK(mi.order() == order);
        for (std::size_t j = i + 1; j < chains.size(); ++j)
          CHECK_FALSE(oracle::lambda_isomorphic(mi, build_module(chains[j])));
      }
      // Every module on (Z_p)^m is one of them.
      std::vector<std::uint32_t> factors(m, p);
      AbelianGroup g(factors);
      for (auto& a : enumerate_automorphisms(g)) {
        auto mod = module_from_pair(g, a);
        auto id = identify_as_quotient(mod);
        REQUIRE(id.has_value());
        CHECK(lambda_iso(mod, build_module(*id)).has_value());
      }
    }
}

TEST_CASE("descriptor strings") {
  CHECK(ModuleDescriptor::linear(9, 4).pretty() == "Lambda_9/(t-4)");
  CHECK(ModuleDescriptor::poly(Polynomial(2, {1, 0, 1})).spec() == "poly:2:1,0,1");
  auto s = ModuleDescriptor::sum({ModuleDescriptor::linear(2, 1), ModuleDescriptor::linear(2, 1)});
  CHECK(s.spec() == "sum:linear:2:1+linear:2:1");
  CHECK(ModuleDescriptor::sum({ModuleDescriptor::linear(2, 1)}) == ModuleDescriptor::linear(2, 1));
  CHECK(ModuleDescriptor::linear(9, 4) < ModuleDescriptor::poly(Polynomial(2, {1, 1})));
  CHECK(build_module(s).group() == AbelianGroup({2, 2}));
}

TEST_CASE("certificates") {
  auto c = iso_certificate(module_from_linear(9, 4));
  CHECK(c.group_factors == std::vector<std::uint32_t>{9});
  CHECK(c.image_factors == std::vector<std::uint32_t>{3});
  CHECK(c.image2_order == 1);
  CHECK(c.fixed_points == 3);
  CHECK(iso_certificate(module_from_linear(9, 4)) != iso_certificate(module_from_linear(9, 2)));
}
