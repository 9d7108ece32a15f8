#include "alexq/classify.hpp"

#include <algorithm>
#include <map>

#include "alexq/error.hpp"

namespace alexq {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Structure> enumerate_structures(std::uint32_t n, bool conjugacy_prune) {
  std::vector<Structure> out;
  for (auto& group : abelian_groups_of_order(n)) {
    auto auts = enumerate_automorphisms(group);
    if (!conjugacy_prune) {
      for (auto& a : auts) out.push_back({module_from_pair(group, a), 1});
      continue;
    }
    for (auto& cls : conjugacy_classes(auts))
      out.push_back({module_from_pair(group, auts[cls.representative]), cls.members.size()});
  }
  return out;
}

ModuleDescriptor describe_structure(const LambdaModule& m) {
  const auto& g = m.group();
  if (m.order() == 1) return ModuleDescriptor::sum({});
  if (g.is_cyclic()) return ModuleDescriptor::linear(g.invariant_factors().front(), m.t(1));
  if (g.is_elementary()) {
    if (auto d = identify_as_quotient(m)) return *d;
  }
  const auto primes = factorize(static_cast<std::uint32_t>(m.order()));
  if (primes.size() > 1) {
    std::vector<ModuleDescriptor> parts;
    for (auto [p, e] : primes) {
      std::uint32_t pe = 1;
      for (std::uint32_t i = 0; i < e; ++i) pe *= p;
      std::vector<Element> members;
      for (Element x = 0; x < m.order(); ++x)
        if (pe % g.element_order(x) == 0) members.push_back(x);
      parts.push_back(describe_structure(restrict_module(m, std::move(members)).module));
    }
    return ModuleDescriptor::sum(std::move(parts));
  }
  return ModuleDescriptor::pair(g, m.t_action());
}

ClassificationReport classify_order(std::uint32_t n, bool conjugacy_prune) {
  auto structures = enumerate_structures(n, conjugacy_prune);

  struct Pending {
    std::size_t structure;
    LambdaModule image;
  };
  std::vector<Pending> pending;
  std::map<IsoCertificate, std::vector<std::size_t>> buckets;  // certificate -> pending ids
  for (std::size_t i = 0; i < structures.size(); ++i) {
    auto image = image_one_minus_t(structures[i].module).module;
    buckets[iso_certificate(image)].push_back(pending.size());
    pending.push_back({i, std::move(image)});
  }

  std::vector<std::vector<std::size_t>> classes;  // lists of structure ids
  for (auto& [cert, ids] : buckets) {
    std::vector<std::size_t> bucket_classes;  // indices into `classes`
    for (auto id : ids) {
      bool placed = false;
      for (auto c : bucket_classes) {
        const auto& rep = pending[classes[c].front()];
        if (lambda_iso(rep.image, pending[id].image)) {
          classes[c].push_back(id);
          placed = true;
          break;
        }
      }
      if (!placed) {
        bucket_classes.push_back(classes.size());
        classes.push_back({id});
      }
    }
  }

  ClassificationReport report;
  report.order = n;
  for (auto& cls : classes) {
    ClassRecord rec;
    std::optional<ModuleDescriptor> best;
    for (auto id : cls) {
      const auto& s = structures[pending[id].structure];
      rec.class_size += s.multiplicity;
      auto d = describe_structure(s.module);
      if (!best || d < *best) best = std::move(d);
    }
    rec.representative = std::move(*best);
    rec.connected = pending[cls.front()].image.order() == n;
    report.total_structures += rec.class_size;
    report.connected_count += rec.connected ? 1 : 0;
    report.classes.push_back(std::move(rec));
  }
  std::sort(report.classes.begin(), report.classes.end(),
            [](const ClassRecord& a, const ClassRecord& b) { return a.representative < b.representative; });
  report.distinct_count = report.classes.size();
  return report;
}

std::vector<CountRow> count_table(std::uint32_t max_n, bool conjugacy_prune) {
  if (max_n < 2) throw InvalidInput("max order must be at least 2");
  std::vector<CountRow> rows;
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    auto r = classify_order(n, conjugacy_prune);
    rows.push_back({n, r.distinct_count, r.connected_count});
  }
  return rows;
}

namespace {

ModuleDescriptor p(std::uint32_t modulus, std::vector<std::int64_t> coeffs) {
  return ModuleDescriptor::poly(Polynomial(modulus, std::move(coeffs)));
}

}  // namespace

std::vector<ModuleDescriptor> table1_modules() {
  using D = ModuleDescriptor;
  return {
      D::sum({p(2, {1, 1}), p(2, {1, 1})}),
      p(2, {1, 0, 1}),
      p(2, {1, 1, 1}),
      D::sum({p(2, {1, 1}), p(2, {1, 1}), p(2, {1, 1})}),
      D::sum({p(2, {1, 1}), p(2, {1, 0, 1})}),
      p(2, {1, 0, 0, 1}),
      p(2, {1, 1, 0, 1}),
      p(2, {1, 0, 1, 1}),
      p(2, {1, 1, 1, 1}),
      D::sum({p(3, {2, 1}), p(3, {2, 1})}),
      D::sum({p(3, {1, 1}), p(3, {1, 1})}),
      p(3, {2, 0, 1}),
      p(3, {1, 0, 1}),
      p(3, {2, 2, 1}),
      p(3, {1, 2, 1}),
      p(3, {2, 1, 1}),
      p(3, {1, 1, 1}),
  };
}

std::vector<Table1Row> table1_report() {
  std::vector<Table1Row> rows;
  for (auto& desc : table1_modules()) {
    auto m = build_module(desc);
    auto image = image_one_minus_t(m).module;
    rows.push_back({m.group(), desc, identify_as_quotient(image)});
  }
  return rows;
}

PredictedCounts product_formula(std::uint32_t n,
                                const std::function<PredictedCounts(std::uint32_t)>& prime_power_counts) {
  PredictedCounts out{1, 1};
  for (auto [prime, e] : factorize(n)) {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= prime;
    auto c = prime_power_counts(q);
    out.distinct = (out.distinct && c.distinct) ? std::optional(*out.distinct * *c.distinct) : std::nullopt;
    out.connected = (out.connected && c.connected) ? std::optional(*out.connected * *c.connected) : std::nullopt;
  }
  return out;
}

PredictedCounts predicted_counts(std::uint32_t n) {
  if (n < 2) throw InvalidInput("order must be at least 2");
  return product_formula(n, [](std::uint32_t q) -> PredictedCounts {
    auto f = factorize(q);
    const std::size_t prime = f.front().first;
    if (f.front().second == 1) return {prime - 1, prime - 2};
    if (f.front().second == 2) return {std::nullopt, 2 * prime * prime - 3 * prime - 1};
    return {};
  });
}

bool poly_connected(const Polynomial& h) {
  if (!is_prime(h.modulus())) throw InvalidInput("poly_connected needs a prime modulus");
  return h.evaluate(1) != 0;
}

}  // namespace alexq
