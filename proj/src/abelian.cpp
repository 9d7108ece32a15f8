#include "alexq/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "alexq/error.hpp"

namespace alexq {

namespace {

constexpr std::size_t kAddTableLimit = 1024;

std::vector<std::uint32_t> partition_to_powers(std::uint32_t p, const std::vector<std::uint32_t>& parts) {
  std::vector<std::uint32_t> out;
  for (auto e : parts) {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    out.push_back(q);
  }
  return out;
}

void partitions(std::uint32_t n, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(n - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::int64_t mod_floor(std::int64_t value, std::int64_t modulus) {
  std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// ---------------------------------------------------------------------------
// CyclicProduct

CyclicProduct::CyclicProduct(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
  for (auto m : moduli_) {
    if (m == 0) throw InvalidInput("cyclic factor must be positive");
    strides_.push_back(static_cast<Element>(order_));
    order_ *= m;
    if (order_ > (1u << 30)) throw InvalidInput("group order too large");
  }
  if (order_ <= kAddTableLimit) {
    auto table = std::make_shared<std::vector<Element>>(order_ * order_);
    for (Element x = 0; x < order_; ++x) {
      auto cx = coords(x);
      for (Element y = 0; y < order_; ++y) {
        auto cy = coords(y);
        Element r = 0;
        for (std::size_t i = 0; i < rank(); ++i) r += ((cx[i] + cy[i]) % moduli_[i]) * strides_[i];
        (*table)[x * order_ + y] = r;
      }
    }
    add_table_ = std::move(table);
  }
}

std::vector<std::uint32_t> CyclicProduct::coords(Element x) const {
  std::vector<std::uint32_t> c(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    c[i] = x % moduli_[i];
    x /= moduli_[i];
  }
  return c;
}

Element CyclicProduct::index(std::span<const std::uint32_t> c) const {
  if (c.size() != rank()) throw InvalidInput("coordinate vector has wrong length");
  Element r = 0;
  for (std::size_t i = 0; i < rank(); ++i) r += (c[i] % moduli_[i]) * strides_[i];
  return r;
}

Element CyclicProduct::add(Element x, Element y) const {
  if (add_table_) return (*add_table_)[x * order_ + y];
  Element r = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    auto m = moduli_[i];
    r += (((x % m) + (y % m)) % m) * strides_[i];
    x /= m;
    y /= m;
  }
  return r;
}

Element CyclicProduct::neg(Element x) const {
  Element r = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    auto m = moduli_[i];
    r += ((m - x % m) % m) * strides_[i];
    x /= m;
  }
  return r;
}

Element CyclicProduct::scale(std::int64_t k, Element x) const {
  Element r = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    auto m = moduli_[i];
    r += static_cast<Element>(mod_floor(k * static_cast<std::int64_t>(x % m), m)) * strides_[i];
    x /= m;
  }
  return r;
}

std::uint32_t CyclicProduct::element_order(Element x) const {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    auto m = moduli_[i];
    auto c = x % m;
    ord = lcm64(ord, m / gcd64(m, c));
    x /= m;
  }
  return static_cast<std::uint32_t>(ord);
}

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup(std::vector<std::uint32_t> invariant_factors)
    : CyclicProduct(std::move(invariant_factors)) {
  auto f = moduli();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 2) throw InvalidInput("invariant factors must be at least 2");
    if (i + 1 < f.size() && f[i + 1] % f[i] != 0)
      throw InvalidInput("invariant factors must form a divisibility chain");
  }
}

bool AbelianGroup::is_elementary() const {
  auto f = invariant_factors();
  if (f.empty()) return false;
  auto pf = factorize(f.front());
  return pf.size() == 1 && pf.front().second == 1 && f.front() == f.back();
}

std::string AbelianGroup::to_string() const {
  std::ostringstream os;
  auto f = invariant_factors();
  for (std::size_t i = f.size(); i-- > 0;) os << f[i] << (i ? "," : "");
  return os.str();
}

std::string AbelianGroup::pretty() const {
  auto f = invariant_factors();
  if (f.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = f.size(); i-- > 0;) os << "Z" << f[i] << (i ? "+" : "");
  return os.str();
}

AbelianGroup parse_group(const std::string& text) {
  std::vector<std::uint32_t> factors;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("bad group factor '" + tok + "'");
    }
    if (used != tok.size() || v == 0) throw UsageError("bad group factor '" + tok + "'");
    if (v > 1) factors.push_back(static_cast<std::uint32_t>(v));
  }
  std::sort(factors.begin(), factors.end());
  return AbelianGroup(std::move(factors));
}

std::vector<AbelianGroup> abelian_groups_of_order(std::uint32_t n) {
  if (n == 0) throw InvalidInput("group order must be positive");
  // One list of prime-power factor multisets per prime, largest first.
  std::vector<std::vector<std::vector<std::uint32_t>>> per_prime;
  for (auto [p, e] : factorize(n)) {
    std::vector<std::vector<std::uint32_t>> parts;
    std::vector<std::uint32_t> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<std::uint32_t>> powers;
    for (auto& part : parts) powers.push_back(partition_to_powers(p, part));
    per_prime.push_back(std::move(powers));
  }

  std::vector<std::vector<std::uint32_t>> results{{}};
  for (auto& choices : per_prime) {
    std::vector<std::vector<std::uint32_t>> next;
    for (auto& acc : results) {
      for (auto& powers : choices) {
        // Merge largest-with-largest: acc and powers are both descending.
        std::vector<std::uint32_t> merged(std::max(acc.size(), powers.size()), 1);
        for (std::size_t i = 0; i < merged.size(); ++i) {
          if (i < acc.size()) merged[i] *= acc[i];
          if (i < powers.size()) merged[i] *= powers[i];
        }
        next.push_back(std::move(merged));
      }
    }
    results = std::move(next);
  }
  for (auto& r : results) std::reverse(r.begin(), r.end());
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<AbelianGroup> out;
  for (auto& r : results) out.emplace_back(r);
  return out;
}

std::vector<std::uint32_t> invariant_factors_of(const CyclicProduct& ambient,
                                                std::span<const Element> members) {
  std::size_t order = members.size();
  if (order <= 1) return {};
  // For each prime p: n_j = log_p #{x : p^j x = 0}, and n_j - n_{j-1} is
  // the number of invariant factors divisible by p^j.
  std::vector<std::uint32_t> factors;
  for (auto [p, e] : factorize(static_cast<std::uint32_t>(order))) {
    std::vector<std::uint32_t> at_least;  // at_least[j-1] = #factors with p^j | d
    std::uint32_t prev = 0;
    std::uint64_t pj = 1;
    for (std::uint32_t j = 1; prev < e; ++j) {
      pj *= p;
      std::size_t killed = 0;
      for (auto x : members)
        if (pj % ambient.element_order(x) == 0) ++killed;
      std::uint32_t logk = 0;
      while (killed > 1) {
        killed /= p;
        ++logk;
      }
      at_least.push_back(logk - prev);
      prev = logk;
    }
    // at_least is non-increasing; build the per-prime contribution.
    std::size_t count = at_least.empty() ? 0 : at_least.front();
    if (factors.size() < count) factors.insert(factors.begin(), count - factors.size(), 1);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t exponent = 0;
      for (auto c : at_least)
        if (c > i) ++exponent;
      std::uint32_t q = 1;
      for (std::uint32_t k = 0; k < exponent; ++k) q *= p;
      factors[factors.size() - 1 - i] *= q;
    }
  }
  return factors;
}

SubgroupBasis subgroup_basis(const CyclicProduct& ambient, std::span<const Element> members) {
  auto factors = invariant_factors_of(ambient, members);
  AbelianGroup group(factors);
  const std::size_t k = factors.size();

  // Pick generators for the largest factors first; g extends the current
  // span S iff ord(g) = d and <g> meets S only in 0.
  std::vector<Element> gens(k, 0);
  std::vector<char> in_span(ambient.order(), 0);
  in_span[0] = 1;

  auto extend = [&](auto&& self, std::size_t slot) -> bool {
    if (slot == static_cast<std::size_t>(-1)) return true;
    const auto d = factors[slot];
    for (auto g : members) {
      if (ambient.element_order(g) != d) continue;
      bool independent = true;
      Element m = g;
      for (std::uint32_t c = 1; c < d; ++c, m = ambient.add(m, g)) {
        if (in_span[m]) {
          independent = false;
          break;
        }
      }
      if (!independent) continue;
      std::vector<Element> old_span;
      for (Element x = 0; x < ambient.order(); ++x)
        if (in_span[x]) old_span.push_back(x);
      Element mult = g;
      for (std::uint32_t c = 1; c < d; ++c, mult = ambient.add(mult, g))
        for (auto s : old_span) in_span[ambient.add(s, mult)] = 1;
      gens[slot] = g;
      if (self(self, slot - 1)) return true;
      std::fill(in_span.begin(), in_span.end(), 0);
      for (auto s : old_span) in_span[s] = 1;
    }
    return false;
  };
  if (!extend(extend, k - 1)) throw InvalidInput("member set is not a subgroup");

  std::vector<Element> embed(group.order());
  for (Element x = 0; x < group.order(); ++x) {
    auto c = group.coords(x);
    Element image = 0;
    for (std::size_t i = 0; i < k; ++i) image = ambient.add(image, ambient.scale(c[i], gens[i]));
    embed[x] = image;
  }
  return SubgroupBasis{std::move(group), std::move(gens), std::move(embed)};
}

// ---------------------------------------------------------------------------
// GroupAutomorphism

GroupAutomorphism::GroupAutomorphism(const CyclicProduct& group, std::vector<Element> generator_images)
    : images_(std::move(generator_images)) {
  if (images_.size() != group.rank()) throw InvalidInput("one image per generator is required");
  for (std::size_t i = 0; i < group.rank(); ++i) {
    basis_.push_back(group.basis(i));
    if (images_[i] >= group.order()) throw InvalidInput("generator image out of range");
    if (group.moduli()[i] % group.element_order(images_[i]) != 0)
      throw InvalidInput("generator image order does not divide the generator order");
  }
  map_.assign(group.order(), 0);
  std::vector<char> hit(group.order(), 0);
  for (Element x = 0; x < group.order(); ++x) {
    auto c = group.coords(x);
    Element y = 0;
    for (std::size_t i = 0; i < c.size(); ++i) y = group.add(y, group.scale(c[i], images_[i]));
    if (hit[y]) throw InvalidInput("homomorphism is not bijective");
    hit[y] = 1;
    map_[x] = y;
  }
}

GroupAutomorphism GroupAutomorphism::from_map(const CyclicProduct& group, std::vector<Element> element_map) {
  if (element_map.size() != group.order()) throw InvalidInput("element map has wrong size");
  std::vector<Element> images;
  for (std::size_t i = 0; i < group.rank(); ++i) images.push_back(element_map[group.basis(i)]);
  for (auto v : element_map)
    if (v >= group.order()) throw InvalidInput("element map entry out of range");
  GroupAutomorphism aut(group, std::move(images));
  if (aut.map_ != element_map) throw InvalidInput("element map is not additive");
  return aut;
}

GroupAutomorphism GroupAutomorphism::identity(const CyclicProduct& group) {
  std::vector<Element> images;
  for (std::size_t i = 0; i < group.rank(); ++i) images.push_back(group.basis(i));
  return GroupAutomorphism(group, std::move(images));
}

GroupAutomorphism GroupAutomorphism::inverse() const {
  std::vector<Element> inv(map_.size());
  for (Element x = 0; x < map_.size(); ++x) inv[map_[x]] = x;
  std::vector<Element> images;
  for (auto b : basis_) images.push_back(inv[b]);
  return GroupAutomorphism(basis_, std::move(images), std::move(inv));
}

GroupAutomorphism GroupAutomorphism::after(const GroupAutomorphism& other) const {
  std::vector<Element> composed(map_.size());
  for (Element x = 0; x < map_.size(); ++x) composed[x] = map_[other.map_[x]];
  std::vector<Element> images;
  for (auto b : basis_) images.push_back(composed[b]);
  return GroupAutomorphism(basis_, std::move(images), std::move(composed));
}

std::vector<std::size_t> GroupAutomorphism::cycle_type() const {
  std::vector<char> seen(map_.size(), 0);
  std::vector<std::size_t> lengths;
  for (Element x = 0; x < map_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Element y = x; !seen[y]; y = map_[y]) {
      seen[y] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<GroupAutomorphism> enumerate_automorphisms(const CyclicProduct& group) {
  const std::size_t k = group.rank();
  // An automorphism preserves element orders, so generator i can only go
  // to elements of order exactly m_i.
  std::vector<std::vector<Element>> candidates(k);
  for (Element x = 0; x < group.order(); ++x)
    for (std::size_t i = 0; i < k; ++i)
      if (group.element_order(x) == group.moduli()[i]) candidates[i].push_back(x);

  std::vector<GroupAutomorphism> out;
  std::vector<Element> images(k);
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      try {
        out.emplace_back(group, images);
      } catch (const InvalidInput&) {
      }
      return;
    }
    for (auto c : candidates[i]) {
      images[i] = c;
      self(self, i + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(std::span<const GroupAutomorphism> auts) {
  std::map<std::vector<Element>, std::size_t> position;
  for (std::size_t i = 0; i < auts.size(); ++i) {
    auto img = auts[i].generator_images();
    position.emplace(std::vector<Element>(img.begin(), img.end()), i);
  }
  auto locate = [&](const GroupAutomorphism& g) {
    auto img = g.generator_images();
    auto it = position.find(std::vector<Element>(img.begin(), img.end()));
    if (it == position.end()) throw InvalidInput("automorphism list is not closed under composition");
    return it->second;
  };

  // Conjugating by a generating set reaches the whole class.
  std::vector<GroupAutomorphism> gens;
  std::vector<char> in_subgroup(auts.size(), 0);
  std::size_t subgroup_size = 0;
  for (std::size_t i = 0; i < auts.size() && subgroup_size < auts.size(); ++i) {
    if (in_subgroup[i]) continue;
    gens.push_back(auts[i]);
    // Rebuild the closure of <gens> by right multiplication.
    std::fill(in_subgroup.begin(), in_subgroup.end(), 0);
    std::vector<std::size_t> frontier;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      auto p = locate(gens[j]);
      if (!in_subgroup[p]) {
        in_subgroup[p] = 1;
        frontier.push_back(p);
      }
    }
    subgroup_size = frontier.size();
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (auto& g : gens) {
        auto p = locate(auts[cur].after(g));
        if (!in_subgroup[p]) {
          in_subgroup[p] = 1;
          ++subgroup_size;
          frontier.push_back(p);
        }
      }
    }
  }
  std::vector<GroupAutomorphism> gen_inverses;
  for (auto& g : gens) gen_inverses.push_back(g.inverse());

  std::vector<std::size_t> class_of(auts.size(), static_cast<std::size_t>(-1));
  std::vector<ConjugacyClass> classes;
  for (std::size_t i = 0; i < auts.size(); ++i) {
    if (class_of[i] != static_cast<std::size_t>(-1)) continue;
    ConjugacyClass cls{{i}, i};
    class_of[i] = classes.size();
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
      const auto& g = auts[cls.members[head]];
      for (std::size_t j = 0; j < gens.size(); ++j) {
        auto p = locate(gen_inverses[j].after(g).after(gens[j]));
        if (class_of[p] == static_cast<std::size_t>(-1)) {
          class_of[p] = classes.size();
          cls.members.push_back(p);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = *std::min_element(cls.members.begin(), cls.members.end(),
                                           [&](auto a, auto b) { return auts[a] < auts[b]; });
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace alexq
