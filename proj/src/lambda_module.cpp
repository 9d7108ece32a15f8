#include "alexq/lambda_module.hpp"

#include <algorithm>
#include <sstream>

#include "alexq/error.hpp"

namespace alexq {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::uint32_t modulus, std::vector<std::int64_t> coeffs) : modulus_(modulus) {
  if (modulus < 2) throw InvalidInput("polynomial modulus must be at least 2");
  if (coeffs.size() < 2) throw InvalidInput("polynomial must have degree at least 1");
  for (auto c : coeffs) coeffs_.push_back(static_cast<std::uint32_t>(mod_floor(c, modulus)));
  if (coeffs_.back() != 1) throw InvalidInput("polynomial must be monic");
  if (gcd64(coeffs_.front(), modulus) != 1)
    throw InvalidInput("constant term must be a unit mod " + std::to_string(modulus));
}

std::uint32_t Polynomial::evaluate(std::int64_t x) const {
  std::int64_t acc = 0;
  const std::int64_t xm = mod_floor(x, modulus_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = (acc * xm + coeffs_[i]) % modulus_;
  return static_cast<std::uint32_t>(acc);
}

bool Polynomial::divides(const Polynomial& other) const {
  if (other.modulus_ != modulus_ || other.degree() < degree()) return false;
  std::vector<std::int64_t> rem(other.coeffs_.begin(), other.coeffs_.end());
  const std::size_t d = degree();
  for (std::size_t top = rem.size() - 1; top >= d; --top) {
    const std::int64_t lead = rem[top];
    if (lead != 0)
      for (std::size_t i = 0; i <= d; ++i) {
        auto& r = rem[top - d + i];
        r = mod_floor(r - lead * coeffs_[i], modulus_);
      }
    if (top == d) break;
  }
  return std::all_of(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(d), [](auto c) { return c == 0; });
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const auto c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << 't';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

std::vector<Polynomial> monic_polynomials(std::uint32_t modulus, std::size_t degree) {
  std::vector<Polynomial> out;
  std::vector<std::int64_t> c(degree + 1, 0);
  c[degree] = 1;
  while (true) {
    if (gcd64(c[0], modulus) == 1) out.emplace_back(modulus, c);
    std::size_t i = 0;
    while (i < degree && ++c[i] == modulus) c[i++] = 0;
    if (i == degree) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// ModuleDescriptor

ModuleDescriptor ModuleDescriptor::linear(std::uint32_t n, std::uint32_t a) {
  ModuleDescriptor d;
  d.kind_ = Kind::linear;
  d.n_ = n;
  d.a_ = a % n;
  return d;
}

ModuleDescriptor ModuleDescriptor::poly(Polynomial h) {
  ModuleDescriptor d;
  d.kind_ = Kind::poly;
  d.poly_ = std::move(h);
  return d;
}

ModuleDescriptor ModuleDescriptor::sum(std::vector<ModuleDescriptor> parts) {
  std::vector<ModuleDescriptor> flat;
  for (auto& p : parts) {
    if (p.kind_ == Kind::sum)
      flat.insert(flat.end(), p.parts_.begin(), p.parts_.end());
    else
      flat.push_back(std::move(p));
  }
  if (flat.size() == 1) return std::move(flat.front());
  ModuleDescriptor d;
  d.kind_ = Kind::sum;
  d.parts_ = std::move(flat);
  return d;
}

ModuleDescriptor ModuleDescriptor::pair(const AbelianGroup& group, const GroupAutomorphism& t) {
  ModuleDescriptor d;
  d.kind_ = Kind::pair;
  auto f = group.invariant_factors();
  d.pair_factors_.assign(f.begin(), f.end());
  for (auto img : t.generator_images()) d.pair_images_.push_back(group.coords(img));
  return d;
}

namespace {

template <typename Range>
std::string join(const Range& r, const char* sep) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : r) {
    if (!first) os << sep;
    first = false;
    os << v;
  }
  return os.str();
}

}  // namespace

std::string ModuleDescriptor::spec() const {
  switch (kind_) {
    case Kind::linear:
      return "linear:" + std::to_string(n_) + ":" + std::to_string(a_);
    case Kind::poly:
      return "poly:" + std::to_string(poly_->modulus()) + ":" + join(poly_->coeffs(), ",");
    case Kind::sum: {
      std::vector<std::string> specs;
      for (auto& p : parts_) specs.push_back(p.spec());
      return "sum:" + join(specs, "+");
    }
    case Kind::pair: {
      std::ostringstream os;
      os << "pair:{\"invariant_factors\":[" << join(pair_factors_, ",") << "],\"t_generator_images\":[";
      for (std::size_t i = 0; i < pair_images_.size(); ++i)
        os << (i ? "," : "") << "[" << join(pair_images_[i], ",") << "]";
      os << "]}";
      return os.str();
    }
  }
  return {};
}

std::string ModuleDescriptor::pretty() const {
  switch (kind_) {
    case Kind::linear:
      return "Lambda_" + std::to_string(n_) + "/(t-" + std::to_string(a_) + ")";
    case Kind::poly:
      return "Lambda_" + std::to_string(poly_->modulus()) + "/(" + poly_->to_string() + ")";
    case Kind::sum: {
      if (parts_.empty()) return "0";
      std::vector<std::string> pieces;
      for (std::size_t i = 0; i < parts_.size();) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        pieces.push_back(j - i == 1 ? parts_[i].pretty()
                                    : "(" + parts_[i].pretty() + ")^" + std::to_string(j - i));
        i = j;
      }
      return join(pieces, " + ");
    }
    case Kind::pair: {
      // Largest factor first, matching AbelianGroup::pretty.
      std::ostringstream os;
      os << "(" << AbelianGroup(pair_factors_).pretty() << ", t:";
      const std::size_t k = pair_factors_.size();
      for (std::size_t i = k; i-- > 0;) {
        std::vector<std::uint32_t> unit(k, 0), img(pair_images_[i].rbegin(), pair_images_[i].rend());
        unit[k - 1 - i] = 1;
        os << " (" << join(unit, ",") << ")->(" << join(img, ",") << ")";
      }
      os << ")";
      return os.str();
    }
  }
  return {};
}

std::vector<std::int64_t> ModuleDescriptor::key() const {
  std::vector<std::int64_t> k{static_cast<std::int64_t>(kind_)};
  switch (kind_) {
    case Kind::linear:
      k.insert(k.end(), {n_, a_});
      break;
    case Kind::poly:
      k.push_back(poly_->modulus());
      k.push_back(static_cast<std::int64_t>(poly_->degree()));
      for (std::size_t i = poly_->coeffs().size(); i-- > 0;) k.push_back(poly_->coeffs()[i]);
      break;
    case Kind::sum:
      k.push_back(static_cast<std::int64_t>(parts_.size()));
      for (auto& p : parts_) {
        auto sub = p.key();
        k.push_back(static_cast<std::int64_t>(sub.size()));
        k.insert(k.end(), sub.begin(), sub.end());
      }
      break;
    case Kind::pair:
      k.insert(k.end(), pair_factors_.begin(), pair_factors_.end());
      for (auto& img : pair_images_) k.insert(k.end(), img.begin(), img.end());
      break;
  }
  return k;
}

bool operator<(const ModuleDescriptor& a, const ModuleDescriptor& b) { return a.key() < b.key(); }
bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b) { return a.key() == b.key(); }

// ---------------------------------------------------------------------------
// LambdaModule

LambdaModule::LambdaModule(AbelianGroup group, GroupAutomorphism t_action,
                           std::optional<ModuleDescriptor> provenance)
    : group_(std::move(group)), t_(std::move(t_action)), provenance_(std::move(provenance)) {
  if (t_.domain_order() != group_.order()) throw InvalidInput("t-action does not match the group");
  t_inv_.assign(group_.order(), 0);
  for (Element x = 0; x < group_.order(); ++x) t_inv_[t_(x)] = x;
}

std::string LambdaModule::name() const {
  if (provenance_) return provenance_->pretty();
  return ModuleDescriptor::pair(group_, t_).pretty();
}

LambdaModule module_from_pair(const AbelianGroup& group, const GroupAutomorphism& phi) {
  if (phi.domain_order() != group.order()) throw InvalidInput("automorphism does not match the group");
  GroupAutomorphism checked(group, std::vector<Element>(phi.generator_images().begin(), phi.generator_images().end()));
  if (!std::equal(checked.element_map().begin(), checked.element_map().end(), phi.element_map().begin()))
    throw InvalidInput("automorphism element map is not additive");
  return LambdaModule(group, checked, ModuleDescriptor::pair(group, checked));
}

LambdaModule module_from_pair(const AbelianGroup& group,
                              const std::vector<std::vector<std::uint32_t>>& t_generator_images) {
  if (t_generator_images.size() != group.rank())
    throw InvalidInput("expected one generator image per invariant factor");
  std::vector<Element> images;
  for (auto& c : t_generator_images) {
    if (c.size() != group.rank()) throw InvalidInput("generator image has wrong number of coordinates");
    images.push_back(group.index(c));
  }
  GroupAutomorphism t(group, std::move(images));
  return LambdaModule(group, t, ModuleDescriptor::pair(group, t));
}

LambdaModule module_from_linear(std::uint32_t n, std::int64_t a) {
  if (n < 2) throw InvalidInput("linear modulus must be at least 2");
  const auto ar = static_cast<std::uint32_t>(mod_floor(a, n));
  if (gcd64(ar, n) != 1)
    throw InvalidInput("gcd(" + std::to_string(n) + ", " + std::to_string(a) + ") != 1");
  AbelianGroup group({n});
  GroupAutomorphism t(group, {ar});
  return LambdaModule(group, t, ModuleDescriptor::linear(n, ar));
}

LambdaModule module_from_polynomial(const Polynomial& h) {
  const std::size_t d = h.degree();
  const std::uint32_t n = h.modulus();
  AbelianGroup group(std::vector<std::uint32_t>(d, n));
  std::vector<Element> images;
  for (std::size_t i = 0; i + 1 < d; ++i) images.push_back(group.basis(i + 1));
  std::vector<std::uint32_t> last(d);
  for (std::size_t j = 0; j < d; ++j) last[j] = static_cast<std::uint32_t>(mod_floor(-static_cast<std::int64_t>(h.coeffs()[j]), n));
  images.push_back(group.index(last));
  GroupAutomorphism t(group, std::move(images));
  return LambdaModule(group, t, ModuleDescriptor::poly(h));
}

LambdaModule direct_sum(const LambdaModule& m1, const LambdaModule& m2) {
  std::optional<ModuleDescriptor> prov;
  if (m1.provenance() && m2.provenance()) prov = ModuleDescriptor::sum({*m1.provenance(), *m2.provenance()});
  if (m2.order() == 1) {
    LambdaModule out = m1;
    out.set_provenance(prov ? prov : m1.provenance());
    return out;
  }
  if (m1.order() == 1) {
    LambdaModule out = m2;
    out.set_provenance(prov ? prov : m2.provenance());
    return out;
  }

  // Raw product with m1's coordinates least significant: id = x1 + |m1| x2.
  std::vector<std::uint32_t> raw_moduli(m1.group().moduli().begin(), m1.group().moduli().end());
  raw_moduli.insert(raw_moduli.end(), m2.group().moduli().begin(), m2.group().moduli().end());
  CyclicProduct raw(raw_moduli);
  const auto n1 = static_cast<Element>(m1.order());
  std::vector<Element> all(raw.order());
  for (Element x = 0; x < raw.order(); ++x) all[x] = x;
  auto basis = subgroup_basis(raw, all);

  std::vector<Element> locate(raw.order());
  for (Element c = 0; c < basis.embed.size(); ++c) locate[basis.embed[c]] = c;
  std::vector<Element> tmap(raw.order());
  for (Element c = 0; c < basis.embed.size(); ++c) {
    const Element x = basis.embed[c];
    const Element tx = m1.t(x % n1) + n1 * m2.t(x / n1);
    tmap[c] = locate[tx];
  }
  auto t = GroupAutomorphism::from_map(basis.group, std::move(tmap));
  return LambdaModule(basis.group, std::move(t), std::move(prov));
}

LambdaModule build_module(const ModuleDescriptor& desc) {
  switch (desc.kind()) {
    case ModuleDescriptor::Kind::linear:
      return module_from_linear(desc.linear_n(), desc.linear_a());
    case ModuleDescriptor::Kind::poly:
      return module_from_polynomial(*desc.polynomial());
    case ModuleDescriptor::Kind::sum: {
      LambdaModule acc(AbelianGroup{}, GroupAutomorphism::identity(AbelianGroup{}));
      for (auto& p : desc.parts()) acc = direct_sum(acc, build_module(p));
      acc.set_provenance(desc);
      return acc;
    }
    case ModuleDescriptor::Kind::pair: {
      AbelianGroup group(std::vector<std::uint32_t>(desc.pair_factors().begin(), desc.pair_factors().end()));
      return module_from_pair(group, desc.pair_images());
    }
  }
  throw InvalidInput("unknown descriptor kind");
}

// ---------------------------------------------------------------------------
// Submodules

Submodule restrict_module(const LambdaModule& m, std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto basis = subgroup_basis(m.group(), members);
  if (basis.embed.size() != members.size()) throw InvalidInput("member set is not a subgroup");
  std::vector<Element> locate(m.order(), kNoElement);
  for (Element c = 0; c < basis.embed.size(); ++c) locate[basis.embed[c]] = c;
  std::vector<Element> tmap(basis.embed.size());
  for (Element c = 0; c < basis.embed.size(); ++c) {
    const Element image = locate[m.t(basis.embed[c])];
    if (image == kNoElement) throw InvalidInput("member set is not t-stable");
    tmap[c] = image;
  }
  auto t = GroupAutomorphism::from_map(basis.group, std::move(tmap));
  return Submodule{std::move(members), LambdaModule(basis.group, std::move(t)), std::move(basis.embed),
                   std::move(locate)};
}

namespace {

std::vector<Element> image_members(const LambdaModule& m, int power) {
  std::vector<char> hit(m.order(), 0);
  for (Element x = 0; x < m.order(); ++x) {
    Element y = x;
    for (int i = 0; i < power; ++i) y = m.one_minus_t(y);
    hit[y] = 1;
  }
  std::vector<Element> out;
  for (Element x = 0; x < m.order(); ++x)
    if (hit[x]) out.push_back(x);
  return out;
}

std::vector<std::size_t> orbit_length_per_element(const LambdaModule& m) {
  std::vector<std::size_t> len(m.order(), 0);
  for (Element x = 0; x < m.order(); ++x) {
    if (len[x]) continue;
    std::vector<Element> cycle;
    for (Element y = x; cycle.empty() || y != x; y = m.t(y)) cycle.push_back(y);
    for (auto y : cycle) len[y] = cycle.size();
  }
  return len;
}

}  // namespace

Submodule image_one_minus_t(const LambdaModule& m, int power) {
  if (power != 1 && power != 2) throw InvalidInput("power must be 1 or 2");
  return restrict_module(m, image_members(m, power));
}

IsoCertificate iso_certificate(const LambdaModule& m) {
  IsoCertificate c;
  auto f = m.group().invariant_factors();
  c.group_factors.assign(f.begin(), f.end());
  auto image = image_members(m, 1);
  c.image_factors = invariant_factors_of(m.group(), image);
  c.image2_order = image_members(m, 2).size();
  for (Element x = 0; x < m.order(); ++x)
    if (m.t(x) == x) ++c.fixed_points;
  c.t_orbit_sizes = m.t_action().cycle_type();
  return c;
}

bool is_lambda_isomorphism(const LambdaModule& m, const LambdaModule& n, std::span<const Element> map) {
  if (m.order() != n.order() || map.size() != m.order()) return false;
  std::vector<char> hit(n.order(), 0);
  for (auto v : map) {
    if (v >= n.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (Element x = 0; x < m.order(); ++x) {
    if (map[m.t(x)] != n.t(map[x])) return false;
    for (Element y = 0; y < m.order(); ++y)
      if (map[m.group().add(x, y)] != n.group().add(map[x], map[y])) return false;
  }
  return true;
}

std::optional<std::vector<Element>> lambda_iso(const LambdaModule& m, const LambdaModule& n) {
  if (m.order() != n.order()) return std::nullopt;
  if (iso_certificate(m) != iso_certificate(n)) return std::nullopt;

  const auto& gm = m.group();
  const auto& gn = n.group();
  const std::size_t k = gm.rank();
  const auto len_m = orbit_length_per_element(m);
  const auto len_n = orbit_length_per_element(n);

  // t(e_r) in generator coordinates; check generator r once every
  // generator its image depends on has been assigned.
  std::vector<std::vector<std::uint32_t>> t_coords(k);
  std::vector<std::vector<std::size_t>> check_at(k);
  for (std::size_t r = 0; r < k; ++r) {
    t_coords[r] = gm.coords(m.t(gm.basis(r)));
    std::size_t last = r;
    for (std::size_t j = 0; j < k; ++j)
      if (t_coords[r][j] != 0) last = std::max(last, j);
    check_at[last].push_back(r);
  }

  std::vector<std::vector<Element>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Element e = gm.basis(i);
    for (Element y = 0; y < gn.order(); ++y)
      if (gn.element_order(y) == gm.moduli()[i] && len_n[y] == len_m[e]) candidates[i].push_back(y);
  }

  std::vector<Element> images(k);
  std::vector<char> in_span(gn.order(), 0);
  in_span[0] = 1;
  std::optional<std::vector<Element>> result;

  auto recurse = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) {
      std::vector<Element> map(gm.order());
      for (Element x = 0; x < gm.order(); ++x) {
        auto c = gm.coords(x);
        Element y = 0;
        for (std::size_t j = 0; j < k; ++j) y = gn.add(y, gn.scale(c[j], images[j]));
        map[x] = y;
      }
      if (!is_lambda_isomorphism(m, n, map)) return false;
      result = std::move(map);
      return true;
    }
    const std::uint32_t d = gm.moduli()[i];
    for (auto y : candidates[i]) {
      bool independent = true;
      Element mult = y;
      for (std::uint32_t c = 1; c < d; ++c, mult = gn.add(mult, y))
        if (in_span[mult]) {
          independent = false;
          break;
        }
      if (!independent) continue;
      images[i] = y;
      bool ok = true;
      for (auto r : check_at[i]) {
        Element expect = 0;
        for (std::size_t j = 0; j < k; ++j) expect = gn.add(expect, gn.scale(t_coords[r][j], images[j]));
        if (n.t(images[r]) != expect) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<Element> old_span;
      for (Element x = 0; x < gn.order(); ++x)
        if (in_span[x]) old_span.push_back(x);
      mult = y;
      for (std::uint32_t c = 1; c < d; ++c, mult = gn.add(mult, y))
        for (auto s : old_span) in_span[gn.add(s, mult)] = 1;
      if (self(self, i + 1)) return true;
      std::fill(in_span.begin(), in_span.end(), 0);
      for (auto s : old_span) in_span[s] = 1;
    }
    return false;
  };
  recurse(recurse, 0);
  return result;
}

std::vector<ModuleDescriptor> chain_quotients(std::uint32_t p, std::size_t degree) {
  std::vector<std::vector<Polynomial>> by_degree(degree + 1);
  for (std::size_t d = 1; d <= degree; ++d) by_degree[d] = monic_polynomials(p, d);

  std::vector<ModuleDescriptor> out;
  std::vector<Polynomial> chain;
  auto recurse = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      std::vector<ModuleDescriptor> parts;
      for (auto& h : chain) parts.push_back(ModuleDescriptor::poly(h));
      out.push_back(ModuleDescriptor::sum(std::move(parts)));
      return;
    }
    const std::size_t min_deg = chain.empty() ? 1 : chain.back().degree();
    for (std::size_t d = min_deg; d <= remaining; ++d)
      for (auto& h : by_degree[d]) {
        if (!chain.empty() && !chain.back().divides(h)) continue;
        chain.push_back(h);
        self(self, remaining - d);
        chain.pop_back();
      }
  };
  recurse(recurse, degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ModuleDescriptor> identify_as_quotient(const LambdaModule& m) {
  if (m.order() == 1) return ModuleDescriptor::sum({});
  const auto& g = m.group();
  if (g.is_elementary()) {
    const auto p = g.invariant_factors().front();
    const auto cert = iso_certificate(m);
    for (auto& cand : chain_quotients(p, g.rank())) {
      auto built = build_module(cand);
      if (iso_certificate(built) != cert) continue;
      if (lambda_iso(built, m)) return cand;
    }
    return std::nullopt;
  }
  if (g.is_cyclic()) {
    const auto n = g.invariant_factors().front();
    return ModuleDescriptor::linear(n, m.t(1));
  }
  return std::nullopt;
}

}  // namespace alexq
