#include "alexq/quandle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "alexq/error.hpp"

namespace alexq {

QuandleTable::QuandleTable(std::size_t order, std::vector<Element> cells)
    : order_(order), cells_(std::move(cells)) {
  if (cells_.size() != order_ * order_) throw InvalidInput("table is not square");
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] >= order_) {
      bad_cell_ = {i / order_, i % order_};
      break;
    }
}

QuandleTable QuandleTable::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Element> cells;
  cells.reserve(n * n);
  std::optional<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n)
      throw InvalidInput("row " + std::to_string(x) + " has " + std::to_string(rows[x].size()) +
                         " entries, expected " + std::to_string(n));
    for (std::size_t y = 0; y < n; ++y) {
      const auto v = rows[x][y];
      if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
        if (!bad) bad = {x, y};
        cells.push_back(0);
      } else {
        cells.push_back(static_cast<Element>(v));
      }
    }
  }
  QuandleTable t(n, std::move(cells));
  t.bad_cell_ = bad;
  return t;
}

std::vector<std::vector<Element>> QuandleTable::rows() const {
  std::vector<std::vector<Element>> out(order_);
  for (std::size_t x = 0; x < order_; ++x)
    out[x].assign(cells_.begin() + static_cast<std::ptrdiff_t>(x * order_),
                  cells_.begin() + static_cast<std::ptrdiff_t>((x + 1) * order_));
  return out;
}

QuandleTable alexander_table(const LambdaModule& m) {
  const std::size_t n = m.order();
  std::vector<Element> cells(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) cells[x * n + y] = m.quandle_op(x, y);
  return QuandleTable(n, std::move(cells));
}

std::string AxiomReport::describe() const {
  std::ostringstream os;
  const auto& w = witness;
  switch (status) {
    case AxiomStatus::ok:
      return "all quandle axioms hold";
    case AxiomStatus::malformed:
      os << "malformed table: entry at row " << w[0] << ", column " << w[1] << " is out of range";
      break;
    case AxiomStatus::right_bijective:
      os << "axiom (i) fails: " << w[0] << "^" << w[2] << " = " << w[1] << "^" << w[2]
         << " (witness " << w[0] << " " << w[1] << " " << w[2] << ")";
      break;
    case AxiomStatus::distributive:
      os << "axiom (ii) fails: (a^b)^c != (a^c)^(b^c) (witness " << w[0] << " " << w[1] << " " << w[2] << ")";
      break;
    case AxiomStatus::idempotent:
      os << "axiom (iii) fails: a^a != a (witness " << w[0] << " " << w[1] << " " << w[2] << ")";
      break;
  }
  return os.str();
}

AxiomReport check_axioms(const QuandleTable& t) {
  if (auto bad = t.bad_cell()) return {AxiomStatus::malformed, {bad->first, bad->second, 0}};
  const std::size_t n = t.order();
  for (Element x1 = 0; x1 < n; ++x1)
    for (Element x2 = x1 + 1; x2 < n; ++x2)
      for (Element y = 0; y < n; ++y)
        if (t.at(x1, y) == t.at(x2, y)) return {AxiomStatus::right_bijective, {x1, x2, y}};
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (t.at(t.at(a, b), c) != t.at(t.at(a, c), t.at(b, c))) return {AxiomStatus::distributive, {a, b, c}};
  for (Element a = 0; a < n; ++a)
    if (t.at(a, a) != a) return {AxiomStatus::idempotent, {a, a, a}};
  return {};
}

namespace {

void require_well_formed(const QuandleTable& t) {
  if (t.malformed()) throw InvalidInput("malformed table: entry out of range");
}

Element find_root(std::vector<Element>& parent, Element x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::vector<std::vector<Element>> orbits(const QuandleTable& t) {
  require_well_formed(t);
  const std::size_t n = t.order();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      auto a = find_root(parent, x), b = find_root(parent, t.at(x, y));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<Element, std::vector<Element>> groups;
  for (Element x = 0; x < n; ++x) groups[find_root(parent, x)].push_back(x);
  std::vector<std::vector<Element>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

bool is_connected(const QuandleTable& t) { return orbits(t).size() <= 1; }

QuandleTable dual(const QuandleTable& t) {
  require_well_formed(t);
  const std::size_t n = t.order();
  std::vector<Element> cells(n * n, kNoElement);
  for (Element y = 0; y < n; ++y)
    for (Element c = 0; c < n; ++c) {
      auto& slot = cells[t.at(c, y) * n + y];
      if (slot != kNoElement) throw InvalidInput("column is not a bijection; dual undefined");
      slot = c;
    }
  return QuandleTable(n, std::move(cells));
}

std::string to_string(IsoMethod m) {
  switch (m) {
    case IsoMethod::theorem1_constructive:
      return "theorem1-constructive";
    case IsoMethod::brute_force:
      return "brute-force";
    case IsoMethod::closed_form_linear:
      return "closed-form-linear";
  }
  return {};
}

bool is_quandle_isomorphism(const QuandleTable& a, const QuandleTable& b, std::span<const Element> map) {
  if (a.order() != b.order() || map.size() != a.order()) return false;
  std::vector<char> hit(b.order(), 0);
  for (auto v : map) {
    if (v >= b.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (Element x = 0; x < a.order(); ++x)
    for (Element y = 0; y < a.order(); ++y)
      if (map[a.at(x, y)] != b.at(map[x], map[y])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Brute-force isomorphism

namespace {

// Isomorphism-invariant description of one element.
std::vector<std::size_t> element_profile(const QuandleTable& t, const std::vector<std::size_t>& orbit_size, Element x) {
  const std::size_t n = t.order();
  std::vector<std::size_t> p{orbit_size[x]};
  std::size_t column_fixed = 0, row_fixed = 0;
  for (Element z = 0; z < n; ++z) {
    if (t.at(z, x) == z) ++column_fixed;
    if (t.at(x, z) == x) ++row_fixed;
  }
  p.push_back(column_fixed);
  p.push_back(row_fixed);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> cycles;
  for (Element z = 0; z < n; ++z) {
    if (seen[z]) continue;
    std::size_t len = 0;
    for (Element w = z; !seen[w]; w = t.at(w, x)) {
      seen[w] = 1;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end());
  p.insert(p.end(), cycles.begin(), cycles.end());
  return p;
}

std::vector<std::size_t> orbit_sizes(const QuandleTable& t) {
  std::vector<std::size_t> size(t.order());
  for (auto& orb : orbits(t))
    for (auto x : orb) size[x] = orb.size();
  return size;
}

class BruteSearch {
 public:
  BruteSearch(const QuandleTable& a, const QuandleTable& b) : a_(a), b_(b), n_(a.order()) {}

  std::optional<std::vector<Element>> run() {
    if (a_.order() != b_.order()) return std::nullopt;
    if (n_ == 0) return std::vector<Element>{};
    const auto sa = orbit_sizes(a_), sb = orbit_sizes(b_);
    std::map<std::vector<std::size_t>, std::size_t> ids;
    auto intern = [&](std::vector<std::size_t> p) { return ids.emplace(std::move(p), ids.size()).first->second; };
    class_a_.resize(n_);
    class_b_.resize(n_);
    for (Element x = 0; x < n_; ++x) class_a_[x] = intern(element_profile(a_, sa, x));
    for (Element x = 0; x < n_; ++x) class_b_[x] = intern(element_profile(b_, sb, x));
    std::vector<std::size_t> count_a(ids.size(), 0), count_b(ids.size(), 0);
    for (Element x = 0; x < n_; ++x) {
      ++count_a[class_a_[x]];
      ++count_b[class_b_[x]];
    }
    if (count_a != count_b) return std::nullopt;
    class_count_ = std::move(count_a);

    dual_a_ = dual(a_);
    dual_b_ = dual(b_);
    f_.assign(n_, kNoElement);
    g_.assign(n_, kNoElement);
    if (!search()) return std::nullopt;
    return f_;
  }

 private:
  bool assign(Element x, Element v) {
    std::vector<std::pair<Element, Element>> queue{{x, v}};
    while (!queue.empty()) {
      auto [p, q] = queue.back();
      queue.pop_back();
      if (f_[p] == q) continue;
      if (f_[p] != kNoElement || g_[q] != kNoElement || class_a_[p] != class_b_[q]) return false;
      f_[p] = q;
      g_[q] = p;
      trail_.push_back(p);
      for (auto c : trail_) {
        const Element fc = f_[c];
        queue.emplace_back(a_.at(p, c), b_.at(q, fc));
        queue.emplace_back(a_.at(c, p), b_.at(fc, q));
        queue.emplace_back(dual_a_.at(p, c), dual_b_.at(q, fc));
        queue.emplace_back(dual_a_.at(c, p), dual_b_.at(fc, q));
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto p = trail_.back();
      trail_.pop_back();
      g_[f_[p]] = kNoElement;
      f_[p] = kNoElement;
    }
  }

  bool search() {
    if (trail_.size() == n_) return true;
    // Branch on the unassigned element whose profile class is rarest.
    Element pick = kNoElement;
    for (Element x = 0; x < n_; ++x)
      if (f_[x] == kNoElement && (pick == kNoElement || class_count_[class_a_[x]] < class_count_[class_a_[pick]]))
        pick = x;
    for (Element v = 0; v < n_; ++v) {
      if (g_[v] != kNoElement || class_b_[v] != class_a_[pick]) continue;
      const auto mark = trail_.size();
      if (assign(pick, v) && search()) return true;
      undo(mark);
    }
    return false;
  }

  const QuandleTable& a_;
  const QuandleTable& b_;
  std::size_t n_;
  QuandleTable dual_a_, dual_b_;
  std::vector<std::size_t> class_a_, class_b_, class_count_;
  std::vector<Element> f_, g_, trail_;
};

}  // namespace

std::optional<IsoWitness> brute_iso(const QuandleTable& a, const QuandleTable& b) {
  require_well_formed(a);
  require_well_formed(b);
  auto map = BruteSearch(a, b).run();
  if (!map) return std::nullopt;
  if (!is_quandle_isomorphism(a, b, *map)) throw std::logic_error("brute_iso produced an invalid witness");
  return IsoWitness{std::move(*map), IsoMethod::brute_force};
}

// ---------------------------------------------------------------------------
// Submodule criterion

bool theorem1_iso(const LambdaModule& m, const LambdaModule& n) {
  if (m.order() != n.order()) return false;
  return lambda_iso(image_one_minus_t(m).module, image_one_minus_t(n).module).has_value();
}

namespace {

// rep[x] = least element of the coset x + sub.
std::vector<Element> coset_representatives(const CyclicProduct& g, const std::vector<Element>& sub) {
  std::vector<Element> rep(g.order(), kNoElement);
  for (Element x = 0; x < g.order(); ++x) {
    if (rep[x] != kNoElement) continue;
    for (auto w : sub) rep[g.add(x, w)] = x;
  }
  return rep;
}

}  // namespace

IsoWitness construct_quandle_iso(const LambdaModule& m, const LambdaModule& n, std::span<const Element> h) {
  if (m.order() != n.order()) throw InvalidInput("modules have different orders");
  const auto img_m = image_one_minus_t(m, 1), img_n = image_one_minus_t(n, 1);
  if (!is_lambda_isomorphism(img_m.module, img_n.module, h))
    throw InvalidInput("h is not a Lambda-isomorphism between the (1-t) images");
  const auto img2_m = image_one_minus_t(m, 2), img2_n = image_one_minus_t(n, 2);
  const auto& gm = m.group();
  const auto& gn = n.group();

  // h on parent ids of (1-t)M.
  auto h_parent = [&](Element w) { return img_n.embed[h[img_m.locate[w]]]; };

  const auto rep_m = coset_representatives(gm, img_m.members);   // M / M'
  const auto rep_n = coset_representatives(gn, img_n.members);   // N / N'
  const auto cls2_n = coset_representatives(gn, img2_n.members);  // classes mod N''

  std::vector<Element> reps_m, reps_n;
  for (Element x = 0; x < gm.order(); ++x)
    if (rep_m[x] == x) reps_m.push_back(x);
  for (Element y = 0; y < gn.order(); ++y)
    if (rep_n[y] == y) reps_n.push_back(y);

  // Preimages under (1-t)^2, for the correction step.
  std::vector<Element> sq_preimage(gn.order(), kNoElement);
  for (Element xi = 0; xi < gn.order(); ++xi) {
    const Element z = n.one_minus_t(n.one_minus_t(xi));
    if (sq_preimage[z] == kNoElement) sq_preimage[z] = xi;
  }

  std::vector<char> used(gn.order(), 0);
  std::vector<Element> k_of(gm.order(), kNoElement);
  for (auto alpha : reps_m) {
    // k(alpha) must lie in a coset b + N' with (1-t)b == h((1-t)alpha) mod N''.
    const Element target = h_parent(m.one_minus_t(alpha));
    const Element target_class = cls2_n[target];
    Element chosen = kNoElement;
    for (auto b : reps_n) {
      if (used[b] || cls2_n[n.one_minus_t(b)] != target_class) continue;
      chosen = b;
      break;
    }
    if (chosen == kNoElement) throw std::logic_error("no compatible coset representative");
    used[chosen] = 1;
    // Correct by (1-t)xi so that (1-t)k(alpha) = h((1-t)alpha) exactly.
    const Element delta = gn.sub(target, n.one_minus_t(chosen));
    const Element xi = sq_preimage[delta];
    if (xi == kNoElement) throw std::logic_error("correction term outside (1-t)^2 N");
    k_of[alpha] = gn.add(chosen, n.one_minus_t(xi));
  }

  std::vector<Element> f(gm.order());
  for (Element x = 0; x < gm.order(); ++x) {
    const Element alpha = rep_m[x];
    f[x] = gn.add(k_of[alpha], h_parent(gm.sub(x, alpha)));
  }
  if (!is_quandle_isomorphism(alexander_table(m), alexander_table(n), f))
    throw std::logic_error("constructed map is not a quandle isomorphism");
  return IsoWitness{std::move(f), IsoMethod::theorem1_constructive};
}

std::optional<IsoWitness> theorem1_witness(const LambdaModule& m, const LambdaModule& n) {
  if (m.order() != n.order()) return std::nullopt;
  auto h = lambda_iso(image_one_minus_t(m).module, image_one_minus_t(n).module);
  if (!h) return std::nullopt;
  return construct_quandle_iso(m, n, *h);
}

}  // namespace alexq
