#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alexq/abelian.hpp"

namespace alexq {

/// Monic polynomial over Z_n, coefficients ascending (a_0, ..., a_{d-1}, 1).
/// The constant term must be a unit so that t is invertible in Z_n[t]/(h).
class Polynomial {
 public:
  /// Reduces coefficients mod n; throws InvalidInput for a non-monic
  /// polynomial, a non-unit constant term, degree 0 or n < 2.
  Polynomial(std::uint32_t modulus, std::vector<std::int64_t> coeffs);

  std::uint32_t modulus() const { return modulus_; }
  std::span<const std::uint32_t> coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }

  std::uint32_t evaluate(std::int64_t x) const;
  /// True iff *this divides `other` in Z_n[t] (both monic).
  bool divides(const Polynomial& other) const;

  std::string to_string() const;  // "t^2+t+1"

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  friend auto operator<=>(const Polynomial& a, const Polynomial& b) {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  std::uint32_t modulus_;
  std::vector<std::uint32_t> coeffs_;
};

/// All monic polynomials of the given degree over Z_n with unit constant
/// term, ascending coefficient order.
std::vector<Polynomial> monic_polynomials(std::uint32_t modulus, std::size_t degree);

/// How a module was built; doubles as a human readable name in reports.
class ModuleDescriptor {
 public:
  enum class Kind { linear = 0, poly = 1, sum = 2, pair = 3 };

  static ModuleDescriptor linear(std::uint32_t n, std::uint32_t a);
  static ModuleDescriptor poly(Polynomial h);
  /// Nested sums are flattened; a single summand is returned unchanged.
  static ModuleDescriptor sum(std::vector<ModuleDescriptor> parts);
  static ModuleDescriptor pair(const AbelianGroup& group, const GroupAutomorphism& t);

  Kind kind() const { return kind_; }
  std::uint32_t linear_n() const { return n_; }
  std::uint32_t linear_a() const { return a_; }
  const std::optional<Polynomial>& polynomial() const { return poly_; }
  const std::vector<ModuleDescriptor>& parts() const { return parts_; }
  std::span<const std::uint32_t> pair_factors() const { return pair_factors_; }
  /// Coordinates of t applied to each standard generator.
  const std::vector<std::vector<std::uint32_t>>& pair_images() const { return pair_images_; }

  /// Parseable spec string ("linear:9:4", "poly:2:1,1,1", "sum:a+b", ...).
  std::string spec() const;
  /// Display form, e.g. "Lambda_2/(t+1) + Lambda_2/(t^2+1)"; "0" for the
  /// empty sum.
  std::string pretty() const;

  /// Report ordering: linear < poly < sum < pair, then by content.
  friend bool operator<(const ModuleDescriptor& a, const ModuleDescriptor& b);
  friend bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b);

 private:
  std::vector<std::int64_t> key() const;

  Kind kind_ = Kind::sum;
  std::uint32_t n_ = 0;
  std::uint32_t a_ = 0;
  std::optional<Polynomial> poly_;
  std::vector<ModuleDescriptor> parts_;
  std::vector<std::uint32_t> pair_factors_;
  std::vector<std::vector<std::uint32_t>> pair_images_;
};

/// A finite module over Z[t, t^-1]: an abelian group with t acting by an
/// automorphism.
class LambdaModule {
 public:
  LambdaModule(AbelianGroup group, GroupAutomorphism t_action,
               std::optional<ModuleDescriptor> provenance = std::nullopt);

  const AbelianGroup& group() const { return group_; }
  const GroupAutomorphism& t_action() const { return t_; }
  std::size_t order() const { return group_.order(); }
  const std::optional<ModuleDescriptor>& provenance() const { return provenance_; }
  void set_provenance(std::optional<ModuleDescriptor> p) { provenance_ = std::move(p); }

  Element t(Element x) const { return t_(x); }
  Element t_inv(Element x) const { return t_inv_[x]; }
  Element one_minus_t(Element x) const { return group_.sub(x, t_(x)); }
  /// t x + (1 - t) y.
  Element quandle_op(Element x, Element y) const {
    return group_.add(t_(x), one_minus_t(y));
  }

  std::string name() const;

 private:
  AbelianGroup group_;
  GroupAutomorphism t_;
  std::vector<Element> t_inv_;
  std::optional<ModuleDescriptor> provenance_;
};

/// A t-stable subgroup, with a canonical re-coordinatised copy.
struct Submodule {
  std::vector<Element> members;  // parent ids, ascending
  LambdaModule module;           // abstract form
  std::vector<Element> embed;    // abstract id -> parent id
  std::vector<Element> locate;   // parent id -> abstract id, or kNoElement

  std::size_t order() const { return members.size(); }
};

LambdaModule module_from_pair(const AbelianGroup& group, const GroupAutomorphism& phi);
/// Generator images given as coordinate vectors of `group`.
LambdaModule module_from_pair(const AbelianGroup& group,
                              const std::vector<std::vector<std::uint32_t>>& t_generator_images);
/// Z_n with t acting as multiplication by a; requires gcd(n, a) = 1.
LambdaModule module_from_linear(std::uint32_t n, std::int64_t a);
/// Z_n[t]/(h) on the basis 1, t, ..., t^{d-1} (companion action).
LambdaModule module_from_polynomial(const Polynomial& h);
LambdaModule direct_sum(const LambdaModule& m1, const LambdaModule& m2);
LambdaModule build_module(const ModuleDescriptor& desc);

/// Restricts M to `members`, which must be closed under +, -, t.
Submodule restrict_module(const LambdaModule& m, std::vector<Element> members);
/// (1 - t)^power M for power 1 or 2.
Submodule image_one_minus_t(const LambdaModule& m, int power = 1);

/// Isomorphism-invariant fingerprint used to reject non-isomorphic pairs
/// before searching.
struct IsoCertificate {
  std::vector<std::uint32_t> group_factors;
  std::vector<std::uint32_t> image_factors;
  std::size_t image2_order = 0;
  std::size_t fixed_points = 0;
  std::vector<std::size_t> t_orbit_sizes;

  friend auto operator<=>(const IsoCertificate&, const IsoCertificate&) = default;
};

IsoCertificate iso_certificate(const LambdaModule& m);

/// True iff `map` is a bijection M -> N that is additive and commutes with t.
bool is_lambda_isomorphism(const LambdaModule& m, const LambdaModule& n, std::span<const Element> map);

/// A Lambda-module isomorphism M -> N as an element map, if one exists.
std::optional<std::vector<Element>> lambda_iso(const LambdaModule& m, const LambdaModule& n);

/// Names M as a quotient Z_p[t]/(h) or a chain sum Z_p[t]/(h_1) + ... with
/// h_1 | h_2 | ..., or as Z_n[t]/(t - a) when the group is cyclic. The empty
/// sum stands for the zero module.
std::optional<ModuleDescriptor> identify_as_quotient(const LambdaModule& m);

/// Divisibility chains h_1 | ... | h_k over Z_p with total degree `degree`.
std::vector<ModuleDescriptor> chain_quotients(std::uint32_t p, std::size_t degree);

}  // namespace alexq
