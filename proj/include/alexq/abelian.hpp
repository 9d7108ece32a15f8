#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace alexq {

// Elements of a finite abelian group are addressed by a mixed-radix index:
// coordinate 0 is the least significant digit and index 0 is the identity.
using Element = std::uint32_t;

inline constexpr Element kNoElement = static_cast<Element>(-1);

std::int64_t mod_floor(std::int64_t value, std::int64_t modulus);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Prime factorisation as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint32_t n);

/// Z_{m_1} + ... + Z_{m_k} for arbitrary moduli m_i >= 1.
///
/// This is the coordinate machinery shared by canonical groups and by the
/// intermediate products that appear while forming direct sums. Addition
/// is served from a precomputed table for small orders.
class CyclicProduct {
 public:
  CyclicProduct() : CyclicProduct(std::vector<std::uint32_t>{}) {}
  explicit CyclicProduct(std::vector<std::uint32_t> moduli);

  std::span<const std::uint32_t> moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::size_t order() const { return order_; }

  std::vector<std::uint32_t> coords(Element x) const;
  Element index(std::span<const std::uint32_t> coords) const;
  /// Index of the i-th standard generator (coordinate vector e_i).
  Element basis(std::size_t i) const { return strides_[i]; }

  Element add(Element x, Element y) const;
  Element neg(Element x) const;
  Element sub(Element x, Element y) const { return add(x, neg(y)); }
  Element scale(std::int64_t k, Element x) const;
  std::uint32_t element_order(Element x) const;

  friend bool operator==(const CyclicProduct& a, const CyclicProduct& b) {
    return a.moduli_ == b.moduli_;
  }

 private:
  std::vector<std::uint32_t> moduli_;
  std::vector<Element> strides_;
  std::size_t order_ = 1;
  std::shared_ptr<const std::vector<Element>> add_table_;
};

/// A finite abelian group in invariant-factor form d_1 | d_2 | ... | d_k,
/// every d_i >= 2. The empty factor list is the trivial group.
class AbelianGroup : public CyclicProduct {
 public:
  AbelianGroup() = default;
  /// Throws InvalidInput unless the factors are in canonical form.
  explicit AbelianGroup(std::vector<std::uint32_t> invariant_factors);

  std::span<const std::uint32_t> invariant_factors() const { return moduli(); }
  bool is_cyclic() const { return rank() <= 1; }
  /// True for (Z_p)^m with p prime and m >= 1.
  bool is_elementary() const;

  std::string to_string() const;  // "4,2" style, largest factor first
  std::string pretty() const;     // "Z4+Z2"
};

/// Reads a comma separated factor list ("4,2" or "2,4") and returns the
/// group in canonical form. Factors need not be sorted but must already be
/// a divisibility chain once sorted.
AbelianGroup parse_group(const std::string& text);

/// Every abelian group of order n once, canonical form, ordered by number
/// of invariant factors then lexicographically.
std::vector<AbelianGroup> abelian_groups_of_order(std::uint32_t n);

/// Invariant factors of the subgroup formed by `members`, recovered from the
/// number of elements killed by each prime power.
std::vector<std::uint32_t> invariant_factors_of(const CyclicProduct& ambient,
                                                std::span<const Element> members);

/// A canonical basis for a subgroup of `ambient`.
struct SubgroupBasis {
  AbelianGroup group;
  std::vector<Element> generators;  // ambient ids, one per invariant factor
  std::vector<Element> embed;       // canonical id -> ambient id
};

/// `members` must be closed under addition (and contain 0).
SubgroupBasis subgroup_basis(const CyclicProduct& ambient, std::span<const Element> members);

/// A bijective endomorphism of a finite abelian group, held both as the
/// images of the standard generators and as the full element permutation.
class GroupAutomorphism {
 public:
  GroupAutomorphism() = default;

  /// Throws InvalidInput if the induced map is not well defined or not
  /// bijective.
  GroupAutomorphism(const CyclicProduct& group, std::vector<Element> generator_images);

  /// Throws InvalidInput unless `element_map` is an additive bijection.
  static GroupAutomorphism from_map(const CyclicProduct& group, std::vector<Element> element_map);
  static GroupAutomorphism identity(const CyclicProduct& group);

  Element operator()(Element x) const { return map_[x]; }
  std::span<const Element> generator_images() const { return images_; }
  std::span<const Element> element_map() const { return map_; }
  std::size_t domain_order() const { return map_.size(); }

  GroupAutomorphism inverse() const;
  /// (*this)(other(x)).
  GroupAutomorphism after(const GroupAutomorphism& other) const;

  /// Sorted cycle lengths of the element permutation.
  std::vector<std::size_t> cycle_type() const;

  friend bool operator==(const GroupAutomorphism& a, const GroupAutomorphism& b) {
    return a.images_ == b.images_;
  }
  friend auto operator<=>(const GroupAutomorphism& a, const GroupAutomorphism& b) {
    return a.images_ <=> b.images_;
  }

 private:
  GroupAutomorphism(std::vector<Element> basis, std::vector<Element> images,
                    std::vector<Element> map)
      : basis_(std::move(basis)), images_(std::move(images)), map_(std::move(map)) {}

  std::vector<Element> basis_;
  std::vector<Element> images_;
  std::vector<Element> map_;
};

/// All automorphisms of `group`, lexicographic in the generator images.
std::vector<GroupAutomorphism> enumerate_automorphisms(const CyclicProduct& group);

struct ConjugacyClass {
  std::vector<std::size_t> members;  // indices into the input, ascending
  std::size_t representative;        // lexicographically smallest member
};

/// Partitions a full automorphism group under g ~ h^-1 g h. Throws
/// InvalidInput if the input is not closed under composition.
std::vector<ConjugacyClass> conjugacy_classes(std::span<const GroupAutomorphism> auts);

}  // namespace alexq
