#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "alexq/lambda_module.hpp"

namespace alexq {

/// One (group, automorphism) structure; `multiplicity` counts how many
/// automorphisms it stands for (the conjugacy class size when pruning).
struct Structure {
  LambdaModule module;
  std::size_t multiplicity = 1;
};

/// Every Alexander quandle structure of order n: one module per abelian
/// group of order n and automorphism, or per automorphism conjugacy class
/// when `conjugacy_prune` is set.
std::vector<Structure> enumerate_structures(std::uint32_t n, bool conjugacy_prune = true);

/// Readable name for a module: linear when cyclic, a divisibility chain of
/// quotients when elementary abelian, a sum over primary parts when the
/// order has several primes, otherwise the raw (group, automorphism) pair.
ModuleDescriptor describe_structure(const LambdaModule& m);

struct ClassRecord {
  ModuleDescriptor representative;
  bool connected = false;
  std::size_t class_size = 0;  // automorphisms (over all groups) in the class
};

struct ClassificationReport {
  std::uint32_t order = 0;
  std::vector<ClassRecord> classes;
  std::size_t distinct_count = 0;
  std::size_t connected_count = 0;
  std::size_t total_structures = 0;  // sum of class_size
};

ClassificationReport classify_order(std::uint32_t n, bool conjugacy_prune = true);

struct CountRow {
  std::uint32_t n;
  std::size_t distinct;
  std::size_t connected;
  friend bool operator==(const CountRow&, const CountRow&) = default;
};

/// classify_order for n = 2..max_n.
std::vector<CountRow> count_table(std::uint32_t max_n, bool conjugacy_prune = true);

struct Table1Row {
  AbelianGroup group;
  ModuleDescriptor module;
  std::optional<ModuleDescriptor> image;  // Im(1 - t), identified
};

/// The seventeen modules on (Z_2)^2, (Z_2)^3 and (Z_3)^2, in report order.
std::vector<ModuleDescriptor> table1_modules();
std::vector<Table1Row> table1_report();

struct PredictedCounts {
  std::optional<std::size_t> distinct;
  std::optional<std::size_t> connected;
};

/// Counts that follow from closed forms alone: p - 1 quandles (p - 2
/// connected) at prime order, 2p^2 - 3p - 1 connected at order p^2, and
/// products over the prime-power factors of n when every factor is known.
PredictedCounts predicted_counts(std::uint32_t n);

/// Product over the prime-power factors of n of the counts returned by
/// `prime_power_counts`.
PredictedCounts product_formula(std::uint32_t n,
                                const std::function<PredictedCounts(std::uint32_t)>& prime_power_counts);

/// Z_p[t]/(h) is connected iff h(1) != 0 mod p. Throws InvalidInput when the
/// modulus of h is not prime.
bool poly_connected(const Polynomial& h);

bool is_prime(std::uint32_t n);

}  // namespace alexq
