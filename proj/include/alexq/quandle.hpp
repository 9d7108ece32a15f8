#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alexq/lambda_module.hpp"

namespace alexq {

/// Cayley table of a finite binary operation: at(x, y) = x^y.
///
/// Tables read from user files may contain out-of-range entries; those are
/// recorded (and stored as 0) so that check_axioms can report them as
/// malformed rather than as an axiom failure.
class QuandleTable {
 public:
  QuandleTable() = default;
  explicit QuandleTable(std::size_t order, std::vector<Element> cells);
  /// Throws InvalidInput if the rows do not form a square.
  static QuandleTable from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t order() const { return order_; }
  Element at(Element x, Element y) const { return cells_[x * order_ + y]; }
  std::span<const Element> cells() const { return cells_; }

  bool malformed() const { return bad_cell_.has_value(); }
  /// (row, column) of the first out-of-range entry.
  std::optional<std::pair<std::size_t, std::size_t>> bad_cell() const { return bad_cell_; }

  std::vector<std::vector<Element>> rows() const;

  friend bool operator==(const QuandleTable&, const QuandleTable&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<Element> cells_;
  std::optional<std::pair<std::size_t, std::size_t>> bad_cell_;
};

QuandleTable alexander_table(const LambdaModule& m);

enum class AxiomStatus {
  ok,
  malformed,       // witness = (row, column, value-index-unused)
  right_bijective, // axiom (i): witness = (x1, x2, y) with x1 < x2, x1^y = x2^y
  distributive,    // axiom (ii): witness = (a, b, c)
  idempotent,      // axiom (iii): witness = (a, a, a)
};

struct AxiomReport {
  AxiomStatus status = AxiomStatus::ok;
  std::array<std::size_t, 3> witness{};

  bool ok() const { return status == AxiomStatus::ok; }
  std::string describe() const;
};

/// Exhaustive check of the three quandle axioms in order (i), (ii), (iii);
/// reports the lexicographically smallest witness of the first failure.
AxiomReport check_axioms(const QuandleTable& t);

/// Orbits under x -> x^y and x -> f_y^-1(x), each sorted, ordered by least
/// element.
std::vector<std::vector<Element>> orbits(const QuandleTable& t);
bool is_connected(const QuandleTable& t);

/// Dual operation x^{~y} = f_y^-1(x).
QuandleTable dual(const QuandleTable& t);

enum class IsoMethod { theorem1_constructive, brute_force, closed_form_linear };

std::string to_string(IsoMethod m);

struct IsoWitness {
  std::vector<Element> map;
  IsoMethod method = IsoMethod::brute_force;
};

/// True iff `map` is a bijection with map(x^y) = map(x)^map(y) everywhere.
bool is_quandle_isomorphism(const QuandleTable& a, const QuandleTable& b, std::span<const Element> map);

/// Exact backtracking search for a quandle isomorphism.
std::optional<IsoWitness> brute_iso(const QuandleTable& a, const QuandleTable& b);

/// Equal orders and Lambda-isomorphic (1 - t) images.
bool theorem1_iso(const LambdaModule& m, const LambdaModule& n);

/// Builds the quandle isomorphism f(alpha + omega) = k(alpha) + h(omega)
/// from a Lambda-isomorphism `h` between the abstract (1 - t) images of M
/// and N (ids of image_one_minus_t(.).module). Throws InvalidInput if the
/// orders differ or `h` is not a Lambda-isomorphism.
IsoWitness construct_quandle_iso(const LambdaModule& m, const LambdaModule& n, std::span<const Element> h);

/// theorem1_iso plus construct_quandle_iso.
std::optional<IsoWitness> theorem1_witness(const LambdaModule& m, const LambdaModule& n);

}  // namespace alexq
