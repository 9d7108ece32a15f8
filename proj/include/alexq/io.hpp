#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "alexq/lambda_module.hpp"
#include "alexq/quandle.hpp"

namespace alexq {

/// A parsed constructor string. Module specs carry both the module and its
/// Alexander table; "table:@file" specs carry only the table.
struct ParsedSpec {
  std::optional<LambdaModule> module;
  QuandleTable table;
};

/// Grammar:
///   linear:<n>:<a>
///   poly:<n>:<c0>,<c1>,...,1          ascending coefficients, monic
///   sum:<spec>+<spec>[+...]
///   pair:@<path> | pair:{<module json>}
///   table:@<path>                     JSON or plain-text table
/// Syntax errors throw UsageError with the offset of the bad token;
/// semantic errors (gcd, monic, unreadable file) throw InvalidInput.
ParsedSpec parse_spec(const std::string& text);
LambdaModule parse_module_spec(const std::string& text);

/// {"invariant_factors":[...], "t_generator_images":[[...],...]}
nlohmann::json module_to_json(const LambdaModule& m);
LambdaModule module_from_json(const nlohmann::json& j);

/// {"order": n, "table": [[...]]}
nlohmann::json table_to_json(const QuandleTable& t);
QuandleTable table_from_json(const nlohmann::json& j);
/// n lines of n whitespace separated integers.
QuandleTable table_from_text(const std::string& text);
std::string table_to_text(const QuandleTable& t);
/// Detects JSON by a leading '{'.
QuandleTable table_from_string(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace alexq
