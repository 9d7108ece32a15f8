#include "alexq/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "alexq/error.hpp"

namespace alexq {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::int64_t parse_int(const std::string& text, std::size_t begin, std::size_t end) {
  const std::string tok = text.substr(begin, end - begin);
  if (tok.empty()) throw UsageError("expected an integer", begin);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw UsageError("expected an integer, got '" + tok + "'", begin);
  }
  if (used != tok.size()) throw UsageError("expected an integer, got '" + tok + "'", begin);
  return v;
}

std::uint32_t parse_modulus(const std::string& text, std::size_t begin, std::size_t end) {
  auto v = parse_int(text, begin, end);
  if (v < 1 || v > (1 << 20)) throw UsageError("modulus out of range", begin);
  return static_cast<std::uint32_t>(v);
}

json parse_json_text(const std::string& text, std::size_t offset) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what(), offset);
  }
}

LambdaModule parse_module_at(const std::string& text, std::size_t begin, std::size_t end);

// Splits [begin, end) on '+' outside braces.
std::vector<std::pair<std::size_t, std::size_t>> split_summands(const std::string& text, std::size_t begin,
                                                                std::size_t end) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  int depth = 0;
  std::size_t start = begin;
  for (std::size_t i = begin; i < end; ++i) {
    if (text[i] == '{' || text[i] == '[') ++depth;
    if (text[i] == '}' || text[i] == ']') --depth;
    if (text[i] == '+' && depth == 0) {
      out.emplace_back(start, i);
      start = i + 1;
    }
  }
  out.emplace_back(start, end);
  return out;
}

LambdaModule parse_module_at(const std::string& text, std::size_t begin, std::size_t end) {
  const std::string body = text.substr(begin, end - begin);
  auto colon = body.find(':');
  if (colon == std::string::npos) throw UsageError("expected '<kind>:' prefix", begin);
  const std::string kind = body.substr(0, colon);
  const std::size_t rest = begin + colon + 1;

  if (kind == "linear") {
    auto c2 = text.find(':', rest);
    if (c2 == std::string::npos || c2 >= end) throw UsageError("expected linear:<n>:<a>", rest);
    const auto n = parse_modulus(text, rest, c2);
    const auto a = parse_int(text, c2 + 1, end);
    return module_from_linear(n, a);
  }
  if (kind == "poly") {
    auto c2 = text.find(':', rest);
    if (c2 == std::string::npos || c2 >= end) throw UsageError("expected poly:<n>:<c0>,...,1", rest);
    const auto n = parse_modulus(text, rest, c2);
    std::vector<std::int64_t> coeffs;
    std::size_t start = c2 + 1;
    for (std::size_t i = start; i <= end; ++i) {
      if (i == end || text[i] == ',') {
        coeffs.push_back(parse_int(text, start, i));
        start = i + 1;
      }
    }
    return module_from_polynomial(Polynomial(n, std::move(coeffs)));
  }
  if (kind == "sum") {
    std::vector<ModuleDescriptor> descs;
    std::optional<LambdaModule> acc;
    bool all_described = true;
    for (auto [b, e] : split_summands(text, rest, end)) {
      auto m = parse_module_at(text, b, e);
      if (m.provenance())
        descs.push_back(*m.provenance());
      else
        all_described = false;
      acc = acc ? direct_sum(*acc, m) : m;
    }
    if (all_described) acc->set_provenance(ModuleDescriptor::sum(std::move(descs)));
    return *acc;
  }
  if (kind == "pair") {
    if (rest < end && text[rest] == '@') return module_from_json(parse_json_text(read_file(text.substr(rest + 1, end - rest - 1)), rest));
    if (rest < end && text[rest] == '{') return module_from_json(parse_json_text(text.substr(rest, end - rest), rest));
    throw UsageError("expected pair:@<path> or pair:{...}", rest);
  }
  throw UsageError("unknown spec kind '" + kind + "'", begin);
}

}  // namespace

ParsedSpec parse_spec(const std::string& text) {
  if (text.rfind("table:", 0) == 0) {
    if (text.size() < 7 || text[6] != '@') throw UsageError("expected table:@<path>", 6);
    return ParsedSpec{std::nullopt, table_from_string(read_file(text.substr(7)))};
  }
  auto m = parse_module_at(text, 0, text.size());
  auto table = alexander_table(m);
  return ParsedSpec{std::move(m), std::move(table)};
}

LambdaModule parse_module_spec(const std::string& text) {
  if (text.rfind("table:", 0) == 0) throw UsageError("a module spec is required here, not a table", 0);
  return parse_module_at(text, 0, text.size());
}

json module_to_json(const LambdaModule& m) {
  json images = json::array();
  for (auto img : m.t_action().generator_images()) images.push_back(m.group().coords(img));
  auto f = m.group().invariant_factors();
  return json{{"invariant_factors", std::vector<std::uint32_t>(f.begin(), f.end())},
              {"t_generator_images", images}};
}

LambdaModule module_from_json(const json& j) {
  try {
    auto factors = j.at("invariant_factors").get<std::vector<std::int64_t>>();
    auto images = j.at("t_generator_images").get<std::vector<std::vector<std::int64_t>>>();
    if (images.size() != factors.size()) throw InvalidInput("need one generator image per invariant factor");
    for (auto f : factors)
      if (f < 2) throw InvalidInput("invariant factors must be at least 2");
    // Accept any ordering of the factors; permute to ascending order.
    std::vector<std::size_t> perm(factors.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return factors[a] < factors[b]; });
    std::vector<std::uint32_t> sorted;
    for (auto i : perm) sorted.push_back(static_cast<std::uint32_t>(factors[i]));
    AbelianGroup group(sorted);
    std::vector<std::vector<std::uint32_t>> coords;
    for (auto i : perm) {
      if (images[i].size() != factors.size()) throw InvalidInput("generator image has wrong number of coordinates");
      std::vector<std::uint32_t> c;
      for (auto k : perm) c.push_back(static_cast<std::uint32_t>(mod_floor(images[i][k], factors[k])));
      coords.push_back(std::move(c));
    }
    return module_from_pair(group, coords);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad module JSON: ") + e.what());
  }
}

json table_to_json(const QuandleTable& t) { return json{{"order", t.order()}, {"table", t.rows()}}; }

QuandleTable table_from_json(const json& j) {
  try {
    auto rows = j.at("table").get<std::vector<std::vector<std::int64_t>>>();
    if (j.contains("order") && j.at("order").get<std::size_t>() != rows.size())
      throw InvalidInput("\"order\" does not match the number of rows");
    return QuandleTable::from_rows(rows);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad table JSON: ") + e.what());
  }
}

QuandleTable table_from_text(const std::string& text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::int64_t> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw InvalidInput("bad table entry '" + tok + "'");
      }
      if (used != tok.size()) throw InvalidInput("bad table entry '" + tok + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return QuandleTable::from_rows(rows);
}

std::string table_to_text(const QuandleTable& t) {
  std::ostringstream os;
  for (Element x = 0; x < t.order(); ++x) {
    for (Element y = 0; y < t.order(); ++y) os << (y ? " " : "") << t.at(x, y);
    os << '\n';
  }
  return os.str();
}

QuandleTable table_from_string(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return table_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("invalid JSON: ") + e.what());
    }
  }
  return table_from_text(text);
}

}  // namespace alexq
