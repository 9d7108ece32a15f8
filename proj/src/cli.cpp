#include "alexq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "alexq/classify.hpp"
#include "alexq/error.hpp"
#include "alexq/io.hpp"
#include "alexq/linear.hpp"

namespace alexq::cli {

namespace {

using nlohmann::json;

constexpr std::uint32_t kDefaultMaxOrder = 15;

std::uint32_t max_order_guard() {
  if (const char* env = std::getenv("QUANDLE_MAX_ORDER")) {
    try {
      auto v = std::stoul(env);
      if (v >= 1) return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxOrder;
}

// Throws UsageError unless n is within the guard or explicitly allowed.
void check_order_guard(std::uint32_t n, bool allow_large, std::ostream& err) {
  const auto limit = max_order_guard();
  if (n <= limit) return;
  if (!allow_large)
    throw UsageError("order " + std::to_string(n) + " exceeds the limit " + std::to_string(limit) +
                     " (pass --allow-large or raise QUANDLE_MAX_ORDER)");
  err << "warning: order " << n << " exceeds " << limit << "; automorphism enumeration may be slow\n";
}

std::string permutation_line(const std::vector<Element>& map) {
  std::ostringstream os;
  for (std::size_t i = 0; i < map.size(); ++i) os << (i ? " " : "") << map[i];
  return os.str();
}

void print_table(const QuandleTable& t, const std::string& format, std::ostream& out) {
  if (format == "text")
    out << table_to_text(t);
  else
    out << table_to_json(t).dump() << '\n';
}

json report_to_json(const ClassificationReport& r, bool connected_only) {
  json classes = json::array();
  for (auto& c : r.classes) {
    if (connected_only && !c.connected) continue;
    classes.push_back({{"representative", c.representative.spec()},
                       {"name", c.representative.pretty()},
                       {"connected", c.connected},
                       {"class_size_in_enumeration", c.class_size}});
  }
  return json{{"order", r.order},
              {"distinct_count", r.distinct_count},
              {"connected_count", r.connected_count},
              {"total_structures", r.total_structures},
              {"classes", classes}};
}

struct Options {
  // build / axioms / dual / orbits / im1t
  std::string spec;
  std::string spec_b;
  std::string output;
  std::string format = "json";
  std::string method = "theorem1";
  bool witness = false;
  bool self_check = false;
  bool identify = false;
  int power = 1;
  // linear
  std::int64_t n = 0, a = 0, b = 0;
  // classify / table2
  std::uint32_t order = 0;
  std::uint32_t max = kDefaultMaxOrder;
  bool connected_only = false;
  bool no_prune = false;
  bool allow_large = false;
};

int cmd_build(const Options& o, std::ostream& out) {
  auto parsed = parse_spec(o.spec);
  if (o.output.empty()) {
    print_table(parsed.table, o.format, out);
    return kTrue;
  }
  std::ofstream file(o.output);
  if (!file) throw InvalidInput("cannot write '" + o.output + "'");
  print_table(parsed.table, o.format, file);
  return kTrue;
}

int cmd_axioms(const Options& o, std::ostream& out) {
  auto parsed = parse_spec(o.spec);
  auto report = check_axioms(parsed.table);
  out << report.describe() << '\n';
  if (report.status == AxiomStatus::malformed) return kInvalid;
  return report.ok() ? kTrue : kFalse;
}

int cmd_iso(const Options& o, std::ostream& out, std::ostream& err) {
  auto a = parse_spec(o.spec);
  auto b = parse_spec(o.spec_b);
  const bool want_theorem = o.method == "theorem1" || o.method == "both";
  const bool want_brute = o.method == "brute" || o.method == "both";
  if (want_theorem && (!a.module || !b.module))
    throw UsageError("--method theorem1 needs module specs; use --method brute for tables");

  std::optional<bool> theorem_says, brute_says;
  std::optional<IsoWitness> witness;
  if (want_theorem) {
    auto w = theorem1_witness(*a.module, *b.module);
    theorem_says = w.has_value();
    if (w) witness = std::move(w);
  }
  if (want_brute) {
    for (const auto* t : {&a.table, &b.table}) {
      auto r = check_axioms(*t);
      if (r.status == AxiomStatus::malformed) throw InvalidInput(r.describe());
    }
    auto w = brute_iso(a.table, b.table);
    brute_says = w.has_value();
    if (w && !witness) witness = std::move(w);
  }
  if (theorem_says && brute_says && *theorem_says != *brute_says) {
    err << "error: deciders disagree (theorem1: " << (*theorem_says ? "isomorphic" : "not isomorphic")
        << ", brute: " << (*brute_says ? "isomorphic" : "not isomorphic") << ")\n";
    return kInternal;
  }
  const bool iso = theorem_says.value_or(brute_says.value_or(false));
  if (iso && witness && !is_quandle_isomorphism(a.table, b.table, witness->map)) {
    err << "error: witness failed verification\n";
    return kInternal;
  }
  out << (iso ? "isomorphic" : "not isomorphic");
  if (iso && witness) out << " (" << to_string(witness->method) << ")";
  out << '\n';
  if (iso && o.witness && witness) out << permutation_line(witness->map) << '\n';
  return iso ? kTrue : kFalse;
}

int cmd_dual(const Options& o, std::ostream& out) {
  auto parsed = parse_spec(o.spec);
  auto d = dual(parsed.table);
  if (!o.self_check) {
    print_table(d, o.format, out);
    return kTrue;
  }
  auto w = brute_iso(parsed.table, d);
  out << (w ? "self-dual" : "not self-dual") << '\n';
  return w ? kTrue : kFalse;
}

int cmd_orbits(const Options& o, std::ostream& out) {
  auto parsed = parse_spec(o.spec);
  auto orbs = orbits(parsed.table);
  out << orbs.size() << (orbs.size() == 1 ? " orbit" : " orbits") << (orbs.size() <= 1 ? " (connected)" : "")
      << '\n';
  for (auto& orb : orbs) out << permutation_line(orb) << '\n';
  return kTrue;
}

int cmd_im1t(const Options& o, std::ostream& out) {
  if (o.power != 1 && o.power != 2) throw UsageError("--power must be 1 or 2");
  auto m = parse_module_spec(o.spec);
  auto sub = image_one_minus_t(m, o.power);
  out << "order " << sub.order() << ", group " << sub.module.group().pretty() << '\n';
  out << "members " << permutation_line(sub.members) << '\n';
  if (o.identify) {
    auto id = identify_as_quotient(sub.module);
    if (id)
      out << "identified " << id->pretty() << "  [" << id->spec() << "]\n";
    else
      out << "identified ? (no candidate quotient matches)\n";
  }
  return kTrue;
}

int cmd_linear(const std::string& which, const Options& o, std::ostream& out) {
  bool result = false;
  if (which == "ncap") {
    out << linear::n_cap(o.n, o.a) << '\n';
    return kTrue;
  }
  if (which == "iso") result = linear::iso(o.n, o.a, o.b);
  if (which == "connected") result = linear::connected(o.n, o.a);
  if (which == "dual") result = linear::dual(o.n, o.a, o.b);
  if (which == "selfdual") result = linear::self_dual(o.n, o.a);
  out << (result ? "true" : "false") << '\n';
  return result ? kTrue : kFalse;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.order < 1) throw UsageError("order must be positive");
  check_order_guard(o.order, o.allow_large, err);
  auto report = classify_order(o.order, !o.no_prune);
  if (o.format == "json") {
    out << report_to_json(report, o.connected_only).dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "representative,name,connected,class_size\n";
    for (auto& c : report.classes) {
      if (o.connected_only && !c.connected) continue;
      out << '"' << c.representative.spec() << "\",\"" << c.representative.pretty() << "\","
          << (c.connected ? 1 : 0) << ',' << c.class_size << '\n';
    }
  } else {
    out << "order " << report.order << ": " << report.distinct_count << " distinct, " << report.connected_count
        << " connected (" << report.total_structures << " structures)\n";
    for (auto& c : report.classes) {
      if (o.connected_only && !c.connected) continue;
      out << "  " << std::left << std::setw(36) << c.representative.pretty() << " "
          << (c.connected ? "connected    " : "disconnected ") << std::setw(5) << c.class_size << "  "
          << c.representative.spec() << '\n';
    }
  }
  return kTrue;
}

int cmd_table1(const Options& o, std::ostream& out) {
  auto rows = table1_report();
  if (o.format == "json") {
    json arr = json::array();
    for (auto& r : rows)
      arr.push_back({{"group", r.group.pretty()},
                     {"module", r.module.pretty()},
                     {"module_spec", r.module.spec()},
                     {"image", r.image ? r.image->pretty() : "?"}});
    out << arr.dump(2) << '\n';
    return kTrue;
  }
  for (auto& r : rows)
    out << std::left << std::setw(10) << r.group.pretty() << std::setw(36) << r.module.pretty()
        << (r.image ? r.image->pretty() : "?") << '\n';
  return kTrue;
}

int cmd_table2(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.max < 2) throw UsageError("--max must be at least 2");
  check_order_guard(o.max, o.allow_large, err);
  auto rows = count_table(o.max, !o.no_prune);
  if (o.format == "json") {
    json arr = json::array();
    for (auto& r : rows) arr.push_back({{"n", r.n}, {"distinct", r.distinct}, {"connected", r.connected}});
    out << arr.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "n,distinct,connected\n";
    for (auto& r : rows) out << r.n << ',' << r.distinct << ',' << r.connected << '\n';
  } else {
    out << std::right << std::setw(4) << "n" << std::setw(10) << "distinct" << std::setw(11) << "connected" << '\n';
    for (auto& r : rows) out << std::setw(4) << r.n << std::setw(10) << r.distinct << std::setw(11) << r.connected << '\n';
  }
  return kTrue;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Alexander quandles: construction, isomorphism and classification", "alexq"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Emit the Cayley table of a spec");
  build->add_option("spec", o.spec, "Module or table spec")->required();
  build->add_option("-o,--output", o.output, "Write to a file instead of stdout");
  build->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* axioms = app.add_subcommand("axioms", "Check the quandle axioms");
  axioms->add_option("spec", o.spec)->required();

  auto* iso = app.add_subcommand("iso", "Decide quandle isomorphism");
  iso->add_option("spec_a", o.spec)->required();
  iso->add_option("spec_b", o.spec_b)->required();
  iso->add_option("--method", o.method, "theorem1, brute or both")
      ->check(CLI::IsMember({"theorem1", "brute", "both"}));
  iso->add_flag("--witness", o.witness, "Print the isomorphism as a permutation line");

  auto* dual_cmd = app.add_subcommand("dual", "Dual quandle table");
  dual_cmd->add_option("spec", o.spec)->required();
  dual_cmd->add_flag("--self-check", o.self_check, "Decide whether the quandle is self-dual");
  dual_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  auto* orbits_cmd = app.add_subcommand("orbits", "Orbits and connectedness");
  orbits_cmd->add_option("spec", o.spec)->required();

  auto* im1t = app.add_subcommand("im1t", "The submodule (1-t)^k M");
  im1t->add_option("spec", o.spec)->required();
  im1t->add_flag("--identify", o.identify, "Name the image as a quotient module");
  im1t->add_option("--power", o.power, "1 or 2");

  auto* linear_cmd = app.add_subcommand("linear", "Closed-form criteria for linear quandles");
  linear_cmd->require_subcommand(1);
  auto* lin_iso = linear_cmd->add_subcommand("iso", "Lambda_n/(t-a) ~ Lambda_n/(t-b)");
  lin_iso->add_option("n", o.n)->required();
  lin_iso->add_option("a", o.a)->required();
  lin_iso->add_option("b", o.b)->required();
  auto* lin_conn = linear_cmd->add_subcommand("connected", "Lambda_n/(t-a) is connected");
  lin_conn->add_option("n", o.n)->required();
  lin_conn->add_option("a", o.a)->required();
  auto* lin_dual = linear_cmd->add_subcommand("dual", "Lambda_n/(t-a) is dual to Lambda_n/(t-b)");
  lin_dual->add_option("n", o.n)->required();
  lin_dual->add_option("a", o.a)->required();
  lin_dual->add_option("b", o.b)->required();
  auto* lin_self = linear_cmd->add_subcommand("selfdual", "Lambda_n/(t-a) is self-dual");
  lin_self->add_option("n", o.n)->required();
  lin_self->add_option("a", o.a)->required();
  auto* lin_ncap = linear_cmd->add_subcommand("ncap", "n / gcd(n, 1-a)");
  lin_ncap->add_option("n", o.n)->required();
  lin_ncap->add_option("a", o.a)->required();

  auto* classify = app.add_subcommand("classify", "Classify Alexander quandles of one order");
  classify->add_option("n", o.order)->required();
  classify->add_flag("--connected-only", o.connected_only);
  classify->add_flag("--no-conjugacy-prune", o.no_prune);
  classify->add_flag("--allow-large", o.allow_large, "Permit orders above the guard");
  classify->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* table1 = app.add_subcommand("table1", "Im(1-t) for modules on (Z2)^2, (Z2)^3, (Z3)^2");
  table1->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* table2 = app.add_subcommand("table2", "Counts of distinct and connected quandles by order");
  table2->add_option("--max", o.max, "Largest order");
  table2->add_flag("--no-conjugacy-prune", o.no_prune);
  table2->add_flag("--allow-large", o.allow_large);
  table2->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "csv"}));

  // Text output by default for the report commands.
  for (auto* sub : {classify, table1, table2})
    sub->preparse_callback([&o](std::size_t) { o.format = "text"; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kUsage;
  }

  try {
    if (build->parsed()) return cmd_build(o, out);
    if (axioms->parsed()) return cmd_axioms(o, out);
    if (iso->parsed()) return cmd_iso(o, out, err);
    if (dual_cmd->parsed()) return cmd_dual(o, out);
    if (orbits_cmd->parsed()) return cmd_orbits(o, out);
    if (im1t->parsed()) return cmd_im1t(o, out);
    if (linear_cmd->parsed()) {
      for (auto* sub : linear_cmd->get_subcommands()) return cmd_linear(sub->get_name(), o, out);
    }
    if (classify->parsed()) return cmd_classify(o, out, err);
    if (table1->parsed()) return cmd_table1(o, out);
    if (table2->parsed()) return cmd_table2(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what();
    if (e.position() != UsageError::npos) err << " (at position " << e.position() << ")";
    err << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace alexq::cli
