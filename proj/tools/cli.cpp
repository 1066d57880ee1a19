#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

#include "abelcanon/counting.hpp"
#include "abelcanon/errors.hpp"
#include "abelcanon/group_model.hpp"
#include "abelcanon/oracle.hpp"
#include "abelcanon/reduction.hpp"
#include "abelcanon/serialize.hpp"

namespace abelcanon::cli {

namespace {

enum class Format { Text, Json };

struct CliConfig {
  Format format = Format::Json;
  long long max_order = 4096;
  bool trace = false;
};

std::string tuple_text(std::span<const Integer> xs) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
  out << ')';
  return out.str();
}

std::string list_text(const std::vector<unsigned>& xs) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
  out << ']';
  return out.str();
}

std::string primary_text(const CanonicalElement& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    const auto values = c.components[i].values();
    out << (i ? "; " : "") << "p=" << c.components[i].p << ' ' << tuple_text(values);
  }
  return c.components.empty() ? "(trivial)" : out.str();
}

Json order_json(const ElementOrder& order) {
  return order.is_infinite() ? Json("infinite") : integer_json(*order.value);
}

Json canonical_json(const CanonicalElement& c, const Group& group) {
  return {{"user", integers_json(group.to_user(c.embed(group.schema())))}, {"primary", repeat_free_json(c)}};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_canon(const std::string& text, const std::string& literal, const CliConfig& config, std::ostream& out) {
  const Group group = Group::parse(text);
  const Element e = group.from_user(parse_integer_list(literal));
  ReductionTrace trace;
  const auto canonical = canonicalize(e, group.schema(), config.trace ? &trace : nullptr);
  const auto user = group.to_user(canonical.embed(group.schema()));
  const auto order = element_order(e, group.schema());

  if (config.format == Format::Json) {
    Json j;
    j["group"] = text;
    j["element"] = integers_json(group.to_user(e));
    j["canonical"] = integers_json(user);
    j["primary"] = repeat_free_json(canonical);
    j["d"] = group.schema().free_rank > 0 ? integer_json(canonical.d) : Json(nullptr);
    j["conforming"] = canonical.conforming;
    j["order"] = order_json(order);
    if (config.trace) j["trace"] = trace_json(trace);
    emit(out, j);
    return kSuccess;
  }
  out << "canonical: " << tuple_text(user) << '\n';
  out << "primary: " << primary_text(canonical) << '\n';
  if (group.schema().free_rank > 0) out << "d: " << canonical.d << '\n';
  out << "conforming: " << (canonical.conforming ? "yes" : "no") << '\n';
  out << "order: " << (order.is_infinite() ? std::string("infinite") : order.value->get_str()) << '\n';
  if (config.trace) {
    for (const auto& step : trace) {
      out << "  " << to_string(step.kind);
      if (step.prime) out << " p=" << *step.prime;
      if (step.position) out << " at " << *step.position;
      out << ": " << tuple_text(step.before) << " -> " << tuple_text(step.after) << '\n';
    }
  }
  return kSuccess;
}

int cmd_equiv(const std::string& text, const std::vector<std::string>& literals, const CliConfig& config,
              std::ostream& out, std::ostream& err) {
  const Group group = Group::parse(text);
  if (literals.size() != 2) {
    err << "equiv needs exactly two --element options\n";
    return kUsageError;
  }
  const Element a = group.from_user(parse_integer_list(literals[0]));
  const Element b = group.from_user(parse_integer_list(literals[1]));
  const auto result = are_equivalent(a, b, group.schema());
  const auto user_a = group.to_user(result.first.embed(group.schema()));
  const auto user_b = group.to_user(result.second.embed(group.schema()));

  if (config.format == Format::Json) {
    Json j;
    j["group"] = text;
    j["elements"] = Json::array({integers_json(group.to_user(a)), integers_json(group.to_user(b))});
    j["canonical"] = Json::array({integers_json(user_a), integers_json(user_b)});
    j["equivalent"] = result.equivalent;
    j["caveat"] = result.caveat;
    emit(out, j);
  } else {
    out << (result.equivalent ? "equivalent" : "not equivalent") << ": " << tuple_text(user_a)
        << (result.equivalent ? " = " : " != ") << tuple_text(user_b) << '\n';
    if (result.caveat) out << "caveat: a canonical form is non-conforming\n";
  }
  return result.equivalent ? kSuccess : kFalse;
}

int cmd_count(const std::string& text, bool detail, const CliConfig& config, std::ostream& out) {
  const Group group = Group::parse(text);
  const auto count = count_classes(group.schema());

  if (config.format == Format::Json) {
    Json per_prime = Json::array();
    for (const auto& pc : count.per_prime) {
      Json entry{{"p", integer_json(pc.p)}, {"r1", pc.gaps.r1}, {"gaps", pc.gaps.gaps}, {"count", integer_json(pc.count)}};
      if (detail) {
        entry["by_nonzero_terms"] = integers_json(nonzero_term_histogram(pc.gaps));
        Json last = Json::array();
        for (std::size_t j = 2; j <= pc.gaps.layer_count(); ++j)
          last.push_back({{"j", j}, {"count", integer_json(count_last_nonzero(pc.gaps, j))}});
        entry["by_last_nonzero"] = std::move(last);
      }
      per_prime.push_back(std::move(entry));
    }
    emit(out, {{"group", text}, {"per_prime", std::move(per_prime)}, {"total", integer_json(count.total)}});
    return kSuccess;
  }

  out << text << ": " << count.total << " automorphism classes\n";
  for (const auto& pc : count.per_prime) {
    out << "  p = " << pc.p << ": r1 = " << pc.gaps.r1 << ", gaps = " << list_text(pc.gaps.gaps)
        << ", classes = " << pc.count << '\n';
    if (!detail) continue;
    const auto histogram = nonzero_term_histogram(pc.gaps);
    out << "    +------------------+--------------+\n"
        << "    | # non-zero terms | # of classes |\n"
        << "    +------------------+--------------+\n";
    for (std::size_t t = 0; t < histogram.size(); ++t) {
      std::ostringstream row;
      row << "    | " << std::setw(16) << t << " | " << std::setw(12) << histogram[t].get_str() << " |\n";
      out << row.str();
    }
    out << "    +------------------+--------------+\n";
    for (std::size_t j = 2; j <= pc.gaps.layer_count(); ++j)
      out << "    last non-zero term at " << j << ": " << count_last_nonzero(pc.gaps, j) << '\n';
  }
  return kSuccess;
}

int cmd_enumerate(const std::string& text, const CliConfig& config, std::ostream& out) {
  const Group group = Group::parse(text);
  const auto all = enumerate_representatives(group.schema());
  if (config.format == Format::Json) {
    Json j = Json::array();
    for (const auto& c : all) j.push_back(canonical_json(c, group));
    emit(out, j);
    return kSuccess;
  }
  for (const auto& c : all) out << tuple_text(group.to_user(c.embed(group.schema()))) << '\n';
  return kSuccess;
}

oracle::Limits limits_for(const CliConfig& config) {
  oracle::Limits limits;
  limits.max_order = Integer(std::to_string(config.max_order));
  return limits;
}

int cmd_orbits(const std::string& text, const CliConfig& config, std::ostream& out) {
  const Group group = Group::parse(text);
  const auto partition = oracle::all_orbits(group.schema(), limits_for(config));
  std::vector<std::size_t> sizes(partition.orbit_count(), 0);
  for (const auto id : partition.orbit_of) ++sizes[id];

  if (config.format == Format::Json) {
    Json orbits = Json::array();
    for (std::size_t o = 0; o < partition.orbit_count(); ++o) {
      const auto rep = group.to_user(partition.element(partition.representatives[o]));
      orbits.push_back({{"representative", integers_json(rep)}, {"size", sizes[o]}});
    }
    emit(out, {{"group", text},
               {"order", partition.group_order()},
               {"orbit_count", partition.orbit_count()},
               {"orbits", std::move(orbits)}});
    return kSuccess;
  }
  out << text << ": " << partition.orbit_count() << " orbits on " << partition.group_order() << " elements\n";
  for (std::size_t o = 0; o < partition.orbit_count(); ++o)
    out << "  " << tuple_text(group.to_user(partition.element(partition.representatives[o]))) << "  size "
        << sizes[o] << '\n';
  return kSuccess;
}

int cmd_verify(const std::string& text, const CliConfig& config, std::ostream& out) {
  const Group group = Group::parse(text);
  const auto report = oracle::verify_schema(group.schema(), limits_for(config));
  if (config.format == Format::Json) {
    emit(out, report_json(report));
  } else {
    out << text << ": " << report.orbit_count << " orbits, " << report.class_count << " classes by formula\n";
    for (const auto& check : report.checks) out << "  " << (check.pass ? "PASS " : "FAIL ") << check.name << '\n';
  }
  return report.passed() ? kSuccess : kFalse;
}

int cmd_info(const std::string& text, const CliConfig& config, std::ostream& out) {
  const Group group = Group::parse(text);
  const auto& schema = group.schema();
  if (config.format == Format::Json) {
    Json primes = Json::array();
    for (const auto& c : schema.primes) {
      const auto g = gaps(c);
      Json remainder = Json::array();
      for (const auto& layer : c.layers)
        if (layer.multiplicity > 1) remainder.push_back({{"exponent", layer.exponent}, {"multiplicity", layer.multiplicity - 1}});
      primes.push_back({{"p", integer_json(c.p)},
                        {"repeat_free", c.repeat_free_exponents()},
                        {"remainder", std::move(remainder)},
                        {"r1", g.r1},
                        {"gaps", g.gaps}});
    }
    emit(out, {{"group", text},
               {"primary", describe(schema)},
               {"order", schema.is_finite() ? integer_json(schema.torsion_order()) : Json("infinite")},
               {"primes", std::move(primes)},
               {"free_rank", schema.free_rank}});
    return kSuccess;
  }
  out << "group: " << text << '\n' << "primary decomposition: " << describe(schema) << '\n';
  for (const auto& c : schema.primes) {
    const auto g = gaps(c);
    PrimarySchema rf{{PrimaryComponent{c.p, {}}}, 0};
    PrimarySchema rm{{PrimaryComponent{c.p, {}}}, 0};
    for (const auto& layer : c.layers) {
      rf.primes[0].layers.push_back({layer.exponent, 1});
      if (layer.multiplicity > 1) rm.primes[0].layers.push_back({layer.exponent, layer.multiplicity - 1});
    }
    out << "  p = " << c.p << ": repeat-free " << describe(rf) << ", remainder "
        << (rm.primes[0].layers.empty() ? std::string("trivial") : describe(rm)) << ", r1 = " << g.r1
        << ", gaps = " << list_text(g.gaps) << '\n';
  }
  out << "free rank: " << schema.free_rank << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical representatives of automorphism classes in finitely generated abelian groups",
               "abelcanon"};
  app.require_subcommand(1);

  CliConfig config;
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string group;
  std::vector<std::string> elements;
  bool detail = false;

  const auto with_group = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--group,-g", group, "Group, e.g. \"Z8 x Z4^2 x Z\"")->required();
    return sub;
  };
  const auto with_cap = [&](CLI::App* sub) {
    sub->add_option("--max-order", config.max_order, "Largest group order the oracle walks")
        ->envname("ABELCANON_MAX_ORDER")
        ->check(CLI::PositiveNumber);
  };

  auto* canon = with_group(app.add_subcommand("canon", "Canonical representative of an element"));
  canon->add_option("--element,-e", elements, "Comma-separated coordinates")->required()->expected(1);
  canon->add_flag("--trace", config.trace, "Include the reduction trace");

  auto* equiv = with_group(app.add_subcommand("equiv", "Decide automorphic equivalence of two elements"));
  equiv->add_option("--element,-e", elements, "Comma-separated coordinates (twice)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* count = with_group(app.add_subcommand("count", "Count automorphism classes"));
  count->add_flag("--detail", detail, "Break counts down by non-zero terms and last non-zero term");

  auto* enumerate = with_group(app.add_subcommand("enumerate", "List every representative element"));
  auto* orbits = with_group(app.add_subcommand("orbits", "Brute-force automorphism orbits"));
  with_cap(orbits);
  auto* verify = with_group(app.add_subcommand("verify", "Cross-check canonical forms against the orbit oracle"));
  with_cap(verify);
  auto* info = with_group(app.add_subcommand("info", "Primary decomposition and repeat-free split"));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  config.format = format == "text" ? Format::Text : Format::Json;

  try {
    if (canon->parsed()) return cmd_canon(group, elements.at(0), config, out);
    if (equiv->parsed()) return cmd_equiv(group, elements, config, out, err);
    if (count->parsed()) return cmd_count(group, detail, config, out);
    if (enumerate->parsed()) return cmd_enumerate(group, config, out);
    if (orbits->parsed()) return cmd_orbits(group, config, out);
    if (verify->parsed()) return cmd_verify(group, config, out);
    if (info->parsed()) return cmd_info(group, config, out);
  } catch (const ParseError& e) {
    err << "error: group: " << e.what() << '\n';
    return kUsageError;
  } catch (const ElementError& e) {
    err << "error: element: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace abelcanon::cli
