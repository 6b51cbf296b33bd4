#include "parapri/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "parapri/circumscription.hpp"
#include "parapri/error.hpp"
#include "parapri/lp_encoder.hpp"
#include "parapri/preorder.hpp"
#include "parapri/specificity.hpp"
#include "parapri/theory.hpp"
#include "parapri/transform.hpp"

namespace parapri {

namespace {

// Raised for a failed internal cross-check (maps to exit 3).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json output_json(const Theory& parallel, const TransformOutput& w, const PriorityOrder& source) {
  nlohmann::json j = theory_to_json(parallel);
  j["provenance"] = nlohmann::json::array();
  const auto labels = w.labels();
  for (std::size_t k = 0; k < w.formulas.size(); ++k) {
    const auto& p = w.provenance[k];
    std::vector<std::string> seq;
    for (auto s : p.sequence) seq.push_back(source.labels()[s]);
    j["provenance"].push_back(
        {{"label", labels[k]}, {"source", source.labels()[p.source]}, {"sequence", seq}, {"bits", p.bits}});
  }
  return j;
}

struct Options {
  std::string file;
  std::string format = "text";
  std::size_t all = 0;
  bool size_only = false;
  std::string query;
  std::string assert_answer;
  bool preorder = false;
  std::vector<std::string> project;
  bool corrupt = false;
  std::size_t k = 2;
  std::string variant = "violation";
};

int cmd_transform(const Options& o, const Limits& limits, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  if (o.size_only) {
    const SizeReport size = output_size(t.priority(), limits.top_heavy_threshold);
    if (o.format == "json") {
      out << nlohmann::json{{"size", size.total}, {"saturated", size.saturated}, {"m", size.dominator_counts}}.dump(2)
          << '\n';
    } else {
      out << (size.saturated ? std::string(">=18446744073709551615") : std::to_string(size.total)) << '\n';
    }
    return kExitOk;
  }
  const auto defaults = t.default_formulas();
  std::vector<TransformOutput> members;
  if (o.all > 0) {
    members = transform_all(defaults, t.priority(), o.all, limits);
  } else {
    members.push_back(transform_canonical(defaults, t.priority(), limits));
  }
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& w : members) arr.push_back(output_json(w.to_theory(t), w, t.priority()));
    out << (o.all > 0 ? nlohmann::json{{"members", arr}} : arr.front()).dump(2) << '\n';
    return kExitOk;
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (o.all > 0) out << "# member " << (k + 1) << '\n';
    out << print_theory(members[k].to_theory(t));
  }
  return kExitOk;
}

int cmd_query(const Options& o, const Limits& limits, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  const Formula q = parse_formula(o.query);
  const bool direct = skeptical_entails(t, q, limits);
  const TransformOutput w = transform_canonical(t.default_formulas(), t.priority(), limits);
  const bool via_parallel = skeptical_entails(w.to_theory(t), q, limits);
  if (direct != via_parallel) {
    throw InvariantViolation("prioritized and transformed theories disagree on the query");
  }
  out << (direct ? "yes" : "no") << '\n';
  if (o.assert_answer == "yes" && !direct) return kExitFailure;
  if (o.assert_answer == "no" && direct) return kExitFailure;
  return kExitOk;
}

int cmd_models(const Options& o, const Limits& limits, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  const PreferredModelSet set = preferred_models(t, limits);
  if (o.format == "json") {
    out << set.to_json().dump(2) << '\n';
  } else {
    out << set.str();
  }
  return kExitOk;
}

int cmd_check_equiv(const Options& o, const Limits& limits, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  const auto defaults = t.default_formulas();
  std::vector<TransformOutput> members;
  if (o.all > 0) {
    members = transform_all(defaults, t.priority(), o.all, limits);
  } else {
    members.push_back(transform_canonical(defaults, t.priority(), limits));
  }
  bool equivalent = true;
  for (auto& w : members) {
    if (o.corrupt && !w.formulas.empty()) w.formulas.front() = Formula::negation(w.formulas.front());
    if (o.preorder) {
      PreorderSpec prioritized{t.defaults(), t.priority(), {}};
      equivalent = preorder_equivalent(prioritized, PreorderSpec::parallel(w.formulas), t.universe(), limits);
    } else {
      std::optional<std::vector<std::string>> project;
      if (!o.project.empty()) project = o.project;
      equivalent = circ_equivalent(t, w.to_theory(t), project, limits);
    }
    if (!equivalent) break;
  }
  out << (equivalent ? "equivalent" : "not-equivalent") << '\n';
  return equivalent ? kExitOk : kExitFailure;
}

int cmd_stats(const Options& o, const Limits& limits, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  const PriorityOrder& order = t.priority();
  const SizeReport size = output_size(order, limits.top_heavy_threshold);
  const OrderClassification shape = classify(order);
  out << "defaults: " << order.size() << '\n';
  out << "edges: " << order.edges().size() << " (closure " << order.closure().size() << ")\n";
  out << "m_i:";
  for (std::size_t i = 0; i < order.size(); ++i) out << ' ' << order.labels()[i] << '=' << size.dominator_counts[i];
  out << '\n';
  out << "max m_i: " << size.max_dominators << '\n';
  out << "size: " << (size.saturated ? std::string(">=18446744073709551615") : std::to_string(size.total)) << '\n';
  out << "top-heavy: " << (size.top_heavy ? "yes" : "no") << " (threshold " << limits.top_heavy_threshold << ")\n";
  out << "classification: " << shape_name(shape.shape) << '\n';
  out << "layered: " << (shape.layered ? "yes" : "no") << '\n';
  out << "columnar: " << (shape.columnar ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_prune(const Options& o, const Limits& limits, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  if (!t.fixtures().empty()) throw ValidationError("prune takes a fixture-free theory");
  const TransformOutput w = transform_canonical(t.default_formulas(), t.priority(), limits);
  const PruneReport report = prune_redundant(w, t.base(), t.universe(), o.k, limits);
  out << report.str(w.labels());
  return kExitOk;
}

int cmd_encode_ab(const Options& o, const Limits&, std::ostream& out) {
  const Theory t = load_theory(read_file(o.file));
  out << print_theory(encode_abnormality(t, parse_variant(o.variant)));
  return kExitOk;
}

int cmd_encode_lp(const Options& o, const Limits&, std::ostream& out) {
  const Program p = parse_program(read_file(o.file));
  out << print_theory(encode_stratified(p));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prioritized default circumscription: transform to parallel defaults and reason by brute force",
               "parapri"};
  app.require_subcommand(1);
  Options o;

  auto* transform = app.add_subcommand("transform", "Print the parallel theory produced by the transform");
  transform->add_option("file", o.file, "Theory file")->required();
  transform->add_option("--all", o.all, "Print the first N members instead of the canonical one");
  transform->add_flag("--size-only", o.size_only, "Print only the number of output defaults");
  transform->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* query = app.add_subcommand("query", "Skeptical entailment of a closed formula");
  query->add_option("file", o.file, "Theory file")->required();
  query->add_option("formula", o.query, "Query formula")->required();
  query->add_option("--assert", o.assert_answer, "Exit 1 unless the answer matches")
      ->check(CLI::IsMember({"yes", "no"}));

  auto* models = app.add_subcommand("models", "List the preferred models");
  models->add_option("file", o.file, "Theory file")->required();
  models->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* check = app.add_subcommand("check-equiv", "Compare a theory with its transform");
  check->add_option("file", o.file, "Theory file")->required();
  check->add_flag("--preorder", o.preorder, "Compare the pre-orders instead of the circumscriptions");
  check->add_option("--project", o.project, "Compare preferred models on these atoms only")->delimiter(',');
  check->add_option("--all", o.all, "Check the first N members of the transform");
  check->add_flag("--corrupt", o.corrupt, "Negate the first transformed default (negative control)");

  auto* stats = app.add_subcommand("stats", "Priority-order statistics and transform size");
  stats->add_option("file", o.file, "Theory file")->required();

  auto* prune = app.add_subcommand("prune", "Transform, then drop redundant parallel defaults");
  prune->add_option("file", o.file, "Theory file")->required();
  prune->add_option("-k", o.k, "Largest witness subset for positive combinations");

  auto* encode_ab = app.add_subcommand("encode-ab", "Abnormality-with-cancellation encoding");
  encode_ab->add_option("file", o.file, "Theory file")->required();
  encode_ab->add_option("--variant", o.variant)->check(CLI::IsMember({"violation", "class", "class-positive"}));

  auto* encode_lp = app.add_subcommand("encode-lp", "Encode a stratified logic program as a theory");
  encode_lp->add_option("file", o.file, "Program file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Limits limits = Limits::from_env();
    if (transform->parsed()) return cmd_transform(o, limits, out);
    if (query->parsed()) return cmd_query(o, limits, out);
    if (models->parsed()) return cmd_models(o, limits, out);
    if (check->parsed()) return cmd_check_equiv(o, limits, out);
    if (stats->parsed()) return cmd_stats(o, limits, out);
    if (prune->parsed()) return cmd_prune(o, limits, out);
    if (encode_ab->parsed()) return cmd_encode_ab(o, limits, out);
    if (encode_lp->parsed()) return cmd_encode_lp(o, limits, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCap;
  }
  return kExitUsage;
}

}  // namespace parapri
