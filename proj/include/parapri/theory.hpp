#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "parapri/formula.hpp"

#include "json.hpp"

namespace parapri {

/// (higher, lower): the first index has strictly higher priority.
using Edge = std::pair<std::size_t, std::size_t>;

/// Smallest transitive superset of `edges`. Throws CycleError if the closure
/// contains a pair (x, x).
std::set<Edge> transitive_closure(const std::set<Edge>& edges);

/// A finite strict partial order over labeled indices 0..n-1, stored as the
/// covering edges that were entered plus the precomputed transitive closure.
class PriorityOrder {
 public:
  PriorityOrder() = default;
  /// Throws ValidationError on duplicate labels or out-of-range endpoints,
  /// CycleError on a cycle.
  PriorityOrder(std::vector<std::string> labels, std::set<Edge> edges);

  /// An order over `labels` with no edges.
  static PriorityOrder parallel(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Edges as entered.
  const std::set<Edge>& edges() const { return edges_; }
  const std::set<Edge>& closure() const { return closure_; }
  bool empty() const { return edges_.empty(); }

  /// True iff `higher` strictly dominates `lower` in the closure.
  bool dominates(std::size_t higher, std::size_t lower) const;

 private:
  std::vector<std::string> labels_;
  std::set<Edge> edges_;
  std::set<Edge> closure_;
  std::vector<std::vector<bool>> dominates_;
};

struct LabeledFormula {
  std::string label;
  Formula formula;

  friend bool operator==(const LabeledFormula&, const LabeledFormula&) = default;
};

/// Base formulas, an indexed default tuple with a strict priority order over
/// its labels, fixtures, and the atom universe they live in.
class Theory {
 public:
  Theory() = default;
  /// Validates every invariant; throws ValidationError / CycleError.
  /// `edges` index into `defaults`.
  Theory(Universe universe, std::vector<Formula> base, std::vector<LabeledFormula> defaults,
         std::set<Edge> edges, std::vector<LabeledFormula> fixtures);

  /// Same, with the universe taken as every mentioned atom in first-mention
  /// order (base, then defaults, then fixtures).
  static Theory with_mentioned_atoms(std::vector<Formula> base, std::vector<LabeledFormula> defaults,
                                     std::set<Edge> edges, std::vector<LabeledFormula> fixtures);

  const Universe& universe() const { return universe_; }
  const std::vector<Formula>& base() const { return base_; }
  const std::vector<LabeledFormula>& defaults() const { return defaults_; }
  const PriorityOrder& priority() const { return priority_; }
  const std::vector<LabeledFormula>& fixtures() const { return fixtures_; }

  std::vector<Formula> default_formulas() const;
  std::vector<Formula> fixture_formulas() const;

  /// Copies with one part replaced (the result is re-validated).
  Theory with_base(std::vector<Formula> base) const;
  Theory with_universe(Universe universe) const;
  Theory with_parallel_defaults(std::vector<LabeledFormula> defaults) const;

 private:
  Universe universe_;
  std::vector<Formula> base_;
  std::vector<LabeledFormula> defaults_;
  PriorityOrder priority_;
  std::vector<LabeledFormula> fixtures_;
};

/// A default schema `label[X,Y]: body` whose body may mention the parameters
/// as atom arguments.
struct Schema {
  std::string label;
  std::vector<std::string> params;
  Formula body;
};

/// A theory whose defaults are (partly) schemas over a finite domain of
/// constants. Priority edges refer to default or schema labels.
struct SchemaTheory {
  std::vector<std::string> domain;
  std::optional<std::vector<std::string>> atoms;  // explicit `atoms:` line
  std::vector<Formula> base;
  std::vector<LabeledFormula> defaults;           // ground defaults, if any
  std::vector<Schema> schemas;
  std::vector<std::pair<std::string, std::string>> prefer;  // (higher, lower) labels
  std::vector<LabeledFormula> fixtures;
};

/// Replaces every schema by its instances over the domain, labeled
/// `schema[c1,...]`. Instances of one schema are mutually unordered; an edge
/// between two labels is lifted to every pair of their instances.
/// Throws ValidationError on an empty domain with schemas present.
Theory ground(const SchemaTheory& s);

/// Parses the line-oriented theory format. Returns a SchemaTheory when a
/// `domain:` line is present.
std::variant<Theory, SchemaTheory> parse_theory(std::string_view text);

/// parse_theory, grounding a SchemaTheory.
Theory load_theory(std::string_view text);

/// Theory file text with an explicit `atoms:` line and covering edges.
std::string print_theory(const Theory& t);

/// Keys: universe, base, defaults, edges, fixtures.
nlohmann::json theory_to_json(const Theory& t);

/// Replaces each fixture F_k by the parallel pair of defaults F_k and ~F_k,
/// labeled `fix_<k>_pos` / `fix_<k>_neg`.
Theory fixtures_to_defaults(const Theory& t);

}  // namespace parapri
