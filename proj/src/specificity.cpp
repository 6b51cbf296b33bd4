#include "parapri/specificity.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parapri/circumscription.hpp"
#include "parapri/error.hpp"

namespace parapri {

std::string_view reason_name(DropReason r) {
  switch (r) {
    case DropReason::kTautologicallyTrue: return "tautologically-true";
    case DropReason::kTautologicallyFalse: return "tautologically-false";
    case DropReason::kPositiveCombination: return "base-equivalent-to-positive-combination";
  }
  return "?";
}

std::string PruneReport::str(std::span<const std::string> labels) const {
  auto name = [&](std::size_t k) { return k < labels.size() ? labels[k] : "#" + std::to_string(k + 1); };
  std::ostringstream out;
  out << "kept " << kept.size() << '\n';
  for (std::size_t n = 0; n < kept.size(); ++n) out << "  " << name(kept_indices[n]) << ": " << kept[n] << '\n';
  out << "dropped " << dropped.size() << '\n';
  for (const auto& d : dropped) {
    out << "  " << name(d.index) << ": " << d.formula << "  [" << reason_name(d.reason);
    if (d.reason == DropReason::kPositiveCombination) {
      out << " of";
      for (auto w : d.witnesses) out << ' ' << name(w);
      out << " = " << d.combination;
    }
    out << "]\n";
  }
  return out.str();
}

namespace {

using TruthTable = std::vector<bool>;  // one entry per base model

// f agrees on every base model with some monotone function of the witnesses'
// truth values. On success `combination` receives the monotone DNF.
bool positive_combination(const TruthTable& f, const std::vector<const TruthTable*>& witnesses,
                          const std::vector<Formula>& witness_formulas, Formula& combination) {
  const std::size_t width = witnesses.size();
  const std::size_t cells = std::size_t{1} << width;
  std::vector<int> value(cells, -1);
  for (std::size_t m = 0; m < f.size(); ++m) {
    std::size_t key = 0;
    for (std::size_t w = 0; w < width; ++w) key |= std::size_t{(*witnesses[w])[m]} << w;
    if (value[key] == -1) {
      value[key] = f[m];
    } else if (value[key] != static_cast<int>(f[m])) {
      return false;
    }
  }
  for (std::size_t a = 0; a < cells; ++a) {
    if (value[a] != 1) continue;
    for (std::size_t b = 0; b < cells; ++b) {
      // monotone: nothing above a true point may be false
      if ((a & b) == a && value[b] == 0) return false;
    }
  }
  std::vector<Formula> terms;
  for (std::size_t a = 0; a < cells; ++a) {
    if (value[a] != 1) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < cells && minimal; ++b) {
      if (b != a && (a & b) == b && value[b] == 1) minimal = false;
    }
    if (!minimal) continue;
    std::vector<Formula> conj;
    for (std::size_t w = 0; w < width; ++w) {
      if ((a >> w) & 1u) conj.push_back(witness_formulas[w]);
    }
    terms.push_back(conjoin(conj));
  }
  combination = disjoin(terms);
  return true;
}

// Calls fn on each subset of `pool` of size 1..k (as index lists), stopping
// when fn returns true.
template <class Fn>
bool for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t size) -> bool {
    if (chosen.size() == size) return fn(chosen);
    for (std::size_t p = from; p < pool.size(); ++p) {
      chosen.push_back(pool[p]);
      if (rec(p + 1, size)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= k && size <= pool.size(); ++size) {
    chosen.clear();
    if (rec(0, size)) return true;
  }
  return false;
}

PruneReport prune_in_order(std::span<const Formula> w, const std::vector<std::size_t>& scan,
                           std::span<const Formula> base, const Universe& universe, std::size_t k,
                           const Limits& limits) {
  const auto models = models_of(base, universe, limits);
  std::vector<TruthTable> truth(w.size(), TruthTable(models.size()));
  for (std::size_t n = 0; n < w.size(); ++n) {
    const CompiledFormula f(w[n], universe);
    for (std::size_t m = 0; m < models.size(); ++m) truth[n][m] = f(models[m].bits());
  }

  std::vector<bool> alive(w.size(), true);
  std::vector<DroppedFormula> dropped;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto n : scan) {
      if (!alive[n]) continue;
      const auto& t = truth[n];
      if (std::all_of(t.begin(), t.end(), [](bool b) { return b; })) {
        dropped.push_back({n, w[n], DropReason::kTautologicallyTrue, {}, {}});
      } else if (std::none_of(t.begin(), t.end(), [](bool b) { return b; })) {
        dropped.push_back({n, w[n], DropReason::kTautologicallyFalse, {}, {}});
      } else {
        std::vector<std::size_t> pool;
        for (std::size_t o = 0; o < w.size(); ++o) {
          if (o != n && alive[o]) pool.push_back(o);
        }
        Formula combination;
        std::vector<std::size_t> witnesses;
        const bool found = for_each_subset(pool, k, [&](const std::vector<std::size_t>& subset) {
          std::vector<const TruthTable*> tables;
          std::vector<Formula> formulas;
          for (auto o : subset) {
            tables.push_back(&truth[o]);
            formulas.push_back(w[o]);
          }
          if (!positive_combination(t, tables, formulas, combination)) return false;
          witnesses = subset;
          return true;
        });
        if (!found) continue;
        dropped.push_back({n, w[n], DropReason::kPositiveCombination, witnesses, combination});
      }
      alive[n] = false;
      changed = true;
    }
  }

  PruneReport report;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (!alive[n]) continue;
    report.kept_indices.push_back(n);
    report.kept.push_back(w[n]);
  }
  report.dropped = std::move(dropped);

  auto parallel = [&](const std::vector<Formula>& fs) {
    std::vector<LabeledFormula> defaults;
    for (std::size_t n = 0; n < fs.size(); ++n) defaults.push_back({"w" + std::to_string(n), fs[n]});
    return Theory(universe, std::vector<Formula>(base.begin(), base.end()), std::move(defaults), {}, {});
  };
  if (!circ_equivalent(parallel(report.kept), parallel(std::vector<Formula>(w.begin(), w.end())), std::nullopt,
                       limits)) {
    throw std::logic_error("redundancy pruning changed the preferred models");
  }
  return report;
}

}  // namespace

PruneReport prune_redundant(std::span<const Formula> w, std::span<const Formula> base, const Universe& universe,
                            std::size_t k, const Limits& limits) {
  std::vector<std::size_t> scan(w.size());
  std::iota(scan.rbegin(), scan.rend(), 0);
  return prune_in_order(w, scan, base, universe, k, limits);
}

PruneReport prune_redundant(const TransformOutput& w, std::span<const Formula> base, const Universe& universe,
                            std::size_t k, const Limits& limits) {
  if (w.provenance.size() != w.formulas.size()) throw ValidationError("provenance does not match formulas");
  std::vector<std::size_t> scan(w.formulas.size());
  std::iota(scan.begin(), scan.end(), 0);
  std::stable_sort(scan.begin(), scan.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = w.provenance[a];
    const auto& pb = w.provenance[b];
    if (pa.source != pb.source) return pa.source > pb.source;
    if (pa.bits != pb.bits) return pa.bits > pb.bits;
    return a > b;
  });
  return prune_in_order(w.formulas, scan, base, universe, k, limits);
}

// {{{ Inheritance examples

InheritanceExample inheritance_example(int number) {
  if (number < 11 || number > 13) {
    throw ValidationError("unknown inheritance example " + std::to_string(number) + " (expected 11, 12 or 13)");
  }
  auto f = [](std::string_view s) { return parse_formula(s); };
  std::vector<Formula> base = {f("ostrich -> bird")};
  std::vector<LabeledFormula> prioritized = {{"e1", f("bird -> flies")}, {"e2", f("ostrich -> ~flies")}};
  std::set<Edge> edges = {{1, 0}};
  std::vector<LabeledFormula> parallel;
  std::vector<std::string> classes = {"bird", "ostrich"};

  if (number == 11) {
    parallel = {{"d1", f("bird -> (flies & ~ostrich)")}, {"d2", f("ostrich -> ~flies")}};
  } else {
    base.push_back(f("penguin -> bird"));
    prioritized.push_back({"e3", f("penguin -> ~flies")});
    edges.insert({2, 0});
    classes.push_back("penguin");
    parallel = {{"d1", f("bird -> (flies & ~ostrich & ~penguin)")},
                {"d2", f("ostrich -> ~flies")},
                {"d3", f("penguin -> ~flies")}};
  }
  if (number == 13) {
    base.push_back(f("bird -> animal"));
    prioritized.push_back({"e0", f("animal -> ~flies")});
    edges.insert({{0, 3}, {1, 3}, {2, 3}});
    classes.insert(classes.begin(), "animal");
    parallel.insert(parallel.begin(), {"d0", f("animal -> (~flies & ~bird)")});
  }

  Theory prior = Theory::with_mentioned_atoms(base, prioritized, edges, {});
  Theory par(prior.universe(), base, parallel, {}, {});
  return {std::move(prior), std::move(par), std::move(classes)};
}

std::vector<std::vector<Formula>> scenario_bases(const InheritanceExample& ex) {
  const auto& base = ex.prioritized.base();
  std::vector<std::vector<Formula>> out;
  const std::size_t n = ex.classes.size();
  std::size_t combos = 1;
  for (std::size_t k = 0; k < n; ++k) combos *= 3;
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<Formula> b = base;
    std::size_t c = code;
    for (std::size_t k = 0; k < n; ++k, c /= 3) {
      if (c % 3 == 1) b.push_back(Formula::atom(ex.classes[k]));
      if (c % 3 == 2) b.push_back(Formula::negation(Formula::atom(ex.classes[k])));
    }
    if (!models_of(b, ex.prioritized.universe()).empty()) out.push_back(std::move(b));
  }
  return out;
}

bool verify_special_case(int number, const Limits& limits) {
  const InheritanceExample ex = inheritance_example(number);
  for (const auto& base : scenario_bases(ex)) {
    if (!circ_equivalent(ex.prioritized.with_base(base), ex.parallel.with_base(base), std::nullopt, limits)) {
      return false;
    }
  }
  return true;
}

// }}}

// {{{ Abnormality encoding

std::string_view variant_name(CancellationVariant v) {
  switch (v) {
    case CancellationVariant::kViolation: return "violation";
    case CancellationVariant::kClass: return "class";
    case CancellationVariant::kClassPositive: return "class-positive";
  }
  return "?";
}

CancellationVariant parse_variant(std::string_view name) {
  if (name == "violation") return CancellationVariant::kViolation;
  if (name == "class") return CancellationVariant::kClass;
  if (name == "class-positive") return CancellationVariant::kClassPositive;
  throw ValidationError("unknown cancellation variant '" + std::string(name) + "'");
}

std::vector<Rule> rules_of(const Theory& t) {
  std::vector<Rule> rules;
  for (const auto& d : t.defaults()) {
    if (d.formula.op() != Op::kImplies) {
      throw ValidationError("default '" + d.label + "' is not of the form <class> -> <consequent>");
    }
    rules.push_back({d.label, d.formula.lhs(), d.formula.rhs()});
  }
  return rules;
}

Theory encode_abnormality(std::span<const Rule> rules, const PriorityOrder& priority, CancellationVariant variant,
                          std::span<const Formula> base, const Universe& universe) {
  if (priority.size() != rules.size()) throw ValidationError("priority order does not match the rule list");
  std::vector<std::string> atoms = universe.atoms();
  std::vector<Formula> ab;
  for (const auto& r : rules) {
    const std::string name = "ab_" + r.label;
    const bool identifier = std::all_of(name.begin(), name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
    if (!identifier) throw ValidationError("label '" + r.label + "' cannot name an abnormality atom");
    if (universe.contains(name) || std::find(atoms.begin(), atoms.end(), name) != atoms.end()) {
      throw ValidationError("abnormality atom '" + name + "' already exists");
    }
    atoms.push_back(name);
    ab.push_back(Formula::atom(name));
  }

  std::vector<Formula> out_base(base.begin(), base.end());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    out_base.push_back(Formula::implication(Formula::negation(ab[i]), rules[i].formula()));
  }
  for (const auto& [j, i] : priority.closure()) {
    Formula trigger;
    switch (variant) {
      case CancellationVariant::kViolation: trigger = Formula::negation(rules[j].formula()); break;
      case CancellationVariant::kClass: trigger = Formula::negation(rules[j].condition); break;
      case CancellationVariant::kClassPositive: trigger = rules[j].condition; break;
    }
    out_base.push_back(Formula::implication(trigger, ab[i]));
  }
  std::vector<LabeledFormula> defaults;
  for (std::size_t i = 0; i < rules.size(); ++i) defaults.push_back({"not_ab_" + rules[i].label, Formula::negation(ab[i])});
  return Theory(Universe(std::move(atoms)), std::move(out_base), std::move(defaults), {}, {});
}

Theory encode_abnormality(const Theory& t, CancellationVariant variant) {
  if (!t.fixtures().empty()) throw ValidationError("the abnormality encoding takes a fixture-free theory");
  const auto rules = rules_of(t);
  return encode_abnormality(rules, t.priority(), variant, t.base(), t.universe());
}

// }}}

}  // namespace parapri
