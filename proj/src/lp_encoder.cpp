#include "parapri/lp_encoder.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "parapri/error.hpp"

namespace parapri {

std::vector<std::string> Program::atoms() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  for (const auto& c : clauses) {
    add(c.head);
    for (const auto& b : c.positive) add(b);
    for (const auto& b : c.negative) add(b);
  }
  return out;
}

// {{{ Parsing

namespace {

class ProgramReader {
 public:
  explicit ProgramReader(std::string_view text) : text_(text) {}

  Program read() {
    Program p;
    for (skip(); pos_ < text_.size(); skip()) p.clauses.push_back(clause());
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%' || c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail(pos_ >= text_.size() ? "unexpected end of program" : "expected an atom");
    }
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string atom() {
    std::string name = ident();
    if (eat("(")) {
      name += '(';
      for (bool first = true;; first = false) {
        if (!first) name += ',';
        name += ident();
        if (eat(",")) continue;
        if (!eat(")")) fail("expected ')' or ','");
        break;
      }
      name += ')';
    }
    return name;
  }

  Clause clause() {
    Clause c;
    c.head = atom();
    if (eat(":-")) {
      do {
        std::string a = atom();
        if (a == "not") {
          c.negative.push_back(atom());
        } else {
          c.positive.push_back(std::move(a));
        }
      } while (eat(","));
    }
    if (!eat(".")) fail("expected '.' at end of clause");
    return c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) { return ProgramReader(text).read(); }

// }}}

std::size_t Stratification::levels() const {
  std::size_t top = 0;
  for (const auto& [_, s] : stratum) top = std::max(top, s + 1);
  return top;
}

namespace {

// Dependency graph head -> body atom, each edge marked negative or not.
struct DepGraph {
  std::vector<std::string> atoms;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::pair<std::size_t, bool>>> out;  // (target, negative)

  explicit DepGraph(const Program& p) : atoms(p.atoms()) {
    for (std::size_t k = 0; k < atoms.size(); ++k) index[atoms[k]] = k;
    out.resize(atoms.size());
    for (const auto& c : p.clauses) {
      const auto h = index[c.head];
      for (const auto& b : c.positive) out[h].emplace_back(index[b], false);
      for (const auto& b : c.negative) out[h].emplace_back(index[b], true);
    }
  }
};

// Tarjan SCC; returns component id per node.
std::vector<std::size_t> components(const DepGraph& g) {
  const std::size_t n = g.atoms.size();
  std::vector<std::size_t> comp(n, SIZE_MAX), low(n), order(n, SIZE_MAX);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0, next_comp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& [w, _] : g.out[v]) {
      if (order[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      for (;;) {
        const auto w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = next_comp;
        if (w == v) break;
      }
      ++next_comp;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] == SIZE_MAX) visit(v);
  }
  return comp;
}

// A path from `from` to `to` inside one component (BFS).
std::vector<std::size_t> path_within(const DepGraph& g, const std::vector<std::size_t>& comp, std::size_t from,
                                     std::size_t to) {
  std::vector<std::size_t> parent(g.atoms.size(), SIZE_MAX);
  std::vector<std::size_t> queue = {from};
  parent[from] = from;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto v = queue[q];
    if (v == to) break;
    for (const auto& [w, _] : g.out[v]) {
      if (comp[w] == comp[from] && parent[w] == SIZE_MAX) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> path;
  for (auto v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Stratification stratify(const Program& p) {
  const DepGraph g(p);
  const auto comp = components(g);
  for (std::size_t v = 0; v < g.atoms.size(); ++v) {
    for (const auto& [w, negative] : g.out[v]) {
      if (negative && comp[v] == comp[w]) {
        // v -not-> w, then back from w to v
        std::vector<std::string> witness = {g.atoms[v]};
        for (auto x : path_within(g, comp, w, v)) witness.push_back(g.atoms[x]);
        std::string msg = "program is not stratified: negative cycle";
        for (const auto& a : witness) msg += " " + a;
        throw NotStratifiedError(msg, std::move(witness));
      }
    }
  }
  // Least levels by fixpoint; terminates because no cycle goes through negation.
  std::vector<std::size_t> level(g.atoms.size(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < g.atoms.size(); ++v) {
      for (const auto& [w, negative] : g.out[v]) {
        const std::size_t need = level[w] + (negative ? 1 : 0);
        if (level[v] < need) {
          level[v] = need;
          changed = true;
        }
      }
    }
  }
  Stratification s;
  for (std::size_t v = 0; v < g.atoms.size(); ++v) s.stratum[g.atoms[v]] = level[v];
  return s;
}

Theory encode_stratified(const Program& p) {
  const Stratification strata = stratify(p);
  const auto atoms = p.atoms();
  std::vector<Formula> base;
  for (const auto& c : p.clauses) {
    std::vector<Formula> body;
    for (const auto& b : c.positive) body.push_back(Formula::atom(b));
    for (const auto& b : c.negative) body.push_back(Formula::negation(Formula::atom(b)));
    const Formula head = Formula::atom(c.head);
    base.push_back(body.empty() ? head : Formula::implication(conjoin(body), head));
  }
  std::vector<LabeledFormula> defaults;
  for (const auto& a : atoms) defaults.push_back({"min_" + a, Formula::negation(Formula::atom(a))});
  std::set<Edge> edges;
  for (std::size_t hi = 0; hi < atoms.size(); ++hi) {
    for (std::size_t lo = 0; lo < atoms.size(); ++lo) {
      if (strata.stratum.at(atoms[hi]) < strata.stratum.at(atoms[lo])) edges.emplace(hi, lo);
    }
  }
  return Theory(Universe(atoms), std::move(base), std::move(defaults), std::move(edges), {});
}

Interpretation perfect_model(const Program& p) {
  const Stratification strata = stratify(p);
  const Universe universe(p.atoms());
  std::vector<bool> truth(universe.size(), false);
  auto holds = [&](const std::string& a) { return bool(truth[*universe.index_of(a)]); };
  for (std::size_t level = 0; level < strata.levels(); ++level) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : p.clauses) {
        if (strata.stratum.at(c.head) != level || holds(c.head)) continue;
        const bool fires = std::all_of(c.positive.begin(), c.positive.end(), holds) &&
                           std::none_of(c.negative.begin(), c.negative.end(), holds);
        if (fires) {
          truth[*universe.index_of(c.head)] = true;
          changed = true;
        }
      }
    }
  }
  std::vector<std::string> true_atoms;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (truth[k]) true_atoms.push_back(universe.atoms()[k]);
  }
  return Interpretation::from_true_atoms(universe, true_atoms);
}

}  // namespace parapri
