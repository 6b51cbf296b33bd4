#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

using parapri::Formula;
using parapri::Op;

namespace oracle {

bool truth(const Formula& f, const Assignment& a) {
  switch (f.op()) {
    case Op::kAtom: return a.at(f.name());
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kNot: return !truth(f.lhs(), a);
    case Op::kAnd: return truth(f.lhs(), a) && truth(f.rhs(), a);
    case Op::kOr: return truth(f.lhs(), a) || truth(f.rhs(), a);
    case Op::kImplies: return !truth(f.lhs(), a) || truth(f.rhs(), a);
    case Op::kIff: return truth(f.lhs(), a) == truth(f.rhs(), a);
  }
  throw std::logic_error("bad op");
}

std::vector<Assignment> assignments(const std::vector<std::string>& atoms) {
  std::vector<Assignment> out = {Assignment{}};
  for (const auto& atom : atoms) {
    std::vector<Assignment> next;
    for (const auto& a : out) {
      for (bool v : {false, true}) {
        Assignment b = a;
        b[atom] = v;
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

bool tautology(const Formula& f) {
  for (const auto& a : assignments(parapri::atoms_of(f))) {
    if (!truth(f, a)) return false;
  }
  return true;
}

std::set<std::pair<std::size_t, std::size_t>> closure(std::size_t n,
                                                      const std::set<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (auto [i, j] : edges) r[i][j] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.emplace(i, j);
  return out;
}

Order order_of(const parapri::Theory& t) {
  Order o;
  o.defaults = t.default_formulas();
  o.higher = closure(o.defaults.size(), t.priority().edges());
  o.fixtures = t.fixture_formulas();
  return o;
}

Order parallel_order(const std::vector<Formula>& defaults) { return Order{defaults, {}, {}}; }

bool leq(const Order& o, const Assignment& z, const Assignment& z2) {
  const std::size_t n = o.defaults.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool higher_agree = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.higher.count({j, i}) && truth(o.defaults[j], z) != truth(o.defaults[j], z2)) higher_agree = false;
    }
    if (higher_agree && truth(o.defaults[i], z) && !truth(o.defaults[i], z2)) return false;
  }
  return true;
}

bool fix_equal(const Order& o, const Assignment& z, const Assignment& z2) {
  return std::all_of(o.fixtures.begin(), o.fixtures.end(),
                     [&](const Formula& f) { return truth(f, z) == truth(f, z2); });
}

std::set<Model> preferred(const parapri::Theory& t) {
  const Order o = order_of(t);
  std::vector<Assignment> base_models;
  for (const auto& a : assignments(t.universe().atoms())) {
    if (std::all_of(t.base().begin(), t.base().end(), [&](const Formula& f) { return truth(f, a); })) {
      base_models.push_back(a);
    }
  }
  std::set<Model> out;
  for (const auto& z : base_models) {
    bool beaten = false;
    for (const auto& z2 : base_models) {
      if (fix_equal(o, z, z2) && leq(o, z, z2) && !leq(o, z2, z)) {
        beaten = true;
        break;
      }
    }
    if (!beaten) {
      Model m;
      for (const auto& [atom, v] : z)
        if (v) m.insert(atom);
      out.insert(std::move(m));
    }
  }
  return out;
}

std::set<Model> project(const std::set<Model>& models, const std::vector<std::string>& atoms) {
  std::set<Model> out;
  for (const auto& m : models) {
    Model p;
    for (const auto& a : atoms)
      if (m.count(a)) p.insert(a);
    out.insert(std::move(p));
  }
  return out;
}

namespace {

Model least_model(const std::vector<parapri::Clause>& definite) {
  Model m;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : definite) {
      if (m.count(c.head)) continue;
      if (std::all_of(c.positive.begin(), c.positive.end(), [&](const std::string& b) { return m.count(b) > 0; })) {
        m.insert(c.head);
        changed = true;
      }
    }
  }
  return m;
}

}  // namespace

std::vector<Model> stable_models(const parapri::Program& p) {
  const auto atoms = p.atoms();
  std::vector<Model> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    Model guess;
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if ((bits >> k) & 1u) guess.insert(atoms[k]);
    std::vector<parapri::Clause> reduct;
    for (const auto& c : p.clauses) {
      const bool blocked = std::any_of(c.negative.begin(), c.negative.end(),
                                       [&](const std::string& b) { return guess.count(b) > 0; });
      if (!blocked) reduct.push_back({c.head, c.positive, {}});
    }
    if (least_model(reduct) == guess) out.push_back(guess);
  }
  return out;
}

std::string ac_normal(const Formula& f) {
  switch (f.op()) {
    case Op::kAtom: return f.name();
    case Op::kTrue: return "true";
    case Op::kFalse: return "false";
    case Op::kNot: return "~" + ac_normal(f.lhs());
    case Op::kAnd:
    case Op::kOr: {
      std::vector<std::string> parts;
      std::vector<Formula> todo = {f};
      while (!todo.empty()) {
        Formula g = todo.back();
        todo.pop_back();
        if (g.op() == f.op()) {
          todo.push_back(g.lhs());
          todo.push_back(g.rhs());
        } else {
          parts.push_back(ac_normal(g));
        }
      }
      std::sort(parts.begin(), parts.end());
      std::string out = f.op() == Op::kAnd ? "and(" : "or(";
      for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + parts[k];
      return out + ")";
    }
    case Op::kImplies: return "imp(" + ac_normal(f.lhs()) + "," + ac_normal(f.rhs()) + ")";
    case Op::kIff: {
      std::string a = ac_normal(f.lhs()), b = ac_normal(f.rhs());
      if (b < a) std::swap(a, b);
      return "iff(" + a + "," + b + ")";
    }
  }
  throw std::logic_error("bad op");
}

}  // namespace oracle
