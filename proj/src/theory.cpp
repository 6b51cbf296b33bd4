#include "parapri/theory.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "parapri/error.hpp"

namespace parapri {

namespace {

// Closure plus the first node found on a cycle, if any.
std::pair<std::set<Edge>, std::optional<std::size_t>> closure_impl(const std::set<Edge>& edges) {
  std::map<std::size_t, std::set<std::size_t>> succ;
  for (const auto& [hi, lo] : edges) succ[hi].insert(lo);
  std::set<Edge> closure;
  std::optional<std::size_t> cyclic;
  for (const auto& [start, direct] : succ) {
    std::vector<std::size_t> stack(direct.begin(), direct.end());
    std::set<std::size_t> seen;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      closure.emplace(start, v);
      if (v == start && !cyclic) cyclic = start;
      if (auto it = succ.find(v); it != succ.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
  }
  return {std::move(closure), cyclic};
}

}  // namespace

std::set<Edge> transitive_closure(const std::set<Edge>& edges) {
  auto [closure, cyclic] = closure_impl(edges);
  if (cyclic) throw CycleError("priority cycle through index " + std::to_string(*cyclic));
  return closure;
}

// {{{ PriorityOrder

PriorityOrder::PriorityOrder(std::vector<std::string> labels, std::set<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw ValidationError("duplicate label '" + l + "'");
  }
  for (const auto& [hi, lo] : edges_) {
    if (hi >= labels_.size() || lo >= labels_.size()) {
      throw ValidationError("priority edge refers to an undeclared index");
    }
  }
  auto [closure, cyclic] = closure_impl(edges_);
  if (cyclic) throw CycleError("priority cycle through '" + labels_[*cyclic] + "'");
  closure_ = std::move(closure);
  dominates_.assign(labels_.size(), std::vector<bool>(labels_.size(), false));
  for (const auto& [hi, lo] : closure_) dominates_[hi][lo] = true;
}

PriorityOrder PriorityOrder::parallel(std::vector<std::string> labels) {
  return PriorityOrder(std::move(labels), {});
}

std::optional<std::size_t> PriorityOrder::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) return k;
  }
  return std::nullopt;
}

bool PriorityOrder::dominates(std::size_t higher, std::size_t lower) const {
  return dominates_[higher][lower];
}

// }}}

// {{{ Theory

namespace {

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '>' || c == '#';
  });
}

void check_labels(const std::vector<LabeledFormula>& fs, std::string_view what) {
  std::set<std::string> seen;
  for (const auto& lf : fs) {
    if (!valid_label(lf.label)) throw ValidationError("invalid " + std::string(what) + " label '" + lf.label + "'");
    if (!seen.insert(lf.label).second) {
      throw ValidationError("duplicate " + std::string(what) + " label '" + lf.label + "'");
    }
  }
}

void check_atoms(const Formula& f, const Universe& u, std::string_view where) {
  for (const auto& a : atoms_of(f)) {
    if (!u.contains(a)) {
      throw ValidationError("atom '" + a + "' in " + std::string(where) + " is outside the declared universe");
    }
  }
}

std::vector<std::string> labels_of(const std::vector<LabeledFormula>& fs) {
  std::vector<std::string> out;
  out.reserve(fs.size());
  for (const auto& lf : fs) out.push_back(lf.label);
  return out;
}

std::vector<std::string> mentioned_atoms(const std::vector<Formula>& base,
                                         const std::vector<LabeledFormula>& defaults,
                                         const std::vector<LabeledFormula>& fixtures) {
  std::vector<std::string> atoms;
  for (const auto& f : base) collect_atoms(f, atoms);
  for (const auto& lf : defaults) collect_atoms(lf.formula, atoms);
  for (const auto& lf : fixtures) collect_atoms(lf.formula, atoms);
  return atoms;
}

}  // namespace

Theory::Theory(Universe universe, std::vector<Formula> base, std::vector<LabeledFormula> defaults,
               std::set<Edge> edges, std::vector<LabeledFormula> fixtures)
    : universe_(std::move(universe)),
      base_(std::move(base)),
      defaults_(std::move(defaults)),
      fixtures_(std::move(fixtures)) {
  check_labels(defaults_, "default");
  check_labels(fixtures_, "fixture");
  for (const auto& f : base_) check_atoms(f, universe_, "base");
  for (const auto& lf : defaults_) check_atoms(lf.formula, universe_, "default '" + lf.label + "'");
  for (const auto& lf : fixtures_) check_atoms(lf.formula, universe_, "fixture '" + lf.label + "'");
  priority_ = PriorityOrder(labels_of(defaults_), std::move(edges));
}

Theory Theory::with_mentioned_atoms(std::vector<Formula> base, std::vector<LabeledFormula> defaults,
                                    std::set<Edge> edges, std::vector<LabeledFormula> fixtures) {
  Universe u(mentioned_atoms(base, defaults, fixtures));
  return Theory(std::move(u), std::move(base), std::move(defaults), std::move(edges), std::move(fixtures));
}

std::vector<Formula> Theory::default_formulas() const {
  std::vector<Formula> out;
  out.reserve(defaults_.size());
  for (const auto& lf : defaults_) out.push_back(lf.formula);
  return out;
}

std::vector<Formula> Theory::fixture_formulas() const {
  std::vector<Formula> out;
  out.reserve(fixtures_.size());
  for (const auto& lf : fixtures_) out.push_back(lf.formula);
  return out;
}

Theory Theory::with_base(std::vector<Formula> base) const {
  return Theory(universe_, std::move(base), defaults_, priority_.edges(), fixtures_);
}

Theory Theory::with_universe(Universe universe) const {
  return Theory(std::move(universe), base_, defaults_, priority_.edges(), fixtures_);
}

Theory Theory::with_parallel_defaults(std::vector<LabeledFormula> defaults) const {
  return Theory(universe_, base_, std::move(defaults), {}, fixtures_);
}

// }}}

// {{{ Grounding

namespace {

bool is_variable(std::string_view arg) {
  return !arg.empty() && std::isupper(static_cast<unsigned char>(arg.front()));
}

// Splits `p(a,b)` into "p" and {"a","b"}; a bare atom has no arguments.
std::pair<std::string, std::vector<std::string>> split_atom(const std::string& name) {
  const auto open = name.find('(');
  if (open == std::string::npos) return {name, {}};
  std::vector<std::string> args;
  std::string cur;
  for (std::size_t k = open + 1; k + 1 < name.size(); ++k) {
    if (name[k] == ',') {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += name[k];
    }
  }
  args.push_back(cur);
  return {name.substr(0, open), args};
}

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += sep;
    out += xs[k];
  }
  return out;
}

void check_schema_variables(const Schema& s) {
  std::set<std::string> params(s.params.begin(), s.params.end());
  if (params.size() != s.params.size()) {
    throw ValidationError("schema '" + s.label + "' repeats a parameter");
  }
  for (const auto& p : s.params) {
    if (!is_variable(p)) throw ValidationError("schema parameter '" + p + "' must start with an uppercase letter");
  }
  for (const auto& atom : atoms_of(s.body)) {
    for (const auto& arg : split_atom(atom).second) {
      if (is_variable(arg) && !params.count(arg)) {
        throw ValidationError("variable '" + arg + "' in schema '" + s.label + "' is not a parameter");
      }
    }
  }
}

Formula instantiate(const Formula& body, const std::map<std::string, std::string>& binding) {
  return map_atoms(body, [&](const std::string& name) {
    auto [pred, args] = split_atom(name);
    if (args.empty()) return Formula::atom(name);
    for (auto& a : args) {
      if (auto it = binding.find(a); it != binding.end()) a = it->second;
    }
    return Formula::atom(pred + "(" + join(args, ",") + ")");
  });
}

}  // namespace

Theory ground(const SchemaTheory& s) {
  if (s.domain.empty() && !s.schemas.empty()) {
    throw ValidationError("empty domain with schemas present");
  }
  std::vector<LabeledFormula> defaults = s.defaults;
  // label -> indices of its instances in `defaults`
  std::map<std::string, std::vector<std::size_t>> instances;
  for (std::size_t k = 0; k < defaults.size(); ++k) instances[defaults[k].label].push_back(k);

  for (const auto& schema : s.schemas) {
    check_schema_variables(schema);
    if (instances.count(schema.label)) throw ValidationError("duplicate default label '" + schema.label + "'");
    auto& mine = instances[schema.label];
    const std::size_t arity = schema.params.size();
    std::vector<std::size_t> digits(arity, 0);
    for (;;) {
      std::map<std::string, std::string> binding;
      std::vector<std::string> consts;
      for (std::size_t p = 0; p < arity; ++p) {
        binding[schema.params[p]] = s.domain[digits[p]];
        consts.push_back(s.domain[digits[p]]);
      }
      mine.push_back(defaults.size());
      defaults.push_back({schema.label + "[" + join(consts, ",") + "]", instantiate(schema.body, binding)});
      // odometer, last parameter fastest
      std::size_t p = arity;
      while (p > 0) {
        if (++digits[p - 1] < s.domain.size()) break;
        digits[p - 1] = 0;
        --p;
      }
      if (p == 0) break;
    }
  }

  std::set<Edge> edges;
  for (const auto& [hi, lo] : s.prefer) {
    auto h = instances.find(hi);
    auto l = instances.find(lo);
    if (h == instances.end()) throw ValidationError("prefer refers to undeclared label '" + hi + "'");
    if (l == instances.end()) throw ValidationError("prefer refers to undeclared label '" + lo + "'");
    for (auto a : h->second) {
      for (auto b : l->second) edges.emplace(a, b);
    }
  }

  if (s.atoms) {
    return Theory(Universe(*s.atoms), s.base, std::move(defaults), std::move(edges), s.fixtures);
  }
  return Theory::with_mentioned_atoms(s.base, std::move(defaults), std::move(edges), s.fixtures);
}

// }}}

// {{{ Text format

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Line {
  std::string_view text;  // comment stripped
  std::size_t offset;     // of text[0] in the whole input
  std::size_t number;
};

class TheoryReader {
 public:
  explicit TheoryReader(std::string_view text) : text_(text) {}

  std::variant<Theory, SchemaTheory> read() {
    std::size_t start = 0;
    std::size_t number = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++number;
      std::string_view raw = text_.substr(start, end - start);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      statement({raw, start, number});
      if (end == text_.size()) break;
      start = end + 1;
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(const Line& line, std::string_view at, const std::string& what) const {
    const std::size_t col = at.data() - line.text.data();
    throw ParseError(what, line.offset + col, line.number);
  }

  Formula formula(const Line& line, std::string_view src) const {
    try {
      return parse_formula(src);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at byte")),
                       line.offset + static_cast<std::size_t>(src.data() - line.text.data()) + e.offset(),
                       line.number);
    }
  }

  // Splits "label: formula" after a keyword.
  std::pair<std::string, std::string_view> labeled(const Line& line, std::string_view rest) const {
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail(line, rest, "expected ':' after label");
    const std::string_view label = trim(rest.substr(0, colon));
    if (!valid_label(label)) fail(line, rest, "invalid label '" + std::string(label) + "'");
    return {std::string(label), rest.substr(colon + 1)};
  }

  void statement(const Line& line) {
    const std::string_view body = trim(line.text);
    if (body.empty()) return;
    std::size_t kw_end = 0;
    while (kw_end < body.size() && std::isalpha(static_cast<unsigned char>(body[kw_end]))) ++kw_end;
    const std::string_view kw = body.substr(0, kw_end);
    std::string_view rest = body.substr(kw_end);

    auto after_colon = [&]() {
      std::string_view r = trim(rest);
      if (r.empty() || r.front() != ':') fail(line, body, "expected ':' after '" + std::string(kw) + "'");
      return r.substr(1);
    };

    if (kw == "atoms") {
      if (atoms_) fail(line, body, "duplicate 'atoms:' line");
      atoms_ = split_ws(after_colon());
    } else if (kw == "base") {
      base_.push_back(formula(line, after_colon()));
    } else if (kw == "default") {
      auto [label, src] = labeled(line, rest);
      defaults_.push_back({label, formula(line, src)});
    } else if (kw == "fix") {
      auto [label, src] = labeled(line, rest);
      fixtures_.push_back({label, formula(line, src)});
    } else if (kw == "prefer") {
      const auto gt = rest.find('>');
      if (gt == std::string_view::npos) fail(line, body, "expected 'prefer <label> > <label>'");
      const std::string_view hi = trim(rest.substr(0, gt));
      const std::string_view lo = trim(rest.substr(gt + 1));
      if (!valid_label(hi) || !valid_label(lo)) fail(line, body, "invalid label in 'prefer'");
      prefer_.emplace_back(std::string(hi), std::string(lo));
    } else if (kw == "domain") {
      if (domain_) fail(line, body, "duplicate 'domain:' line");
      domain_ = split_ws(after_colon());
    } else if (kw == "schema") {
      schema_lines_.push_back(line);
      auto [head, src] = labeled(line, rest);
      const auto open = head.find('[');
      if (open == std::string::npos || head.back() != ']') {
        fail(line, body, "expected 'schema <label>[X,...]: <formula>'");
      }
      Schema s;
      s.label = head.substr(0, open);
      const std::string params = head.substr(open + 1, head.size() - open - 2);
      std::string cur;
      for (char c : params + ",") {
        if (c == ',') {
          if (!cur.empty()) s.params.push_back(cur);
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          cur += c;
        }
      }
      s.body = formula(line, src);
      schemas_.push_back(std::move(s));
    } else {
      fail(line, body, "unknown statement '" + std::string(kw.empty() ? body.substr(0, 1) : kw) + "'");
    }
  }

  std::variant<Theory, SchemaTheory> finish() {
    if (domain_) {
      SchemaTheory s;
      s.domain = *domain_;
      s.atoms = atoms_;
      s.base = base_;
      s.defaults = defaults_;
      s.schemas = schemas_;
      s.prefer = prefer_;
      s.fixtures = fixtures_;
      // Surface label errors at parse time rather than at grounding.
      std::set<std::string> labels;
      for (const auto& d : s.defaults) {
        if (!labels.insert(d.label).second) throw ValidationError("duplicate default label '" + d.label + "'");
      }
      for (const auto& sc : s.schemas) {
        if (!labels.insert(sc.label).second) throw ValidationError("duplicate default label '" + sc.label + "'");
        check_schema_variables(sc);
      }
      for (const auto& [hi, lo] : s.prefer) {
        if (!labels.count(hi)) throw ValidationError("prefer refers to undeclared label '" + hi + "'");
        if (!labels.count(lo)) throw ValidationError("prefer refers to undeclared label '" + lo + "'");
      }
      if (s.domain.empty() && !s.schemas.empty()) throw ValidationError("empty domain with schemas present");
      // Cycles among labels are cycles among instances.
      std::map<std::string, std::size_t> idx;
      for (const auto& l : labels) idx.emplace(l, idx.size());
      std::set<Edge> label_edges;
      for (const auto& [hi, lo] : s.prefer) label_edges.emplace(idx[hi], idx[lo]);
      if (closure_impl(label_edges).second) throw CycleError("priority cycle among schema labels");
      return s;
    }
    if (!schema_lines_.empty()) {
      const Line& l = schema_lines_.front();
      fail(l, trim(l.text), "'schema' requires a 'domain:' line");
    }
    std::map<std::string, std::size_t> idx;
    for (std::size_t k = 0; k < defaults_.size(); ++k) {
      if (!idx.emplace(defaults_[k].label, k).second) {
        throw ValidationError("duplicate default label '" + defaults_[k].label + "'");
      }
    }
    std::set<Edge> edges;
    for (const auto& [hi, lo] : prefer_) {
      auto h = idx.find(hi);
      auto l = idx.find(lo);
      if (h == idx.end()) throw ValidationError("prefer refers to undeclared label '" + hi + "'");
      if (l == idx.end()) throw ValidationError("prefer refers to undeclared label '" + lo + "'");
      edges.emplace(h->second, l->second);
    }
    if (atoms_) return Theory(Universe(*atoms_), base_, defaults_, std::move(edges), fixtures_);
    return Theory::with_mentioned_atoms(base_, defaults_, std::move(edges), fixtures_);
  }

  std::string_view text_;
  std::optional<std::vector<std::string>> atoms_;
  std::optional<std::vector<std::string>> domain_;
  std::vector<Formula> base_;
  std::vector<LabeledFormula> defaults_;
  std::vector<LabeledFormula> fixtures_;
  std::vector<std::pair<std::string, std::string>> prefer_;
  std::vector<Schema> schemas_;
  std::vector<Line> schema_lines_;
};

}  // namespace

std::variant<Theory, SchemaTheory> parse_theory(std::string_view text) {
  return TheoryReader(text).read();
}

Theory load_theory(std::string_view text) {
  auto parsed = parse_theory(text);
  if (auto* s = std::get_if<SchemaTheory>(&parsed)) return ground(*s);
  return std::get<Theory>(std::move(parsed));
}

std::string print_theory(const Theory& t) {
  std::ostringstream out;
  out << "atoms:";
  for (const auto& a : t.universe().atoms()) out << ' ' << a;
  out << '\n';
  for (const auto& f : t.base()) out << "base: " << f << '\n';
  for (const auto& d : t.defaults()) out << "default " << d.label << ": " << d.formula << '\n';
  const auto& labels = t.priority().labels();
  for (const auto& [hi, lo] : t.priority().edges()) out << "prefer " << labels[hi] << " > " << labels[lo] << '\n';
  for (const auto& f : t.fixtures()) out << "fix " << f.label << ": " << f.formula << '\n';
  return out.str();
}

nlohmann::json theory_to_json(const Theory& t) {
  using nlohmann::json;
  json j;
  j["universe"] = t.universe().atoms();
  j["base"] = json::array();
  for (const auto& f : t.base()) j["base"].push_back(f.str());
  j["defaults"] = json::array();
  for (const auto& d : t.defaults()) j["defaults"].push_back({{"label", d.label}, {"formula", d.formula.str()}});
  j["edges"] = json::array();
  const auto& labels = t.priority().labels();
  for (const auto& [hi, lo] : t.priority().edges()) j["edges"].push_back({labels[hi], labels[lo]});
  j["fixtures"] = json::array();
  for (const auto& f : t.fixtures()) j["fixtures"].push_back({{"label", f.label}, {"formula", f.formula.str()}});
  return j;
}

// }}}

Theory fixtures_to_defaults(const Theory& t) {
  if (t.fixtures().empty()) return t;
  std::vector<LabeledFormula> defaults = t.defaults();
  for (const auto& f : t.fixtures()) {
    defaults.push_back({"fix_" + f.label + "_pos", f.formula});
    defaults.push_back({"fix_" + f.label + "_neg", Formula::negation(f.formula)});
  }
  // Theory validation rejects clashes with existing default labels.
  return Theory(t.universe(), t.base(), std::move(defaults), t.priority().edges(), {});
}

}  // namespace parapri
