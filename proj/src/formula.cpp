#include "parapri/formula.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <unordered_map>

#include "parapri/error.hpp"

namespace parapri {

struct Formula::Node {
  Op op;
  std::string name;
  Formula lhs;
  Formula rhs;
};

Formula::Formula() : Formula(top()) {}

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::kAtom, std::move(name), Formula(nullptr), Formula(nullptr)}));
}

Formula Formula::top() {
  static const auto node = std::shared_ptr<const Node>(new Node{Op::kTrue, {}, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = std::shared_ptr<const Node>(new Node{Op::kFalse, {}, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::kNot, {}, std::move(f), Formula(nullptr)}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{op, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) { return binary(Op::kAnd, std::move(lhs), std::move(rhs)); }
Formula Formula::disjunction(Formula lhs, Formula rhs) { return binary(Op::kOr, std::move(lhs), std::move(rhs)); }
Formula Formula::implication(Formula lhs, Formula rhs) { return binary(Op::kImplies, std::move(lhs), std::move(rhs)); }
Formula Formula::equivalence(Formula lhs, Formula rhs) { return binary(Op::kIff, std::move(lhs), std::move(rhs)); }

Op Formula::op() const { return node_->op; }

bool Formula::is_binary() const {
  switch (op()) {
    case Op::kAnd:
    case Op::kOr:
    case Op::kImplies:
    case Op::kIff:
      return true;
    default:
      return false;
  }
}

const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }

namespace {

const char* op_symbol(Op op) {
  switch (op) {
    case Op::kAnd: return "&";
    case Op::kOr: return "|";
    case Op::kImplies: return "->";
    case Op::kIff: return "<->";
    default: return "?";
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::kAtom: out += f.name(); return;
    case Op::kTrue: out += "true"; return;
    case Op::kFalse: out += "false"; return;
    case Op::kNot:
      out += '~';
      print(f.lhs(), out);
      return;
    default:
      out += '(';
      print(f.lhs(), out);
      out += ' ';
      out += op_symbol(f.op());
      out += ' ';
      print(f.rhs(), out);
      out += ')';
  }
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  print(*this, out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::kAtom: return a.name() == b.name();
    case Op::kTrue:
    case Op::kFalse: return true;
    case Op::kNot: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << f.str(); }

Formula operator~(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::conjunction(a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::disjunction(a, b); }

Formula conjoin(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = acc & fs[k];
  return acc;
}

Formula disjoin(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = acc | fs[k];
  return acc;
}

// {{{ Parsing

namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kNot, kAnd, kOr, kImplies, kIff, kEnd };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (ident_start(c)) {
      const std::size_t start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      toks.push_back({Tok::kIdent, start, text.substr(start, i - start)});
    } else if (c == '(') {
      toks.push_back({Tok::kLParen, i++, "("});
    } else if (c == ')') {
      toks.push_back({Tok::kRParen, i++, ")"});
    } else if (c == ',') {
      toks.push_back({Tok::kComma, i++, ","});
    } else if (c == '~') {
      toks.push_back({Tok::kNot, i++, "~"});
    } else if (c == '&') {
      toks.push_back({Tok::kAnd, i++, "&"});
    } else if (c == '|') {
      toks.push_back({Tok::kOr, i++, "|"});
    } else if (text.substr(i, 2) == "->") {
      toks.push_back({Tok::kImplies, i, "->"});
      i += 2;
    } else if (text.substr(i, 3) == "<->") {
      toks.push_back({Tok::kIff, i, "<->"});
      i += 3;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  toks.push_back({Tok::kEnd, text.size(), ""});
  return toks;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::kEnd) unexpected();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void unexpected() const {
    const Token& t = peek();
    if (t.kind == Tok::kEnd) throw ParseError("unexpected end of formula", t.offset);
    throw ParseError("unexpected token '" + std::string(t.text) + "'", t.offset);
  }

  void expect(Tok kind) {
    if (peek().kind != kind) unexpected();
    ++pos_;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (peek().kind == Tok::kIff) {
      ++pos_;
      f = Formula::equivalence(f, parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (peek().kind == Tok::kImplies) {
      ++pos_;
      return Formula::implication(f, parse_imp());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::kOr) {
      ++pos_;
      f = Formula::disjunction(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::kAnd) {
      ++pos_;
      f = Formula::conjunction(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::kNot:
        ++pos_;
        return Formula::negation(parse_unary());
      case Tok::kLParen: {
        ++pos_;
        Formula f = parse_iff();
        expect(Tok::kRParen);
        return f;
      }
      case Tok::kIdent:
        return parse_atom();
      default:
        unexpected();
    }
  }

  Formula parse_atom() {
    const Token& head = next();
    const bool has_args = peek().kind == Tok::kLParen;
    if (!has_args && head.text == "true") return Formula::top();
    if (!has_args && head.text == "false") return Formula::bottom();
    std::string name(head.text);
    if (has_args) {
      ++pos_;
      name += '(';
      for (bool first = true;; first = false) {
        if (!first) name += ',';
        if (peek().kind != Tok::kIdent) unexpected();
        name += next().text;
        if (peek().kind == Tok::kComma) {
          ++pos_;
          continue;
        }
        expect(Tok::kRParen);
        break;
      }
      name += ')';
    }
    return Formula::atom(std::move(name));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

// }}}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  switch (f.op()) {
    case Op::kAtom:
      if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
      return;
    case Op::kTrue:
    case Op::kFalse:
      return;
    case Op::kNot:
      collect_atoms(f.lhs(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

Formula map_atoms(const Formula& f, const std::function<Formula(const std::string&)>& fn) {
  switch (f.op()) {
    case Op::kAtom: return fn(f.name());
    case Op::kTrue:
    case Op::kFalse: return f;
    case Op::kNot: return Formula::negation(map_atoms(f.lhs(), fn));
    default: return Formula::binary(f.op(), map_atoms(f.lhs(), fn), map_atoms(f.rhs(), fn));
  }
}

// {{{ Universe / Interpretation

struct Universe::Impl {
  std::vector<std::string> atoms;
  std::unordered_map<std::string, std::size_t> index;
};

Universe::Universe() : Universe(std::vector<std::string>{}) {}

Universe::Universe(std::vector<std::string> atoms) {
  auto impl = std::make_shared<Impl>();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!impl->index.emplace(atoms[k], k).second) {
      throw ValidationError("duplicate atom '" + atoms[k] + "' in universe");
    }
  }
  impl->atoms = std::move(atoms);
  impl_ = std::move(impl);
}

std::size_t Universe::size() const { return impl_->atoms.size(); }
const std::vector<std::string>& Universe::atoms() const { return impl_->atoms; }

std::optional<std::size_t> Universe::index_of(std::string_view atom) const {
  auto it = impl_->index.find(std::string(atom));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Universe& a, const Universe& b) {
  return a.impl_ == b.impl_ || a.impl_->atoms == b.impl_->atoms;
}

Interpretation::Interpretation(Universe universe, std::uint64_t bits)
    : universe_(std::move(universe)), bits_(bits) {
  if (universe_.size() > kMaxPackedAtoms) {
    throw ValidationError("interpretations support at most " + std::to_string(kMaxPackedAtoms) + " atoms");
  }
  if (universe_.size() < 64) bits_ &= (std::uint64_t{1} << universe_.size()) - 1;
}

Interpretation Interpretation::from_true_atoms(const Universe& universe,
                                               std::span<const std::string> true_atoms) {
  std::uint64_t bits = 0;
  for (const auto& a : true_atoms) {
    auto idx = universe.index_of(a);
    if (!idx) throw ValidationError("atom '" + a + "' is not in the universe");
    bits |= std::uint64_t{1} << *idx;
  }
  return Interpretation(universe, bits);
}

bool Interpretation::value(std::string_view atom) const {
  auto idx = universe_.index_of(atom);
  if (!idx) throw ValidationError("atom '" + std::string(atom) + "' is not in the universe");
  return value(*idx);
}

std::string Interpretation::str() const {
  std::vector<std::string> toks;
  toks.reserve(universe_.size());
  for (std::size_t k = 0; k < universe_.size(); ++k) {
    toks.push_back(value(k) ? universe_.atoms()[k] : "~" + universe_.atoms()[k]);
  }
  std::sort(toks.begin(), toks.end());
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// }}}

bool eval(const Formula& f, const Interpretation& z) {
  switch (f.op()) {
    case Op::kAtom: return z.value(f.name());
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kNot: return !eval(f.lhs(), z);
    case Op::kAnd: return eval(f.lhs(), z) && eval(f.rhs(), z);
    case Op::kOr: return eval(f.lhs(), z) || eval(f.rhs(), z);
    case Op::kImplies: return !eval(f.lhs(), z) || eval(f.rhs(), z);
    case Op::kIff: return eval(f.lhs(), z) == eval(f.rhs(), z);
  }
  return false;
}

namespace {

template <class Emit>
void compile_into(const Formula& f, const Universe& universe, Emit&& emit) {
  switch (f.op()) {
    case Op::kAtom: {
      auto idx = universe.index_of(f.name());
      if (!idx) throw ValidationError("atom '" + f.name() + "' is not in the universe");
      emit(Op::kAtom, static_cast<std::uint32_t>(*idx));
      return;
    }
    case Op::kTrue:
    case Op::kFalse:
      emit(f.op(), 0);
      return;
    case Op::kNot:
      compile_into(f.lhs(), universe, emit);
      emit(Op::kNot, 0);
      return;
    default:
      compile_into(f.lhs(), universe, emit);
      compile_into(f.rhs(), universe, emit);
      emit(f.op(), 0);
  }
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const Universe& universe) {
  compile_into(f, universe, [this](Op op, std::uint32_t atom) { code_.push_back({op, atom}); });
}

bool CompiledFormula::operator()(std::uint64_t bits) const {
  thread_local std::vector<std::uint8_t> stack;
  stack.clear();
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::kAtom: stack.push_back((bits >> in.atom) & 1u); break;
      case Op::kTrue: stack.push_back(1); break;
      case Op::kFalse: stack.push_back(0); break;
      case Op::kNot: stack.back() = !stack.back(); break;
      default: {
        const std::uint8_t b = stack.back();
        stack.pop_back();
        std::uint8_t& a = stack.back();
        switch (in.op) {
          case Op::kAnd: a = a & b; break;
          case Op::kOr: a = a | b; break;
          case Op::kImplies: a = (!a) | b; break;
          case Op::kIff: a = a == b; break;
          default: break;
        }
      }
    }
  }
  return stack.empty() ? true : stack.back() != 0;
}

bool is_tautology(const Formula& f, const Universe& universe, const Limits& limits) {
  return entails({}, f, universe, limits);
}

bool entails(std::span<const Formula> premises, const Formula& f, const Universe& universe,
             const Limits& limits) {
  check_atom_cap(universe.size(), limits.tautology_atoms, "entailment check");
  std::vector<CompiledFormula> prem;
  prem.reserve(premises.size());
  for (const auto& p : premises) prem.emplace_back(p, universe);
  const CompiledFormula goal(f, universe);
  const std::uint64_t count = std::uint64_t{1} << universe.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    bool sat = true;
    for (const auto& p : prem) {
      if (!p(bits)) {
        sat = false;
        break;
      }
    }
    if (sat && !goal(bits)) return false;
  }
  return true;
}

}  // namespace parapri
