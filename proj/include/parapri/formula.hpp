#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parapri/limits.hpp"

namespace parapri {

enum class Op : std::uint8_t { kAtom, kTrue, kFalse, kNot, kAnd, kOr, kImplies, kIff };

/// Immutable propositional formula. Copies share structure.
///
/// Atom names are opaque: a ground atom such as `flies(tweety)` is a single
/// atom whose name includes the argument list (canonical form, no spaces).
class Formula {
 public:
  /// The constant `true`.
  Formula();

  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const;
  bool is_atom() const { return op() == Op::kAtom; }
  bool is_binary() const;

  /// Atom name; empty for non-atoms.
  const std::string& name() const;
  /// Operand of a negation, or left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;

  /// Fully parenthesized text, re-readable by parse_formula.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

Formula operator~(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);

/// Left-nested conjunction; `true` for an empty list.
Formula conjoin(std::span<const Formula> fs);
/// Left-nested disjunction; `false` for an empty list.
Formula disjoin(std::span<const Formula> fs);

/// Parses the formula grammar. Precedence from tightest: `~`, `&`, `|`,
/// `->` (right associative), `<->`. `#` starts a comment running to end of
/// line. Throws ParseError carrying the byte offset of the offending token.
Formula parse_formula(std::string_view text);

/// Appends the atoms of `f` not yet in `out`, in first-mention order.
void collect_atoms(const Formula& f, std::vector<std::string>& out);
std::vector<std::string> atoms_of(const Formula& f);

/// Rebuilds `f` with every atom replaced by `fn(name)`.
Formula map_atoms(const Formula& f, const std::function<Formula(const std::string&)>& fn);

/// Ordered, duplicate-free list of atom names. Copies share storage.
class Universe {
 public:
  Universe();
  /// Throws ValidationError on duplicate names.
  explicit Universe(std::vector<std::string> atoms);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::vector<std::string>& atoms() const;
  std::optional<std::size_t> index_of(std::string_view atom) const;
  bool contains(std::string_view atom) const { return index_of(atom).has_value(); }

  friend bool operator==(const Universe& a, const Universe& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Total truth assignment over a universe of at most 63 atoms, bit k holding
/// the value of atom k.
class Interpretation {
 public:
  Interpretation() = default;
  /// Throws ValidationError when the universe has more than 63 atoms.
  Interpretation(Universe universe, std::uint64_t bits);

  /// Builds from the atoms listed as true; all others are false.
  static Interpretation from_true_atoms(const Universe& universe,
                                        std::span<const std::string> true_atoms);

  const Universe& universe() const { return universe_; }
  std::uint64_t bits() const { return bits_; }
  bool value(std::size_t index) const { return (bits_ >> index) & 1u; }
  /// Throws ValidationError for an atom outside the universe.
  bool value(std::string_view atom) const;

  /// Space-separated tokens `atom` / `~atom`, sorted as strings.
  std::string str() const;

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.bits_ == b.bits_ && a.universe_ == b.universe_;
  }

 private:
  Universe universe_;
  std::uint64_t bits_ = 0;
};

/// Classical truth value. Throws ValidationError if an atom of `f` is not in
/// the interpretation's universe.
bool eval(const Formula& f, const Interpretation& z);

/// `f` flattened to postfix over atom indices of a fixed universe, for the
/// brute-force loops.
class CompiledFormula {
 public:
  CompiledFormula() = default;
  /// Throws ValidationError if an atom of `f` is outside `universe`.
  CompiledFormula(const Formula& f, const Universe& universe);

  bool operator()(std::uint64_t bits) const;

 private:
  struct Instr {
    Op op;
    std::uint32_t atom;
  };
  std::vector<Instr> code_;
};

/// True iff `f` holds in all 2^|universe| interpretations.
/// Throws CapExceeded when |universe| > limits.tautology_atoms.
bool is_tautology(const Formula& f, const Universe& universe, const Limits& limits = {});

/// True iff every interpretation satisfying all `premises` satisfies `f`.
bool entails(std::span<const Formula> premises, const Formula& f, const Universe& universe,
             const Limits& limits = {});

}  // namespace parapri
