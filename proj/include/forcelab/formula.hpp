#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace forcelab {

enum class FormulaKind { Eq, In, Not, And, Or, Imp, Iff, Exists, Forall };

// First-order formula over = and ∈. Immutable; copies share structure.
class Formula {
 public:
  static Formula eq(std::string lhs, std::string rhs);
  static Formula in(std::string lhs, std::string rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula equivalence(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  FormulaKind kind() const;
  bool is_atomic() const {
    return kind() == FormulaKind::Eq || kind() == FormulaKind::In;
  }
  bool is_quantifier() const {
    return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
  }

  // Atomic: the two variables. Quantifier: var() is the bound variable.
  const std::string& lhs_var() const;
  const std::string& rhs_var() const;
  const std::string& var() const { return lhs_var(); }

  // Not/quantifier: child(0). Binary connectives: child(0), child(1).
  const Formula& child(std::size_t i) const;
  std::size_t arity() const;

  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: f ::= (= v v) | (in v v) | (not f) | (and f f) | (or f f)
//               | (imp f f) | (iff f f) | (ex v f) | (all v f)
Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
std::size_t quantifier_depth(const Formula& f);
std::size_t formula_size(const Formula& f);

// Replaces free occurrences of `from` by `to`. Throws DomainError when `to`
// would be captured by a quantifier.
Formula rename_free(const Formula& f, const std::string& from,
                    const std::string& to);

// Folds with And/Or; an empty list yields `empty`.
Formula conjoin(const std::vector<Formula>& parts, const Formula& empty);
Formula disjoin(const std::vector<Formula>& parts, const Formula& empty);

}  // namespace forcelab
