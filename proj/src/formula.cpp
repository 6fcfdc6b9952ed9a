#include "forcelab/formula.hpp"

#include <cctype>
#include <stdexcept>
#include <variant>

#include "forcelab/error.hpp"

namespace forcelab {

struct Formula::Node {
  FormulaKind kind;
  std::string lhs;
  std::string rhs;
  std::vector<Formula> children;
};

namespace {

const char* head_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::Eq: return "=";
    case FormulaKind::In: return "in";
    case FormulaKind::Not: return "not";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Imp: return "imp";
    case FormulaKind::Iff: return "iff";
    case FormulaKind::Exists: return "ex";
    case FormulaKind::Forall: return "all";
  }
  return "?";
}

}  // namespace

Formula Formula::eq(std::string lhs, std::string rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Eq, std::move(lhs), std::move(rhs), {}}));
}

Formula Formula::in(std::string lhs, std::string rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::In, std::move(lhs), std::move(rhs), {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::And, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Or, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Imp, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::equivalence(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Iff, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Exists, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Forall, std::move(var), {}, {std::move(body)}}));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::lhs_var() const { return node_->lhs; }
const std::string& Formula::rhs_var() const { return node_->rhs; }
const Formula& Formula::child(std::size_t i) const {
  return node_->children.at(i);
}
std::size_t Formula::arity() const { return node_->children.size(); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.lhs_var() != b.lhs_var() ||
      a.rhs_var() != b.rhs_var() || a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

namespace {

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_formula_at();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  using Item = std::variant<std::string, Formula>;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] static void fail_at(const std::string& what, std::size_t at) {
    throw ParseError("formula syntax error: " + what, at);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'' || c == '.' || c == '-';
  }

  std::string parse_token() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      return "=";
    }
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Item parse_item() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') return parse_formula_at();
    std::size_t at = pos_;
    std::string name = parse_token();
    if (name == "=") fail_at("'=' is not a variable", at);
    return name;
  }

  Formula parse_formula_at() {
    skip_ws();
    const std::size_t open = pos_;
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '('");
    ++pos_;
    const std::string head = parse_token();
    std::vector<Item> args;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated formula");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(parse_item());
    }
    return build(head, args, open);
  }

  static const std::string& var_arg(const std::vector<Item>& args, std::size_t i,
                                    const std::string& head, std::size_t at) {
    if (auto* v = std::get_if<std::string>(&args[i])) return *v;
    fail_at("'" + head + "' expects a variable as argument " +
                std::to_string(i + 1),
            at);
  }

  static Formula formula_arg(const std::vector<Item>& args, std::size_t i,
                             const std::string& head, std::size_t at) {
    if (auto* f = std::get_if<Formula>(&args[i])) return *f;
    fail_at("'" + head + "' expects a formula as argument " +
                std::to_string(i + 1),
            at);
  }

  static void check_arity(const std::vector<Item>& args, std::size_t n,
                          const std::string& head, std::size_t at) {
    if (args.size() != n)
      fail_at("arity error: '" + head + "' expects " + std::to_string(n) +
                  " arguments, got " + std::to_string(args.size()),
              at);
  }

  static Formula build(const std::string& head, const std::vector<Item>& args,
                       std::size_t at) {
    if (head == "=" || head == "in") {
      check_arity(args, 2, head, at);
      auto a = var_arg(args, 0, head, at);
      auto b = var_arg(args, 1, head, at);
      return head == "=" ? Formula::eq(a, b) : Formula::in(a, b);
    }
    if (head == "not") {
      check_arity(args, 1, head, at);
      return Formula::negation(formula_arg(args, 0, head, at));
    }
    if (head == "and" || head == "or" || head == "imp" || head == "iff") {
      check_arity(args, 2, head, at);
      auto a = formula_arg(args, 0, head, at);
      auto b = formula_arg(args, 1, head, at);
      if (head == "and") return Formula::conjunction(a, b);
      if (head == "or") return Formula::disjunction(a, b);
      if (head == "imp") return Formula::implication(a, b);
      return Formula::equivalence(a, b);
    }
    if (head == "ex" || head == "all") {
      check_arity(args, 2, head, at);
      auto v = var_arg(args, 0, head, at);
      auto body = formula_arg(args, 1, head, at);
      return head == "ex" ? Formula::exists(v, body) : Formula::forall(v, body);
    }
    fail_at("unknown head '" + head + "'", at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const Formula& f, std::string& out) {
  out += '(';
  out += head_name(f.kind());
  if (f.is_atomic()) {
    out += ' ' + f.lhs_var() + ' ' + f.rhs_var();
  } else if (f.is_quantifier()) {
    out += ' ' + f.var() + ' ';
    print_into(f.child(0), out);
  } else {
    for (std::size_t i = 0; i < f.arity(); ++i) {
      out += ' ';
      print_into(f.child(i), out);
    }
  }
  out += ')';
}

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  if (f.is_atomic()) {
    if (!bound.count(f.lhs_var())) out.insert(f.lhs_var());
    if (!bound.count(f.rhs_var())) out.insert(f.rhs_var());
    return;
  }
  if (f.is_quantifier()) {
    bool fresh = bound.insert(f.var()).second;
    collect_free(f.child(0), bound, out);
    if (fresh) bound.erase(f.var());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_free(f.child(i), bound, out);
}

}  // namespace

Formula parse_formula(std::string_view text) { return SexprParser(text).parse(); }

std::string to_string(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  if (f.is_atomic()) return 0;
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i)
    d = std::max(d, quantifier_depth(f.child(i)));
  return f.is_quantifier() ? d + 1 : d;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) n += formula_size(f.child(i));
  return n;
}

Formula rename_free(const Formula& f, const std::string& from,
                    const std::string& to) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::In: {
      auto a = f.lhs_var() == from ? to : f.lhs_var();
      auto b = f.rhs_var() == from ? to : f.rhs_var();
      return f.kind() == FormulaKind::Eq ? Formula::eq(a, b) : Formula::in(a, b);
    }
    case FormulaKind::Not:
      return Formula::negation(rename_free(f.child(0), from, to));
    case FormulaKind::And:
      return Formula::conjunction(rename_free(f.child(0), from, to),
                                  rename_free(f.child(1), from, to));
    case FormulaKind::Or:
      return Formula::disjunction(rename_free(f.child(0), from, to),
                                  rename_free(f.child(1), from, to));
    case FormulaKind::Imp:
      return Formula::implication(rename_free(f.child(0), from, to),
                                  rename_free(f.child(1), from, to));
    case FormulaKind::Iff:
      return Formula::equivalence(rename_free(f.child(0), from, to),
                                  rename_free(f.child(1), from, to));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (f.var() == from) return f;
      if (f.var() == to && free_vars(f.child(0)).count(from))
        throw DomainError("renaming " + from + " to " + to +
                          " would be captured by a quantifier");
      auto body = rename_free(f.child(0), from, to);
      return f.kind() == FormulaKind::Exists ? Formula::exists(f.var(), body)
                                             : Formula::forall(f.var(), body);
    }
  }
  throw std::logic_error("unreachable formula kind");
}

Formula conjoin(const std::vector<Formula>& parts, const Formula& empty) {
  if (parts.empty()) return empty;
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    acc = Formula::conjunction(parts[i], acc);
  return acc;
}

Formula disjoin(const std::vector<Formula>& parts, const Formula& empty) {
  if (parts.empty()) return empty;
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    acc = Formula::disjunction(parts[i], acc);
  return acc;
}

}  // namespace forcelab
