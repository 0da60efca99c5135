#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace focgnn {

enum class Var : std::uint8_t { kX = 0, kY = 1 };

constexpr Var other(Var v) { return v == Var::kX ? Var::kY : Var::kX; }
constexpr char var_char(Var v) { return v == Var::kX ? 'x' : 'y'; }
constexpr std::uint8_t var_bit(Var v) { return v == Var::kX ? 1 : 2; }

enum class FormulaKind : std::uint8_t {
  kTrue,
  kFalse,
  kUnary,
  kRelation,
  kNot,
  kAnd,
  kOr,
  kExistsGeq,
};

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

// Immutable AST node. Build through the make_* factories; subtrees may be
// shared between parents.
class FormulaNode {
  struct Key {};

 public:
  FormulaNode(Key, FormulaKind kind, std::string pred, Var v1, Var v2, std::int64_t threshold,
              std::vector<Formula> children);

  FormulaKind kind() const { return kind_; }
  const std::string& predicate() const { return pred_; }
  // unary atom variable, or quantifier bound variable
  Var var() const { return v1_; }
  Var first() const { return v1_; }
  Var second() const { return v2_; }
  std::int64_t threshold() const { return threshold_; }
  const std::vector<Formula>& children() const { return children_; }
  const Formula& child() const { return children_.front(); }
  const Formula& body() const { return children_.front(); }
  std::uint8_t free_vars() const { return free_; }
  int depth() const { return depth_; }
  std::size_t hash() const { return hash_; }
  std::size_t size() const { return size_; }

 private:
  friend Formula make_true();
  friend Formula make_false();
  friend Formula make_unary(std::string, Var);
  friend Formula make_relation(std::string, Var, Var);
  friend Formula make_not(Formula);
  friend Formula make_and(std::vector<Formula>);
  friend Formula make_or(std::vector<Formula>);
  friend Formula make_exists(std::int64_t, Var, Formula);

  FormulaKind kind_;
  std::string pred_;
  Var v1_;
  Var v2_;
  std::int64_t threshold_;
  std::vector<Formula> children_;
  std::uint8_t free_ = 0;
  int depth_ = 0;
  std::size_t hash_ = 0;
  std::size_t size_ = 1;
};

Formula make_true();
Formula make_false();
Formula make_unary(std::string pred, Var v);
Formula make_relation(std::string pred, Var a, Var b);
Formula make_not(Formula f);
// n-ary connectives need at least two children
Formula make_and(std::vector<Formula> children);
Formula make_or(std::vector<Formula> children);
// threshold >= 1
Formula make_exists(std::int64_t n, Var bound, Formula body);

// Simplifying builders: fold constants, collapse 0/1-child cases.
Formula conj(std::vector<Formula> children);
Formula disj(std::vector<Formula> children);
Formula neg(Formula f);

bool structurally_equal(const Formula& a, const Formula& b);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash(); }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return structurally_equal(a, b); }
};

int quantifier_depth(const Formula& f);

// exchanges x and y everywhere
Formula swap_variables(const Formula& f);

// every predicate name used, split by arity
void collect_predicates(const Formula& f, std::vector<std::string>& unary,
                        std::vector<std::string>& binary);

}  // namespace focgnn
