#include "focgnn/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

FormulaNode::FormulaNode(Key, FormulaKind kind, std::string pred, Var v1, Var v2,
                         std::int64_t threshold, std::vector<Formula> children)
    : kind_(kind), pred_(std::move(pred)), v1_(v1), v2_(v2), threshold_(threshold),
      children_(std::move(children)) {
  std::size_t h = mix(static_cast<std::size_t>(kind_), std::hash<std::string>{}(pred_));
  switch (kind_) {
    case FormulaKind::kUnary:
      free_ = var_bit(v1_);
      h = mix(h, static_cast<std::size_t>(v1_));
      break;
    case FormulaKind::kRelation:
      free_ = var_bit(v1_) | var_bit(v2_);
      h = mix(mix(h, static_cast<std::size_t>(v1_)), static_cast<std::size_t>(v2_));
      break;
    case FormulaKind::kExistsGeq:
      free_ = children_[0]->free_vars() & static_cast<std::uint8_t>(~var_bit(v1_));
      depth_ = children_[0]->depth() + 1;
      h = mix(mix(h, static_cast<std::size_t>(v1_)), static_cast<std::size_t>(threshold_));
      break;
    default:
      break;
  }
  for (const auto& c : children_) {
    if (kind_ != FormulaKind::kExistsGeq) {
      free_ |= c->free_vars();
      depth_ = std::max(depth_, c->depth());
    }
    h = mix(h, c->hash());
    size_ += c->size();
  }
  hash_ = h;
}

Formula make_true() {
  static const Formula t = std::make_shared<FormulaNode>(
      FormulaNode::Key{}, FormulaKind::kTrue, "", Var::kX, Var::kX, 0, std::vector<Formula>{});
  return t;
}

Formula make_false() {
  static const Formula f = std::make_shared<FormulaNode>(
      FormulaNode::Key{}, FormulaKind::kFalse, "", Var::kX, Var::kX, 0, std::vector<Formula>{});
  return f;
}

Formula make_unary(std::string pred, Var v) {
  return std::make_shared<FormulaNode>(FormulaNode::Key{}, FormulaKind::kUnary,
                                             std::move(pred), v, v, 0, std::vector<Formula>{});
}

Formula make_relation(std::string pred, Var a, Var b) {
  return std::make_shared<FormulaNode>(FormulaNode::Key{}, FormulaKind::kRelation,
                                             std::move(pred), a, b, 0, std::vector<Formula>{});
}

Formula make_not(Formula f) {
  return std::make_shared<FormulaNode>(FormulaNode::Key{}, FormulaKind::kNot, "", Var::kX,
                                             Var::kX, 0, std::vector<Formula>{std::move(f)});
}

Formula make_and(std::vector<Formula> children) {
  if (children.size() < 2) throw ValidationError("conjunction needs at least two operands");
  return std::make_shared<FormulaNode>(FormulaNode::Key{}, FormulaKind::kAnd, "", Var::kX,
                                             Var::kX, 0, std::move(children));
}

Formula make_or(std::vector<Formula> children) {
  if (children.size() < 2) throw ValidationError("disjunction needs at least two operands");
  return std::make_shared<FormulaNode>(FormulaNode::Key{}, FormulaKind::kOr, "", Var::kX,
                                             Var::kX, 0, std::move(children));
}

Formula make_exists(std::int64_t n, Var bound, Formula body) {
  if (n < 1) throw ValidationError("counting threshold must be at least 1");
  return std::make_shared<FormulaNode>(FormulaNode::Key{}, FormulaKind::kExistsGeq, "",
                                             bound, bound, n, std::vector<Formula>{std::move(body)});
}

Formula conj(std::vector<Formula> children) {
  std::vector<Formula> kept;
  for (auto& c : children) {
    if (c->kind() == FormulaKind::kFalse) return make_false();
    if (c->kind() == FormulaKind::kTrue) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return make_true();
  if (kept.size() == 1) return kept.front();
  return make_and(std::move(kept));
}

Formula disj(std::vector<Formula> children) {
  std::vector<Formula> kept;
  for (auto& c : children) {
    if (c->kind() == FormulaKind::kTrue) return make_true();
    if (c->kind() == FormulaKind::kFalse) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return make_false();
  if (kept.size() == 1) return kept.front();
  return make_or(std::move(kept));
}

Formula neg(Formula f) {
  if (f->kind() == FormulaKind::kTrue) return make_false();
  if (f->kind() == FormulaKind::kFalse) return make_true();
  if (f->kind() == FormulaKind::kNot) return f->child();
  return make_not(std::move(f));
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash() || a->kind() != b->kind() || a->size() != b->size()) return false;
  switch (a->kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return true;
    case FormulaKind::kUnary:
      return a->predicate() == b->predicate() && a->var() == b->var();
    case FormulaKind::kRelation:
      return a->predicate() == b->predicate() && a->first() == b->first() &&
             a->second() == b->second();
    case FormulaKind::kExistsGeq:
      if (a->threshold() != b->threshold() || a->var() != b->var()) return false;
      break;
    default:
      break;
  }
  if (a->children().size() != b->children().size()) return false;
  for (std::size_t i = 0; i < a->children().size(); ++i) {
    if (!structurally_equal(a->children()[i], b->children()[i])) return false;
  }
  return true;
}

int quantifier_depth(const Formula& f) { return f->depth(); }

Formula swap_variables(const Formula& f) {
  std::unordered_map<const FormulaNode*, Formula> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (auto it = memo.find(g.get()); it != memo.end()) return it->second;
    Formula out;
    switch (g->kind()) {
      case FormulaKind::kTrue:
      case FormulaKind::kFalse:
        out = g;
        break;
      case FormulaKind::kUnary:
        out = make_unary(g->predicate(), other(g->var()));
        break;
      case FormulaKind::kRelation:
        out = make_relation(g->predicate(), other(g->first()), other(g->second()));
        break;
      case FormulaKind::kNot:
        out = make_not(go(g->child()));
        break;
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        std::vector<Formula> cs;
        for (const auto& c : g->children()) cs.push_back(go(c));
        out = g->kind() == FormulaKind::kAnd ? make_and(std::move(cs)) : make_or(std::move(cs));
        break;
      }
      case FormulaKind::kExistsGeq:
        out = make_exists(g->threshold(), other(g->var()), go(g->body()));
        break;
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return go(f);
}

void collect_predicates(const Formula& f, std::vector<std::string>& unary,
                        std::vector<std::string>& binary) {
  std::unordered_set<const FormulaNode*> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!seen.insert(g.get()).second) return;
    auto add = [](std::vector<std::string>& into, const std::string& name) {
      if (std::find(into.begin(), into.end(), name) == into.end()) into.push_back(name);
    };
    if (g->kind() == FormulaKind::kUnary) add(unary, g->predicate());
    if (g->kind() == FormulaKind::kRelation) add(binary, g->predicate());
    for (const auto& c : g->children()) go(c);
  };
  go(f);
}

}  // namespace focgnn
