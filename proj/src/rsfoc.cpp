#include "focgnn/rsfoc.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

struct Literal {
  std::string pred;
  bool forward;
  auto operator<=>(const Literal&) const = default;
};

std::optional<Literal> as_literal(const Formula& f, Var outer, Var bound) {
  if (f->kind() != FormulaKind::kRelation) return std::nullopt;
  if (f->first() == outer && f->second() == bound) return Literal{f->predicate(), true};
  if (f->first() == bound && f->second() == outer) return Literal{f->predicate(), false};
  return std::nullopt;
}

// Boolean skeleton of a quantifier body over three leaf kinds.
struct Skel {
  enum Kind { kConst, kX, kY, kLit, kNot, kAnd, kOr } kind;
  bool value = false;
  std::size_t index = 0;
  std::vector<Skel> children;
};

class Normalizer {
 public:
  Formula run(const Formula& f, Var outer) {
    auto key = std::make_pair(f.get(), outer);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula out = normalize(f, outer);
    memo_.emplace(key, out);
    return out;
  }

 private:
  Formula intern(Formula f) {
    auto [it, _] = pool_.emplace(f, f);
    return it->second;
  }

  Formula normalize(const Formula& f, Var outer) {
    switch (f->kind()) {
      case FormulaKind::kTrue:
      case FormulaKind::kFalse:
      case FormulaKind::kUnary:
        return f;
      case FormulaKind::kRelation:
        // only r(v,v) can reach here; graphs carry no self-loops
        return make_false();
      case FormulaKind::kNot:
        return neg(run(f->child(), outer));
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        std::vector<Formula> cs;
        for (const auto& c : f->children()) cs.push_back(run(c, outer));
        return intern(f->kind() == FormulaKind::kAnd ? conj(std::move(cs)) : disj(std::move(cs)));
      }
      case FormulaKind::kExistsGeq:
        if (f->var() == outer) {
          // a sentence that reuses the outer name; rename its bound variable
          return run(swap_variables(f), outer);
        }
        return quantifier(f, outer);
    }
    return f;
  }

  Skel decompose(const Formula& f, Var outer, Var bound) {
    Skel s;
    if (f->kind() == FormulaKind::kTrue || f->kind() == FormulaKind::kFalse) {
      s.kind = Skel::kConst;
      s.value = f->kind() == FormulaKind::kTrue;
      return s;
    }
    auto fv = f->free_vars();
    if (!(fv & var_bit(bound))) {
      s.kind = Skel::kX;
      s.index = leaf_index(xleaves_, f);
      return s;
    }
    if (fv == var_bit(bound)) {
      s.kind = Skel::kY;
      s.index = leaf_index(yleaves_, f);
      return s;
    }
    if (auto lit = as_literal(f, outer, bound)) {
      s.kind = Skel::kLit;
      auto it = std::find(lits_.begin(), lits_.end(), *lit);
      s.index = static_cast<std::size_t>(it - lits_.begin());
      if (it == lits_.end()) lits_.push_back(*lit);
      return s;
    }
    switch (f->kind()) {
      case FormulaKind::kNot: s.kind = Skel::kNot; break;
      case FormulaKind::kAnd: s.kind = Skel::kAnd; break;
      case FormulaKind::kOr: s.kind = Skel::kOr; break;
      default: throw ValidationError("unexpected subformula in quantifier body");
    }
    for (const auto& c : f->children()) s.children.push_back(decompose(c, outer, bound));
    return s;
  }

  static std::size_t leaf_index(std::vector<Formula>& leaves, const Formula& f) {
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (structurally_equal(leaves[i], f)) return i;
    leaves.push_back(f);
    return leaves.size() - 1;
  }

  // substitute truth values for x-leaves (tmask) and literals (smask) under
  // the literal order `order`; y-leaves become their normalized forms
  Formula substitute(const Skel& s, std::uint64_t tmask, const std::vector<bool>& lit_value,
                     const std::vector<Formula>& ynorm) {
    switch (s.kind) {
      case Skel::kConst: return s.value ? make_true() : make_false();
      case Skel::kX: return ((tmask >> s.index) & 1) ? make_true() : make_false();
      case Skel::kY: return ynorm[s.index];
      case Skel::kLit: return lit_value[s.index] ? make_true() : make_false();
      case Skel::kNot: return neg(substitute(s.children[0], tmask, lit_value, ynorm));
      case Skel::kAnd:
      case Skel::kOr: {
        std::vector<Formula> cs;
        for (const auto& c : s.children) {
          auto v = substitute(c, tmask, lit_value, ynorm);
          if (s.kind == Skel::kAnd && v->kind() == FormulaKind::kFalse) return v;
          if (s.kind == Skel::kOr && v->kind() == FormulaKind::kTrue) return v;
          cs.push_back(std::move(v));
        }
        return s.kind == Skel::kAnd ? conj(std::move(cs)) : disj(std::move(cs));
      }
    }
    return make_false();
  }

  Formula quantifier(const Formula& f, Var outer) {
    const Var bound = f->var();
    const std::int64_t n = f->threshold();

    // fresh decomposition state; nested quantifiers are handled through run()
    auto saved_x = std::move(xleaves_);
    auto saved_y = std::move(yleaves_);
    auto saved_l = std::move(lits_);
    xleaves_.clear();
    yleaves_.clear();
    lits_.clear();
    Skel skel = decompose(f->body(), outer, bound);
    auto xl = std::move(xleaves_);
    auto yl = std::move(yleaves_);
    auto lits = std::move(lits_);
    xleaves_ = std::move(saved_x);
    yleaves_ = std::move(saved_y);
    lits_ = std::move(saved_l);

    if (xl.size() > 20 || lits.size() > 20)
      throw ValidationError("quantifier body too large to normalize");

    // canonical literal order for guards
    std::vector<std::size_t> order(lits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lits[a] < lits[b]; });

    std::vector<Formula> xnorm, ynorm;
    for (const auto& x : xl) xnorm.push_back(run(x, outer));
    for (const auto& y : yl) ynorm.push_back(run(y, bound));

    const std::size_t k = lits.size();
    std::vector<Formula> guards(std::size_t{1} << k);
    for (std::uint64_t s = 0; s < guards.size(); ++s) {
      std::vector<Formula> conjuncts;
      for (std::size_t pos = 0; pos < k; ++pos) {
        const auto& l = lits[order[pos]];
        auto atom = l.forward ? make_relation(l.pred, outer, bound)
                              : make_relation(l.pred, bound, outer);
        conjuncts.push_back((s >> pos) & 1 ? atom : make_not(atom));
      }
      if (conjuncts.empty())
        guards[s] = make_true();
      else if (conjuncts.size() == 1)
        guards[s] = conjuncts[0];
      else
        guards[s] = make_and(std::move(conjuncts));
      guards[s] = intern(guards[s]);
    }

    std::vector<Formula> t_terms;
    std::vector<bool> lit_value(k);
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << xl.size()); ++t) {
      std::vector<std::pair<std::uint64_t, Formula>> active;
      for (std::uint64_t s = 0; s < guards.size(); ++s) {
        for (std::size_t pos = 0; pos < k; ++pos) lit_value[order[pos]] = (s >> pos) & 1;
        auto psi = substitute(skel, t, lit_value, ynorm);
        if (psi->kind() == FormulaKind::kFalse) continue;
        active.emplace_back(s, intern(psi));
      }
      if (active.empty()) continue;

      std::vector<Formula> xparts;
      for (std::size_t i = 0; i < xl.size(); ++i)
        xparts.push_back((t >> i) & 1 ? xnorm[i] : neg(xnorm[i]));

      std::vector<Formula> splits;
      std::vector<std::int64_t> parts(active.size(), 0);
      std::size_t produced = 0;
      auto emit = [&]() {
        if (++produced > kMaxSplittings)
          throw ValidationError("normalization output too large (threshold splittings)");
        std::vector<Formula> qs;
        for (std::size_t i = 0; i < active.size(); ++i) {
          if (parts[i] == 0) continue;
          qs.push_back(counted(parts[i], bound, guards[active[i].first], active[i].second));
        }
        splits.push_back(conj(std::move(qs)));
      };
      // all compositions of n into active.size() non-negative parts
      auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
        if (i + 1 == active.size()) {
          parts[i] = left;
          emit();
          return;
        }
        for (std::int64_t v = left; v >= 0; --v) {
          parts[i] = v;
          self(self, i + 1, left - v);
        }
      };
      rec(rec, 0, n);
      xparts.push_back(disj(std::move(splits)));
      t_terms.push_back(conj(std::move(xparts)));
    }
    return intern(disj(std::move(t_terms)));
  }

  Formula counted(std::int64_t n, Var bound, const Formula& guard, const Formula& psi) {
    auto key = std::make_tuple(n, bound, guard.get(), psi.get());
    if (auto it = quant_.find(key); it != quant_.end()) return it->second;
    auto q = intern(make_exists(n, bound, make_and({guard, psi})));
    quant_.emplace(key, q);
    return q;
  }

  std::map<std::pair<const FormulaNode*, Var>, Formula> memo_;
  std::unordered_map<Formula, Formula, FormulaHash, FormulaEq> pool_;
  std::map<std::tuple<std::int64_t, Var, const FormulaNode*, const FormulaNode*>, Formula> quant_;
  std::vector<Formula> xleaves_;
  std::vector<Formula> yleaves_;
  std::vector<Literal> lits_;
};

bool is_guard(const Formula& g, Var outer, Var bound) {
  if (g->kind() == FormulaKind::kTrue) return true;
  auto literal_of = [&](const Formula& f) -> std::optional<Literal> {
    if (f->kind() == FormulaKind::kNot) return as_literal(f->child(), outer, bound);
    return as_literal(f, outer, bound);
  };
  if (g->kind() != FormulaKind::kAnd) return literal_of(g).has_value();
  std::vector<Literal> seen;
  for (const auto& c : g->children()) {
    auto l = literal_of(c);
    if (!l) return false;
    if (std::find(seen.begin(), seen.end(), *l) != seen.end()) return false;
    seen.push_back(*l);
  }
  return true;
}

bool check_rsfoc(const Formula& f, std::unordered_map<const FormulaNode*, bool>& memo) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  bool ok = true;
  switch (f->kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
    case FormulaKind::kUnary:
      break;
    case FormulaKind::kRelation:
      ok = false;
      break;
    case FormulaKind::kNot:
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
      for (const auto& c : f->children()) ok = ok && check_rsfoc(c, memo);
      break;
    case FormulaKind::kExistsGeq: {
      const auto& body = f->body();
      const Var bound = f->var();
      ok = body->kind() == FormulaKind::kAnd && body->children().size() == 2 &&
           is_guard(body->children()[0], other(bound), bound) &&
           (body->children()[1]->free_vars() & ~var_bit(bound)) == 0 &&
           check_rsfoc(body->children()[1], memo);
      break;
    }
  }
  memo.emplace(f.get(), ok);
  return ok;
}

}  // namespace

Formula to_rsfoc2(const Formula& f) {
  if (f->free_vars() == 3) throw ValidationError("to_rsfoc2 needs at most one free variable");
  Normalizer n;
  return n.run(f, f->free_vars() == 2 ? Var::kY : Var::kX);
}

bool is_rsfoc2(const Formula& f) {
  std::unordered_map<const FormulaNode*, bool> memo;
  return check_rsfoc(f, memo);
}

std::optional<GuardedBody> split_guarded(const Formula& exists) {
  if (exists->kind() != FormulaKind::kExistsGeq) return std::nullopt;
  const auto& body = exists->body();
  const Var bound = exists->var();
  const Var outer = other(bound);
  if (body->kind() != FormulaKind::kAnd || body->children().size() != 2) return std::nullopt;
  const auto& g = body->children()[0];
  if (!is_guard(g, outer, bound)) return std::nullopt;
  if (body->children()[1]->free_vars() & ~var_bit(bound)) return std::nullopt;
  GuardedBody out;
  out.rest = body->children()[1];
  auto add = [&](const Formula& c) {
    bool positive = c->kind() != FormulaKind::kNot;
    const auto& atom = positive ? c : c->child();
    out.guard.push_back({atom->predicate(), atom->first() == outer, positive});
  };
  if (g->kind() == FormulaKind::kAnd) {
    for (const auto& c : g->children()) add(c);
  } else if (g->kind() != FormulaKind::kTrue) {
    add(g);
  }
  return out;
}

}  // namespace focgnn
