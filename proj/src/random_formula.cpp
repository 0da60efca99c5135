#include "focgnn/random_formula.hpp"

#include "focgnn/error.hpp"
#include "focgnn/rng.hpp"

namespace focgnn {
namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const Signature& sig, const RandomFormulaOptions& opts)
      : rng_(seed), sig_(sig), opts_(opts) {}

  Formula top() {
    budget_ = static_cast<std::int64_t>(opts_.max_size);
    return gen(opts_.max_depth, var_bit(Var::kX), Var::kX, Var::kY, false);
  }

 private:
  // allowed: variables that may occur free; in_body: we are directly inside
  // a quantifier binding `bound` with `outer` also in scope
  Formula gen(int depth, std::uint8_t allowed, Var outer, Var bound, bool in_body) {
    --budget_;
    double roll = rng_.unit();
    bool room = budget_ > 4;
    if (room && depth > 0 && roll < 0.35) return quantifier(depth, allowed, outer, in_body);
    if (room && roll < 0.60) {
      std::size_t k = 2 + rng_.below(2);
      std::vector<Formula> cs;
      for (std::size_t i = 0; i < k; ++i) cs.push_back(gen(depth, allowed, outer, bound, in_body));
      return rng_.coin() ? make_and(std::move(cs)) : make_or(std::move(cs));
    }
    if (room && roll < 0.72) return make_not(gen(depth, allowed, outer, bound, in_body));
    return leaf(allowed, outer, bound, in_body);
  }

  Formula quantifier(int depth, std::uint8_t allowed, Var outer, bool in_body) {
    std::int64_t n = rng_.range(1, opts_.max_threshold);
    Var b;
    if (in_body) {
      b = rng_.coin() ? Var::kX : Var::kY;
    } else {
      Var v = (allowed & 1) ? Var::kX : Var::kY;
      b = rng_.chance(0.9) ? other(v) : v;
    }
    if (!in_body && (allowed & var_bit(b))) {
      // rebinding the only variable in scope: the body is a closed y-less world
      return make_exists(n, b, gen(depth - 1, var_bit(b), other(b), b, false));
    }
    (void)outer;
    return make_exists(n, b, gen(depth - 1, 3, other(b), b, true));
  }

  Formula leaf(std::uint8_t allowed, Var outer, Var bound, bool in_body) {
    const auto& un = sig_.unary();
    const auto& bin = sig_.binary();
    double roll = rng_.unit();
    if (roll < 0.04) return rng_.coin() ? make_true() : make_false();
    if (in_body && !bin.empty() && (roll < 0.55 || un.empty())) {
      const auto& r = bin[rng_.below(bin.size())];
      if (opts_.forward_only || rng_.chance(0.6)) return make_relation(r, outer, bound);
      if (rng_.chance(0.9)) return make_relation(r, bound, outer);
      Var v = rng_.coin() ? outer : bound;
      return make_relation(r, v, v);
    }
    if (un.empty()) return rng_.coin() ? make_true() : make_false();
    Var v;
    if (allowed == 3)
      v = rng_.coin() ? Var::kX : Var::kY;
    else
      v = (allowed & 1) ? Var::kX : Var::kY;
    return make_unary(un[rng_.below(un.size())], v);
  }

  Rng rng_;
  const Signature& sig_;
  const RandomFormulaOptions& opts_;
  std::int64_t budget_ = 0;
};

}  // namespace

Formula random_formula(std::uint64_t seed, const Signature& sig, const RandomFormulaOptions& opts) {
  if (opts.max_depth < 0 || opts.max_threshold < 1)
    throw ValidationError("random_formula needs max_depth >= 0 and max_threshold >= 1");
  if (sig.unary().empty() && (sig.binary().empty() || opts.max_depth == 0))
    throw ValidationError("signature cannot express a formula with free variable x");
  for (std::uint64_t attempt = 0;; ++attempt) {
    Generator g(derive_seed(seed, attempt), sig, opts);
    auto f = g.top();
    if (f->free_vars() == var_bit(Var::kX) && f->depth() <= opts.max_depth &&
        f->size() <= opts.max_size * 2)
      return f;
  }
}

}  // namespace focgnn
