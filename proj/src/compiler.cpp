#include "focgnn/compiler.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/model_io.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/rsfoc.hpp"
#include "focgnn/transform.hpp"

namespace focgnn {
namespace {

using GateId = std::size_t;

enum class TermKind : std::uint8_t { kSelf, kNeighbor, kGlobal };

struct Term {
  TermKind kind;
  PredId rel;
  GateId in;
  std::int64_t weight;
  auto operator<=>(const Term&) const = default;
};

// A gate is either an input coordinate or clip(sum of terms + bias).
struct Gate {
  bool input = false;
  std::size_t coord = 0;
  std::vector<Term> terms;
  std::int64_t bias = 0;
  std::size_t level = 0;
};

class Circuit {
 public:
  GateId input(std::size_t coord) {
    auto key = std::make_tuple(true, std::vector<Term>{}, static_cast<std::int64_t>(coord));
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    Gate g;
    g.input = true;
    g.coord = coord;
    return add(std::move(key), std::move(g));
  }

  GateId linear(std::vector<Term> terms, std::int64_t bias) {
    std::sort(terms.begin(), terms.end());
    // merge repeated (kind, rel, in) terms
    std::vector<Term> merged;
    for (const auto& t : terms) {
      if (!merged.empty() && merged.back().kind == t.kind && merged.back().rel == t.rel &&
          merged.back().in == t.in)
        merged.back().weight += t.weight;
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.weight == 0; });
    auto key = std::make_tuple(false, merged, bias);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    Gate g;
    g.terms = std::move(merged);
    g.bias = bias;
    for (const auto& t : g.terms) g.level = std::max(g.level, gates_[t.in].level);
    g.level += 1;
    return add(std::move(key), std::move(g));
  }

  GateId one() { return linear({}, 1); }
  GateId zero() { return linear({}, 0); }
  bool is_one(GateId g) const { return !gates_[g].input && gates_[g].terms.empty() && gates_[g].bias >= 1; }
  bool is_zero(GateId g) const { return !gates_[g].input && gates_[g].terms.empty() && gates_[g].bias <= 0; }

  GateId all(std::vector<GateId> in) {
    std::vector<Term> terms;
    for (auto g : in) {
      if (is_zero(g)) return zero();
      if (is_one(g)) continue;
      terms.push_back({TermKind::kSelf, 0, g, 1});
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.empty()) return one();
    if (terms.size() == 1) return terms[0].in;
    const auto k = static_cast<std::int64_t>(terms.size());
    return linear(std::move(terms), 1 - k);
  }

  GateId any(std::vector<GateId> in) {
    std::vector<Term> terms;
    for (auto g : in) {
      if (is_one(g)) return one();
      if (is_zero(g)) continue;
      terms.push_back({TermKind::kSelf, 0, g, 1});
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.empty()) return zero();
    if (terms.size() == 1) return terms[0].in;
    return linear(std::move(terms), 0);
  }

  GateId negate(GateId g) {
    if (is_one(g)) return zero();
    if (is_zero(g)) return one();
    return linear({{TermKind::kSelf, 0, g, -1}}, 1);
  }

  // Lays the gates reachable from `out` into layers; level-l gates are
  // computed in layer l, earlier values are carried by identity neurons.
  ZoGnn assemble(GateId out, std::vector<std::string> binary_order, std::size_t input_dim) const {
    const auto K = binary_order.size();
    std::vector<bool> live(gates_.size(), false);
    std::vector<GateId> stack{out};
    while (!stack.empty()) {
      auto g = stack.back();
      stack.pop_back();
      if (live[g]) continue;
      live[g] = true;
      for (const auto& t : gates_[g].terms) stack.push_back(t.in);
    }
    const std::size_t L = std::max<std::size_t>(1, gates_[out].level);
    std::vector<std::size_t> last_use(gates_.size(), 0);
    for (GateId g = 0; g < gates_.size(); ++g) {
      if (!live[g]) continue;
      for (const auto& t : gates_[g].terms)
        last_use[t.in] = std::max(last_use[t.in], gates_[g].level);
    }
    last_use[out] = L + 1;

    ZoGnn m;
    m.binary_order = std::move(binary_order);
    m.input_dim = input_dim;
    // positions of live values in the previous layer's output
    std::unordered_map<GateId, std::size_t> prev;
    for (GateId g = 0; g < gates_.size(); ++g)
      if (live[g] && gates_[g].input) prev.emplace(g, gates_[g].coord);
    std::size_t prev_dim = input_dim;

    for (std::size_t l = 1; l <= L; ++l) {
      std::vector<GateId> rows;
      for (GateId g = 0; g < gates_.size(); ++g) {
        if (!live[g]) continue;
        const auto lv = gates_[g].level;
        if (lv <= l && l < last_use[g]) rows.push_back(g);
      }
      ZoLayer layer = zero_layer(rows.size(), prev_dim, K);
      std::unordered_map<GateId, std::size_t> cur;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& gate = gates_[rows[r]];
        cur.emplace(rows[r], r);
        if (gate.level < l) {
          layer.C.set(r, prev.at(rows[r]), 1);
          continue;
        }
        for (const auto& t : gate.terms) {
          const auto c = prev.at(t.in);
          switch (t.kind) {
            case TermKind::kSelf: layer.C.add(r, c, t.weight); break;
            case TermKind::kNeighbor: layer.A[t.rel].add(r, c, t.weight); break;
            case TermKind::kGlobal: layer.R.add(r, c, t.weight); break;
          }
        }
        layer.b[r] = gate.bias;
      }
      m.layers.push_back(std::move(layer));
      prev = std::move(cur);
      prev_dim = rows.size();
    }
    m.validate();
    if (m.output_dim() != 1) throw CompileError("internal: compiled model is not one-dimensional");
    return m;
  }

 private:
  using Key = std::tuple<bool, std::vector<Term>, std::int64_t>;

  GateId add(Key key, Gate g) {
    gates_.push_back(std::move(g));
    index_.emplace(std::move(key), gates_.size() - 1);
    return gates_.size() - 1;
  }

  std::vector<Gate> gates_;
  std::map<Key, GateId> index_;
};

struct Lit {
  std::string pred;
  bool forward;
  auto operator<=>(const Lit&) const = default;
};

class FormulaCompiler {
 public:
  FormulaCompiler(Backend backend, const Signature& target) : backend_(backend), sig_(target) {}

  Circuit& circuit() { return c_; }

  GateId run(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    auto g = build(f);
    memo_.emplace(f, g);
    return g;
  }

 private:
  PredId rel(const std::string& name) const {
    auto p = sig_.binary_index(name);
    if (!p) throw CompileError("unknown binary predicate '" + name + "'");
    return *p;
  }

  GateId build(const Formula& f) {
    switch (f->kind()) {
      case FormulaKind::kTrue:
        return c_.one();
      case FormulaKind::kFalse:
        return c_.zero();
      case FormulaKind::kUnary: {
        auto p = sig_.unary_index(f->predicate());
        if (!p) throw CompileError("unknown unary predicate '" + f->predicate() + "'");
        return c_.input(*p);
      }
      case FormulaKind::kRelation:
        throw CompileError("relation atom outside a guard");
      case FormulaKind::kNot:
        return c_.negate(run(f->child()));
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        std::vector<GateId> in;
        for (const auto& ch : f->children()) in.push_back(run(ch));
        return f->kind() == FormulaKind::kAnd ? c_.all(std::move(in)) : c_.any(std::move(in));
      }
      case FormulaKind::kExistsGeq:
        return quantifier(f);
    }
    throw CompileError("unsupported formula node");
  }

  GateId quantifier(const Formula& f) {
    auto split = split_guarded(f);
    if (!split) throw CompileError("quantifier body is not in guarded form");
    std::set<Lit> universe, positive;
    for (const auto& l : split->guard) {
      universe.insert({l.pred, l.forward});
      if (l.positive) positive.insert({l.pred, l.forward});
    }
    const auto psi = run(split->rest);
    const auto n = f->threshold();
    return backend_ == Backend::kSimple ? simple(universe, positive, psi, n)
                                        : transformed(universe, positive, psi, n);
  }

  GateId simple(const std::set<Lit>& universe, const std::set<Lit>& positive, GateId psi,
                std::int64_t n) {
    for (const auto& l : universe)
      if (!l.forward)
        throw CompileError("simple backend cannot read '" + l.pred +
                           "' against edge direction; use the transformed backend");
    if (positive.size() >= 2) return c_.zero();  // no two relations share a pair
    if (positive.size() == 1)
      return c_.linear({{TermKind::kNeighbor, rel(positive.begin()->pred), psi, 1}}, 1 - n);
    std::vector<Term> terms{{TermKind::kGlobal, 0, psi, 1}};
    for (const auto& l : universe) terms.push_back({TermKind::kNeighbor, rel(l.pred), psi, -1});
    return c_.linear(std::move(terms), 1 - n);
  }

  // at an added node a::b: does the literal hold for the pair (a, b)
  GateId has(const Lit& l) {
    const auto name = l.forward ? l.pred : l.pred + std::string(kInverseSuffix);
    return c_.linear({{TermKind::kNeighbor, rel(name), c_.one(), 1}}, 0);
  }

  GateId transformed(const std::set<Lit>& universe, const std::set<Lit>& positive, GateId psi,
                     std::int64_t n) {
    const auto aux1 = rel(std::string(kAux1));
    const auto aux2 = rel(std::string(kAux2));
    // at a::b: psi evaluated at b, reached through the mirror b::a
    const auto at_partner = c_.linear({{TermKind::kNeighbor, aux1, psi, 1}}, 0);
    const auto hop = c_.linear({{TermKind::kNeighbor, aux2, at_partner, 1}}, 0);
    if (!positive.empty()) {
      std::vector<GateId> profile;
      for (const auto& l : universe)
        profile.push_back(positive.count(l) ? has(l) : c_.negate(has(l)));
      profile.push_back(hop);
      const auto match = c_.all(std::move(profile));
      return c_.linear({{TermKind::kNeighbor, aux1, match, 1}}, 1 - n);
    }
    const auto primal = c_.input(*sig_.unary_index(kPrimal));
    std::vector<Term> terms{{TermKind::kGlobal, 0, c_.all({primal, psi}), 1}};
    if (!universe.empty()) {
      std::vector<GateId> some;
      for (const auto& l : universe) some.push_back(has(l));
      const auto related = c_.all({c_.any(std::move(some)), hop});
      terms.push_back({TermKind::kNeighbor, aux1, related, -1});
    }
    return c_.linear(std::move(terms), 1 - n);
  }

  Backend backend_;
  const Signature& sig_;
  Circuit c_;
  std::unordered_map<Formula, GateId, FormulaHash, FormulaEq> memo_;
};

bool has_backward_literal(const Formula& f) {
  std::unordered_map<const FormulaNode*, bool> memo;
  std::function<bool(const Formula&)> walk = [&](const Formula& g) -> bool {
    if (auto it = memo.find(g.get()); it != memo.end()) return it->second;
    bool out = false;
    if (g->kind() == FormulaKind::kExistsGeq) {
      if (auto s = split_guarded(g)) {
        for (const auto& l : s->guard) out = out || !l.forward;
        out = out || walk(s->rest);
      }
    } else {
      for (const auto& c : g->children()) out = out || walk(c);
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return walk(f);
}

void check_formula(const Formula& f, const Signature& base) {
  if (f->free_vars() & var_bit(Var::kY))
    throw CompileError("classifier must have free variables within {x}");
  auto missing = missing_predicates(f, base);
  if (!missing.empty()) throw CompileError("formula uses unknown predicate '" + missing[0] + "'");
}

Signature inverse_signature(const Signature& base) {
  auto binary = base.binary();
  for (const auto& r : base.binary()) binary.push_back(r + std::string(kInverseSuffix));
  return Signature(base.unary(), std::move(binary));
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::kSimple ? "simple" : "transformed";
}

Backend backend_from_name(const std::string& name) {
  if (name == "simple") return Backend::kSimple;
  if (name == "transformed") return Backend::kTransformed;
  throw ValidationError("unknown backend '" + name + "' (expected simple or transformed)");
}

Graph CompiledClassifier::prepare(const Graph& g) const {
  if (!(g.signature() == base))
    throw ValidationError("graph signature does not match the classifier's signature");
  if (backend == Backend::kSimple) return g;
  return transform_F(inverse_augmented ? add_inverse_predicates(g) : g);
}

std::vector<bool> CompiledClassifier::classify(const Graph& g) const {
  auto out = forward_zo(model, prepare(g));
  std::vector<bool> res(g.node_count());
  for (std::size_t v = 0; v < res.size(); ++v) res[v] = out.rows[v][0] != Rational(0);
  return res;
}

CompiledClassifier compile_simple(const Formula& f, const Signature& base) {
  check_formula(f, base);
  CompiledClassifier c;
  c.backend = Backend::kSimple;
  c.source = f;
  c.normalized = to_rsfoc2(f);
  c.base = base;
  c.target = base;
  FormulaCompiler fc(Backend::kSimple, c.target);
  auto out = fc.run(c.normalized);
  c.model = fc.circuit().assemble(out, c.target.binary(), c.target.encoding_dim());
  return c;
}

CompiledClassifier compile_transformed(const Formula& f, const Signature& base) {
  check_formula(f, base);
  CompiledClassifier c;
  c.backend = Backend::kTransformed;
  c.source = f;
  c.normalized = to_rsfoc2(f);
  c.base = base;
  c.inverse_augmented = has_backward_literal(c.normalized);
  c.target = transformed_signature(c.inverse_augmented ? inverse_signature(base) : base);
  FormulaCompiler fc(Backend::kTransformed, c.target);
  auto out = fc.run(c.normalized);
  c.model = fc.circuit().assemble(out, c.target.binary(), c.target.encoding_dim());
  return c;
}

CompiledClassifier compile(const Formula& f, const Signature& base, Backend backend) {
  return backend == Backend::kSimple ? compile_simple(f, base) : compile_transformed(f, base);
}

FeatureAssignment compile_pipeline(const Formula& f, const TemporalGraph& tg) {
  const auto T = tg.timestamps();
  const auto sig = temporal_signature(tg.signature(), T);
  for (const auto& p : missing_predicates(f, sig)) {
    auto at = p.rfind('@');
    if (at != std::string::npos && at + 1 < p.size() &&
        std::all_of(p.begin() + static_cast<std::ptrdiff_t>(at + 1), p.end(),
                    [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw ValidationError("timestamp out of range in predicate '" + p + "' (graph has " +
                            std::to_string(T) + " snapshots)");
    throw ValidationError("formula uses unknown predicate '" + p + "'");
  }
  auto c = compile_transformed(f, sig);
  auto labels = c.classify(collapse_H(tg));
  FeatureAssignment out(labels.size(), 1);
  for (std::size_t v = 0; v < labels.size(); ++v) out.rows[v][0] = labels[v] ? 1 : 0;
  return out;
}

Json compiled_to_json(const CompiledClassifier& c) {
  auto j = zo_to_json(c.model);
  Json meta;
  meta["backend"] = backend_name(c.backend);
  meta["formula"] = print_formula(c.source);
  meta["normalized"] = print_formula(c.normalized);
  meta["inverse_augmented"] = c.inverse_augmented;
  meta["signature"] = signature_to_json(c.base);
  j["metadata"] = std::move(meta);
  return j;
}

CompiledClassifier compiled_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("metadata"))
    throw FormatError("compiled model needs a 'metadata' block");
  const auto& meta = j["metadata"];
  for (const char* key : {"backend", "formula", "signature"})
    if (!meta.contains(key)) throw FormatError(std::string("metadata is missing '") + key + "'");
  CompiledClassifier c;
  c.model = zo_from_json(j);
  c.backend = backend_from_name(meta["backend"].get<std::string>());
  c.base = signature_from_json(meta["signature"]);
  c.source = parse_formula(meta["formula"].get<std::string>(), c.base);
  c.normalized = to_rsfoc2(c.source);
  c.inverse_augmented = meta.value("inverse_augmented", false);
  c.target = c.backend == Backend::kSimple
                 ? c.base
                 : transformed_signature(c.inverse_augmented ? inverse_signature(c.base) : c.base);
  if (c.model.binary_order != c.target.binary() || c.model.input_dim != c.target.encoding_dim())
    throw FormatError("model shape does not match its metadata");
  return c;
}

}  // namespace focgnn
