#include "focgnn/evaluate.hpp"

#include <unordered_map>
#include <unordered_set>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

// Truth table of a subformula over its free variables. mask bit 1 = x,
// bit 2 = y; with both free the layout is x-major.
struct Table {
  std::uint8_t mask = 0;
  std::vector<std::uint8_t> cells;
};

class Evaluator {
 public:
  explicit Evaluator(const Graph& g) : g_(g), n_(g.node_count()) {}

  const Table& table(const Formula& f) {
    if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    Table t = compute(f);
    return memo_.emplace(f.get(), std::move(t)).first->second;
  }

  std::uint8_t at(const Table& t, std::size_t x, std::size_t y) const {
    switch (t.mask) {
      case 0: return t.cells[0];
      case 1: return t.cells[x];
      case 2: return t.cells[y];
      default: return t.cells[x * n_ + y];
    }
  }

 private:
  std::size_t cell_count(std::uint8_t mask) const {
    if (mask == 0) return 1;
    if (mask == 3) return n_ * n_;
    return n_;
  }

  // visit every (x, y) coordinate of a table with the given mask
  template <typename Fn>
  void for_cells(std::uint8_t mask, Fn&& fn) const {
    std::size_t xs = (mask & 1) ? n_ : 1;
    std::size_t ys = (mask & 2) ? n_ : 1;
    std::size_t k = 0;
    for (std::size_t x = 0; x < xs; ++x)
      for (std::size_t y = 0; y < ys; ++y) fn(k++, x, y);
  }

  PredId unary_pred(const std::string& name) const {
    auto p = g_.signature().unary_index(name);
    if (!p) throw ValidationError("unknown unary predicate '" + name + "'");
    return *p;
  }
  PredId binary_pred(const std::string& name) const {
    auto p = g_.signature().binary_index(name);
    if (!p) throw ValidationError("unknown binary predicate '" + name + "'");
    return *p;
  }

  Table compute(const Formula& f) {
    Table out;
    out.mask = f->free_vars();
    out.cells.assign(cell_count(out.mask), 0);
    switch (f->kind()) {
      case FormulaKind::kTrue:
        out.cells[0] = 1;
        break;
      case FormulaKind::kFalse:
        break;
      case FormulaKind::kUnary: {
        auto p = unary_pred(f->predicate());
        for (NodeId v = 0; v < n_; ++v) out.cells[v] = g_.has_unary(v, p);
        break;
      }
      case FormulaKind::kRelation: {
        auto p = binary_pred(f->predicate());
        if (f->first() == f->second()) break;  // self-loops never exist
        bool forward = f->first() == Var::kX;
        for (NodeId v = 0; v < n_; ++v) {
          for (auto w : g_.out_neighbors(v, p)) {
            if (forward)
              out.cells[static_cast<std::size_t>(v) * n_ + w] = 1;
            else
              out.cells[static_cast<std::size_t>(w) * n_ + v] = 1;
          }
        }
        break;
      }
      case FormulaKind::kNot: {
        const auto& c = table(f->child());
        for (std::size_t k = 0; k < out.cells.size(); ++k) out.cells[k] = !c.cells[k];
        break;
      }
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        bool is_and = f->kind() == FormulaKind::kAnd;
        std::fill(out.cells.begin(), out.cells.end(), is_and ? 1 : 0);
        for (const auto& c : f->children()) {
          const auto& ct = table(c);
          for_cells(out.mask, [&](std::size_t k, std::size_t x, std::size_t y) {
            auto v = at(ct, x, y);
            if (is_and)
              out.cells[k] &= v;
            else
              out.cells[k] |= v;
          });
        }
        break;
      }
      case FormulaKind::kExistsGeq: {
        const auto& body = table(f->body());
        const Var b = f->var();
        const auto n = static_cast<std::int64_t>(f->threshold());
        if (!(body.mask & var_bit(b))) {
          // body ignores the bound variable: count is |V| or 0
          bool enough = static_cast<std::int64_t>(n_) >= n;
          for (std::size_t k = 0; k < out.cells.size(); ++k) out.cells[k] = body.cells[k] && enough;
          break;
        }
        for_cells(out.mask, [&](std::size_t k, std::size_t x, std::size_t y) {
          std::int64_t count = 0;
          for (std::size_t w = 0; w < n_ && count < n; ++w) {
            count += b == Var::kX ? at(body, w, y) : at(body, x, w);
          }
          out.cells[k] = count >= n;
        });
        break;
      }
    }
    return out;
  }

  const Graph& g_;
  std::size_t n_;
  std::unordered_map<const FormulaNode*, Table> memo_;
};

std::size_t resolve(const Graph& g, const std::optional<std::string>& name, char var) {
  if (!name) throw ValidationError(std::string("free variable ") + var + " is unassigned");
  auto v = g.node_index(*name);
  if (!v) throw ValidationError("unknown node '" + *name + "'");
  return *v;
}

}  // namespace

bool evaluate(const Formula& f, const Graph& g, const Assignment& a) {
  std::size_t x = 0, y = 0;
  if (f->free_vars() & 1) x = resolve(g, a.x, 'x');
  if (f->free_vars() & 2) y = resolve(g, a.y, 'y');
  Evaluator ev(g);
  return ev.at(ev.table(f), x, y) != 0;
}

std::vector<bool> evaluate_nodes(const Formula& f, const Graph& g) {
  if (f->free_vars() & 2) throw ValidationError("classifier has free variable y");
  Evaluator ev(g);
  const auto& t = ev.table(f);
  std::vector<bool> out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = ev.at(t, v, 0) != 0;
  return out;
}

std::vector<std::string> missing_predicates(const Formula& f, const Signature& sig) {
  std::vector<std::string> unary, binary, missing;
  collect_predicates(f, unary, binary);
  for (const auto& u : unary)
    if (!sig.has_unary(u)) missing.push_back(u);
  for (const auto& b : binary)
    if (!sig.has_binary(b)) missing.push_back(b);
  return missing;
}

}  // namespace focgnn
