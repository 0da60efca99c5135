#include "focgnn/zo_gnn.hpp"

#include <algorithm>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in 0/1-GNN forward");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in 0/1-GNN forward");
  return r;
}

std::int64_t clip(std::int64_t t) { return std::max<std::int64_t>(0, std::min<std::int64_t>(t, 1)); }

// acc[r] += M * vec
void mul_acc(const IntMatrix& m, const std::int64_t* vec, std::vector<std::int64_t>& acc) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, w] : m.row(r)) {
      if (vec[c] != 0) acc[r] = checked_add(acc[r], checked_mul(w, vec[c]));
    }
  }
}

void check_shape(const IntMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols)
    throw ValidationError(std::string("matrix ") + what + " has shape " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()) + ", expected " + std::to_string(rows) +
                          "x" + std::to_string(cols));
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::int64_t IntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = entries_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(static_cast<std::uint32_t>(c),
                                                                    INT64_MIN));
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void IntMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  if (r >= rows_ || c >= cols_) throw ValidationError("matrix index out of range");
  auto& row = entries_[r];
  auto key = static_cast<std::uint32_t>(c);
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(key, INT64_MIN));
  if (it != row.end() && it->first == key) {
    if (v == 0)
      row.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    row.insert(it, {key, v});
  }
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& r) { return r.empty(); });
}

void IntMatrix::place(const IntMatrix& src, std::size_t r0, std::size_t c0) {
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (const auto& [c, v] : src.row(r)) set(r0 + r, c0 + c, v);
}

ZoLayer zero_layer(std::size_t out_dim, std::size_t in_dim, std::size_t relations) {
  ZoLayer l;
  l.C = IntMatrix(out_dim, in_dim);
  l.A.assign(relations, IntMatrix(out_dim, in_dim));
  l.R = IntMatrix(out_dim, in_dim);
  l.b.assign(out_dim, 0);
  return l;
}

ZoLayer identity_layer(std::size_t dim, std::size_t relations) {
  auto l = zero_layer(dim, dim, relations);
  l.C = IntMatrix::identity(dim);
  return l;
}

void ZoGnn::validate() const {
  if (input_dim == 0) throw ValidationError("model input dimension must be positive");
  std::size_t d = input_dim;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    const auto out = l.out_dim();
    if (out == 0) throw ValidationError("layer " + std::to_string(i) + " has zero width");
    check_shape(l.C, out, d, "C");
    check_shape(l.R, out, d, "R");
    if (l.A.size() != binary_order.size())
      throw ValidationError("layer " + std::to_string(i) + " has " + std::to_string(l.A.size()) +
                            " relation matrices for " + std::to_string(binary_order.size()) +
                            " relations");
    for (const auto& a : l.A) check_shape(a, out, d, "A");
    if (l.b.size() != out) throw ValidationError("bias length mismatch");
    d = out;
  }
}

FeatureAssignment IntFeatures::to_assignment() const {
  FeatureAssignment fa(nodes, dim);
  for (std::size_t v = 0; v < nodes; ++v)
    for (std::size_t i = 0; i < dim; ++i) fa.rows[v][i] = at(v, i);
  return fa;
}

IntFeatures encode_nodes_int(const Graph& g) {
  const auto& sig = g.signature();
  IntFeatures out(g.node_count(), sig.encoding_dim());
  if (sig.unary().empty()) {
    std::fill(out.data.begin(), out.data.end(), 1);
    return out;
  }
  for (const auto& f : g.unary_facts()) out.at(f.node, f.pred) = 1;
  return out;
}

IntFeatures forward_zo_from(const ZoGnn& m, const Graph& g, IntFeatures init) {
  m.validate();
  if (g.signature().binary() != m.binary_order)
    throw ValidationError("graph binary predicates do not match the model's binding");
  if (init.dim != m.input_dim || init.nodes != g.node_count())
    throw ValidationError("initial features have dimension " + std::to_string(init.dim) +
                          ", model expects " + std::to_string(m.input_dim));
  const auto n = g.node_count();
  IntFeatures x = std::move(init);
  for (const auto& layer : m.layers) {
    const auto din = layer.in_dim();
    const auto dout = layer.out_dim();
    std::vector<std::int64_t> global(din, 0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < din; ++i) global[i] = checked_add(global[i], x.at(v, i));
    std::vector<std::int64_t> global_term(dout, 0);
    mul_acc(layer.R, global.data(), global_term);

    IntFeatures pre(n, dout);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t r = 0; r < dout; ++r) pre.at(v, r) = checked_add(layer.b[r], global_term[r]);

    std::vector<std::int64_t> acc(dout);
    std::vector<std::int64_t> agg(din);
    for (std::size_t j = 0; j < layer.A.size(); ++j) {
      if (layer.A[j].is_zero()) continue;
      for (NodeId v = 0; v < n; ++v) {
        auto nb = g.out_neighbors(v, static_cast<PredId>(j));
        if (nb.empty()) continue;
        std::fill(agg.begin(), agg.end(), 0);
        for (auto u : nb)
          for (std::size_t i = 0; i < din; ++i) agg[i] = checked_add(agg[i], x.at(u, i));
        std::fill(acc.begin(), acc.end(), 0);
        mul_acc(layer.A[j], agg.data(), acc);
        for (std::size_t r = 0; r < dout; ++r) pre.at(v, r) = checked_add(pre.at(v, r), acc[r]);
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::fill(acc.begin(), acc.end(), 0);
      mul_acc(layer.C, &x.data[v * din], acc);
      for (std::size_t r = 0; r < dout; ++r)
        pre.at(v, r) = clip(checked_add(pre.at(v, r), acc[r]));
    }
    x = std::move(pre);
  }
  return x;
}

FeatureAssignment forward_zo(const ZoGnn& m, const Graph& g) {
  if (g.signature().encoding_dim() != m.input_dim)
    throw ValidationError("graph encoding has dimension " +
                          std::to_string(g.signature().encoding_dim()) + ", model expects " +
                          std::to_string(m.input_dim));
  return forward_zo_from(m, g, encode_nodes_int(g)).to_assignment();
}

ZoGnn pad_layers(const ZoGnn& m, std::size_t layers) {
  ZoGnn out = m;
  while (out.layers.size() < layers)
    out.layers.push_back(identity_layer(out.output_dim(), out.relations()));
  return out;
}

ZoGnn gnn_not(const ZoGnn& m) {
  if (m.output_dim() != 1) throw ValidationError("gnn_not needs a 1-dimensional output");
  ZoGnn out = m;
  auto l = zero_layer(1, 1, m.relations());
  l.C.set(0, 0, -1);
  l.b[0] = 1;
  out.layers.push_back(std::move(l));
  return out;
}

ZoGnn parallel_compose(const ZoGnn& m1, const ZoGnn& m2) {
  if (m1.binary_order != m2.binary_order) throw ValidationError("models bind different relations");
  if (m1.input_dim != m2.input_dim) throw ValidationError("models read different encodings");
  m1.validate();
  m2.validate();
  const auto L = std::max<std::size_t>({m1.layers.size(), m2.layers.size(), 1});
  auto a = pad_layers(m1, L);
  auto b = pad_layers(m2, L);
  const auto K = a.relations();
  ZoGnn out;
  out.binary_order = a.binary_order;
  out.input_dim = a.input_dim;
  for (std::size_t i = 0; i < L; ++i) {
    const auto& la = a.layers[i];
    const auto& lb = b.layers[i];
    const auto rows = la.out_dim() + lb.out_dim();
    // both halves read the shared input in the first layer, then their own blocks
    const bool first = i == 0;
    const auto cols = first ? out.input_dim : la.in_dim() + lb.in_dim();
    const auto cb = first ? 0 : la.in_dim();
    ZoLayer l = zero_layer(rows, cols, K);
    l.C.place(la.C, 0, 0);
    l.C.place(lb.C, la.out_dim(), cb);
    for (std::size_t j = 0; j < K; ++j) {
      l.A[j].place(la.A[j], 0, 0);
      l.A[j].place(lb.A[j], la.out_dim(), cb);
    }
    l.R.place(la.R, 0, 0);
    l.R.place(lb.R, la.out_dim(), cb);
    std::copy(la.b.begin(), la.b.end(), l.b.begin());
    std::copy(lb.b.begin(), lb.b.end(), l.b.begin() + static_cast<std::ptrdiff_t>(la.out_dim()));
    out.layers.push_back(std::move(l));
  }
  return out;
}

ZoGnn gnn_and(const ZoGnn& m1, const ZoGnn& m2) {
  if (m1.output_dim() != 1 || m2.output_dim() != 1)
    throw ValidationError("gnn_and needs 1-dimensional outputs");
  auto out = parallel_compose(m1, m2);
  auto l = zero_layer(1, 2, out.relations());
  l.C.set(0, 0, 1);
  l.C.set(0, 1, 1);
  l.b[0] = -1;
  out.layers.push_back(std::move(l));
  return out;
}

ZoGnn gnn_or(const ZoGnn& m1, const ZoGnn& m2) {
  return gnn_not(gnn_and(gnn_not(m1), gnn_not(m2)));
}

}  // namespace focgnn
