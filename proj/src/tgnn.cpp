#include "focgnn/tgnn.hpp"

#include <algorithm>

#include "focgnn/error.hpp"
#include "focgnn/transform.hpp"

namespace focgnn {
namespace {

const std::vector<std::string>& step_binding(const StepModel& s) {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.binary_order; },
                    s);
}
std::size_t step_input(const StepModel& s) {
  return std::visit([](const auto& m) { return m.input_dim; }, s);
}
std::size_t step_output(const StepModel& s) {
  return std::visit([](const auto& m) { return m.output_dim(); }, s);
}

IntFeatures to_int(const FeatureAssignment& fa) {
  IntFeatures out(fa.node_count(), fa.dim);
  for (std::size_t v = 0; v < fa.node_count(); ++v)
    for (std::size_t i = 0; i < fa.dim; ++i) {
      const auto& q = fa.rows[v][i];
      if (q.denominator() != 1)
        throw ValidationError("0/1-GNN step received a non-integer feature");
      out.at(v, i) = q.numerator();
    }
  return out;
}

}  // namespace

void Tgnn::validate(const Signature& snapshot_sig) const {
  if (steps.empty()) throw ValidationError("temporal model has no steps");
  const auto p = snapshot_sig.encoding_dim();
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& s = steps[t];
    if (step_binding(s) != snapshot_sig.binary())
      throw ValidationError("step " + std::to_string(t + 1) + " binds different relations");
    if (step_input(s) != p + recurrent_dim)
      throw ValidationError("step " + std::to_string(t + 1) + " expects input width " +
                            std::to_string(step_input(s)) + ", snapshot gives " +
                            std::to_string(p + recurrent_dim));
    if (step_output(s) != recurrent_dim)
      throw ValidationError("step " + std::to_string(t + 1) + " output width differs from the " +
                            "recurrent dimension");
  }
}

FeatureAssignment forward_tgnn(const Tgnn& m, const TemporalGraph& tg) {
  if (m.timestamps() != tg.timestamps())
    throw ValidationError("model has " + std::to_string(m.timestamps()) + " steps, graph has " +
                          std::to_string(tg.timestamps()) + " snapshots");
  m.validate(tg.signature());
  const auto n = tg.nodes().size();
  FeatureAssignment state(n, m.recurrent_dim);
  for (std::size_t t = 0; t < tg.timestamps(); ++t) {
    const auto& g = tg.snapshot(t);
    auto enc = encode_nodes(g);
    FeatureAssignment init(n, enc.dim + m.recurrent_dim);
    for (std::size_t v = 0; v < n; ++v) {
      std::copy(enc.rows[v].begin(), enc.rows[v].end(), init.rows[v].begin());
      std::copy(state.rows[v].begin(), state.rows[v].end(),
                init.rows[v].begin() + static_cast<std::ptrdiff_t>(enc.dim));
    }
    if (const auto* zo = std::get_if<ZoGnn>(&m.steps[t]))
      state = forward_zo_from(*zo, g, to_int(init)).to_assignment();
    else
      state = forward_generic(std::get<GenericGnn>(m.steps[t]), g, init);
  }
  return state;
}

Tgnn homogenize(const Tgnn& m) {
  if (m.steps.empty()) throw ValidationError("temporal model has no steps");
  std::vector<ZoGnn> steps;
  for (const auto& s : m.steps) {
    const auto* zo = std::get_if<ZoGnn>(&s);
    if (!zo) throw ValidationError("homogenize needs 0/1-GNN steps");
    zo->validate();
    if (zo->layers.empty()) throw ValidationError("homogenize needs at least one layer per step");
    steps.push_back(*zo);
  }
  const auto T = steps.size();
  const auto r = m.recurrent_dim;
  const auto K = steps[0].relations();
  if (steps[0].input_dim < r) throw ValidationError("step input narrower than recurrent state");
  const auto p = steps[0].input_dim - r;
  std::size_t L = 0, d = r;
  for (const auto& s : steps) {
    if (s.binary_order != steps[0].binary_order)
      throw ValidationError("steps bind different relations");
    if (s.input_dim != p + r || s.output_dim() != r)
      throw ValidationError("step shapes disagree with the recurrent dimension");
    L = std::max(L, s.layers.size());
    for (const auto& l : s.layers) d = std::max(d, l.out_dim());
  }
  for (auto& s : steps) s = pad_layers(s, L);

  ZoGnn h;
  h.binary_order = steps[0].binary_order;
  h.input_dim = p + T * d;
  for (std::size_t li = 0; li < L; ++li) {
    const bool first = li == 0;
    ZoLayer out = zero_layer(T * d, first ? p + T * d : T * d, K);
    for (std::size_t t = 0; t < T; ++t) {
      const auto& l = steps[t].layers[li];
      const auto row0 = t * d;
      auto put = [&](const IntMatrix& src, IntMatrix& dst) {
        if (!first) {
          dst.place(src, row0, t * d);
          return;
        }
        // first layer: encoding columns, then slice t-1 of the previous state
        for (std::size_t rr = 0; rr < src.rows(); ++rr)
          for (const auto& [c, v] : src.row(rr)) {
            if (c < p)
              dst.set(row0 + rr, c, v);
            else if (t > 0)
              dst.set(row0 + rr, p + (t - 1) * d + (c - p), v);
          }
      };
      put(l.C, out.C);
      for (std::size_t j = 0; j < K; ++j) put(l.A[j], out.A[j]);
      put(l.R, out.R);
      std::copy(l.b.begin(), l.b.end(), out.b.begin() + static_cast<std::ptrdiff_t>(row0));
    }
    h.layers.push_back(std::move(out));
  }
  h.validate();
  Tgnn res;
  res.recurrent_dim = T * d;
  res.steps.assign(T, h);
  return res;
}

GenericGnn lift_to_transformed(const ZoGnn& m, const Signature& base) {
  m.validate();
  if (base.binary() != m.binary_order)
    throw ValidationError("base signature does not match the model's relations");
  if (base.encoding_dim() != m.input_dim)
    throw ValidationError("base encoding width does not match the model input");
  const auto tsig = transformed_signature(base);
  const auto K = m.relations();
  const auto K2 = K + 2;
  const auto aux1 = *tsig.binary_index(kAux1);
  const auto primal = *tsig.unary_index(kPrimal);
  const auto e = tsig.encoding_dim();
  const auto d0 = m.input_dim;
  std::size_t D = d0;
  for (const auto& l : m.layers) D = std::max(D, l.out_dim());
  // layout: [p, slice 0, slice 1..K], each slice D wide
  const auto W = 1 + D * (K + 1);
  auto slot = [&](std::size_t k, std::size_t i) { return 1 + k * D + i; };
  // column of coordinate c inside section s of a flat layer input of width w
  auto col = [](std::size_t section, std::size_t c, std::size_t w) { return section * w + c; };
  const auto flat = (K2 + 2) * W;

  GenericGnn out;
  out.binary_order = tsig.binary();
  out.input_dim = e;

  {
    IntMatrix w(W, (K2 + 2) * e);
    w.set(0, col(0, primal, e), 1);
    if (base.unary().empty()) {
      w.set(slot(0, 0), col(0, primal, e), 1);
    } else {
      for (std::size_t i = 0; i < d0; ++i) w.set(slot(0, i), col(0, i, e), 1);
    }
    out.layers.push_back(make_generic_layer(
        K2, e, prog_affine(prog_input(), std::move(w), std::vector<std::int64_t>(W, 0), true)));
  }
  auto keep_head = [&]() {
    IntMatrix w(W, flat);
    w.set(0, 0, 1);
    for (std::size_t i = 0; i < D; ++i) w.set(slot(0, i), col(0, slot(0, i), W), 1);
    return w;
  };
  auto affine = [&](IntMatrix w, std::vector<std::int64_t> b = {}) {
    if (b.empty()) b.assign(W, 0);
    return prog_affine(prog_input(), std::move(w), std::move(b), true);
  };

  for (const auto& l : m.layers) {
    // broadcast: added nodes copy their primal endpoint's slice 0 into every slice
    {
      auto w = keep_head();
      for (std::size_t k = 1; k <= K; ++k)
        for (std::size_t i = 0; i < D; ++i) w.set(slot(k, i), col(1 + aux1, slot(0, i), W), 1);
      out.layers.push_back(
          make_generic_layer(K2, W, prog_gate(0, affine(keep_head()), affine(std::move(w)))));
    }
    // exchange: slice k of an added node takes slice k of its mirror over relation k
    {
      auto w = keep_head();
      for (std::size_t k = 1; k <= K; ++k)
        for (std::size_t i = 0; i < D; ++i) w.set(slot(k, i), col(1 + (k - 1), slot(k, i), W), 1);
      IntMatrix keep_all(W, flat);
      for (std::size_t i = 0; i < W; ++i) keep_all.set(i, i, 1);
      out.layers.push_back(make_generic_layer(
          K2, W, prog_gate(0, affine(std::move(keep_all)), affine(std::move(w)))));
    }
    // simulate the original layer at primal nodes; added nodes reset to zero
    {
      IntMatrix w(W, flat);
      std::vector<std::int64_t> b(W, 0);
      w.set(0, 0, 1);
      for (std::size_t r = 0; r < l.out_dim(); ++r) {
        for (const auto& [c, v] : l.C.row(r)) w.add(slot(0, r), col(0, slot(0, c), W), v);
        for (std::size_t j = 0; j < K; ++j)
          for (const auto& [c, v] : l.A[j].row(r))
            w.add(slot(0, r), col(1 + aux1, slot(j + 1, c), W), v);
        for (const auto& [c, v] : l.R.row(r)) w.add(slot(0, r), col(K2 + 1, slot(0, c), W), v);
        b[slot(0, r)] = l.b[r];
      }
      out.layers.push_back(make_generic_layer(
          K2, W, prog_gate(0, affine(std::move(w), std::move(b)), affine(IntMatrix(W, flat)))));
    }
  }
  out.layers.push_back(make_generic_layer(K2, W, prog_slice(prog_input(), 1, m.output_dim())));
  out.validate();
  return out;
}

}  // namespace focgnn
