#include "focgnn/generic_gnn.hpp"

#include <algorithm>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

using Vec = std::vector<Rational>;

Program make(ProgramNode n) { return std::make_shared<const ProgramNode>(std::move(n)); }

Vec eval(const ProgramNode& p, const Vec& input, std::size_t self_dim) {
  switch (p.op) {
    case ProgramOp::kInput:
      return input;
    case ProgramOp::kSlice: {
      auto v = eval(*p.parts[0], input, self_dim);
      return Vec(v.begin() + static_cast<std::ptrdiff_t>(p.start),
                 v.begin() + static_cast<std::ptrdiff_t>(p.start + p.len));
    }
    case ProgramOp::kConcat: {
      Vec out;
      for (const auto& part : p.parts) {
        auto v = eval(*part, input, self_dim);
        out.insert(out.end(), v.begin(), v.end());
      }
      return out;
    }
    case ProgramOp::kPad: {
      auto v = eval(*p.parts[0], input, self_dim);
      Vec out(p.start, Rational(0));
      out.insert(out.end(), v.begin(), v.end());
      out.resize(out.size() + p.len, Rational(0));
      return out;
    }
    case ProgramOp::kAffine: {
      auto v = eval(*p.parts[0], input, self_dim);
      Vec out(p.weights.rows());
      for (std::size_t r = 0; r < out.size(); ++r) {
        Rational acc(p.bias[r]);
        for (const auto& [c, w] : p.weights.row(r))
          if (v[c] != Rational(0)) acc += v[c] * w;
        if (p.clip) acc = std::max(Rational(0), std::min(acc, Rational(1)));
        out[r] = acc;
      }
      return out;
    }
    case ProgramOp::kGate:
      return eval(*p.parts[input[p.start] != Rational(0) ? 0 : 1], input, self_dim);
  }
  return {};
}

void aggregate_into(Aggregate kind, const std::vector<const Vec*>& items, std::size_t d, Vec& out) {
  out.assign(d, Rational(0));
  if (items.empty()) return;
  if (kind == Aggregate::kMax) {
    out = *items[0];
    for (std::size_t k = 1; k < items.size(); ++k)
      for (std::size_t i = 0; i < d; ++i) out[i] = std::max(out[i], (*items[k])[i]);
    return;
  }
  for (const auto* it : items)
    for (std::size_t i = 0; i < d; ++i) out[i] += (*it)[i];
  if (kind == Aggregate::kMean)
    for (auto& x : out) x /= static_cast<std::int64_t>(items.size());
}

}  // namespace

const char* aggregate_name(Aggregate a) {
  switch (a) {
    case Aggregate::kSum: return "sum";
    case Aggregate::kMax: return "max";
    case Aggregate::kMean: return "mean";
  }
  return "sum";
}

Aggregate aggregate_from_name(const std::string& name) {
  if (name == "sum") return Aggregate::kSum;
  if (name == "max") return Aggregate::kMax;
  if (name == "mean") return Aggregate::kMean;
  throw FormatError("unknown aggregate '" + name + "'");
}

Program prog_input() { return make(ProgramNode{}); }

Program prog_slice(Program of, std::size_t start, std::size_t len) {
  ProgramNode n;
  n.op = ProgramOp::kSlice;
  n.start = start;
  n.len = len;
  n.parts = {std::move(of)};
  return make(std::move(n));
}

Program prog_concat(std::vector<Program> parts) {
  ProgramNode n;
  n.op = ProgramOp::kConcat;
  n.parts = std::move(parts);
  return make(std::move(n));
}

Program prog_pad(Program of, std::size_t left, std::size_t right) {
  ProgramNode n;
  n.op = ProgramOp::kPad;
  n.start = left;
  n.len = right;
  n.parts = {std::move(of)};
  return make(std::move(n));
}

Program prog_affine(Program of, IntMatrix weights, std::vector<std::int64_t> bias, bool clip) {
  if (bias.size() != weights.rows()) throw ValidationError("affine bias length mismatch");
  ProgramNode n;
  n.op = ProgramOp::kAffine;
  n.weights = std::move(weights);
  n.bias = std::move(bias);
  n.clip = clip;
  n.parts = {std::move(of)};
  return make(std::move(n));
}

Program prog_gate(std::size_t coord, Program then_branch, Program else_branch) {
  ProgramNode n;
  n.op = ProgramOp::kGate;
  n.start = coord;
  n.parts = {std::move(then_branch), std::move(else_branch)};
  return make(std::move(n));
}

std::size_t program_output_dim(const Program& p, std::size_t input_len, std::size_t self_dim) {
  switch (p->op) {
    case ProgramOp::kInput:
      return input_len;
    case ProgramOp::kSlice: {
      auto d = program_output_dim(p->parts.at(0), input_len, self_dim);
      if (p->start + p->len > d) throw ValidationError("slice exceeds operand length");
      return p->len;
    }
    case ProgramOp::kConcat: {
      std::size_t total = 0;
      for (const auto& part : p->parts) total += program_output_dim(part, input_len, self_dim);
      return total;
    }
    case ProgramOp::kPad:
      return p->start + p->len + program_output_dim(p->parts.at(0), input_len, self_dim);
    case ProgramOp::kAffine: {
      auto d = program_output_dim(p->parts.at(0), input_len, self_dim);
      if (p->weights.cols() != d) throw ValidationError("affine weight width mismatch");
      return p->weights.rows();
    }
    case ProgramOp::kGate: {
      if (p->start >= self_dim) throw ValidationError("gate coordinate outside the node vector");
      auto a = program_output_dim(p->parts.at(0), input_len, self_dim);
      auto b = program_output_dim(p->parts.at(1), input_len, self_dim);
      if (a != b) throw ValidationError("gate branches differ in width");
      return a;
    }
  }
  return 0;
}

GenericLayer make_generic_layer(std::size_t relations, std::size_t input_dim, Program combine,
                                Aggregate aggregate, Aggregate readout) {
  GenericLayer l;
  l.aggregate.assign(relations, aggregate);
  l.readout = readout;
  l.input_dim = input_dim;
  l.output_dim = program_output_dim(combine, (relations + 2) * input_dim, input_dim);
  l.combine = std::move(combine);
  return l;
}

void GenericGnn::validate() const {
  std::size_t d = input_dim;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.input_dim != d)
      throw ValidationError("generic layer " + std::to_string(i) + " expects width " +
                            std::to_string(l.input_dim) + ", receives " + std::to_string(d));
    if (l.aggregate.size() != binary_order.size())
      throw ValidationError("generic layer aggregate list does not match relations");
    if (!l.combine) throw ValidationError("generic layer without combine program");
    if (program_output_dim(l.combine, (binary_order.size() + 2) * d, d) != l.output_dim)
      throw ValidationError("generic layer output width mismatch");
    d = l.output_dim;
  }
}

FeatureAssignment forward_generic(const GenericGnn& m, const Graph& g,
                                  const FeatureAssignment& init) {
  m.validate();
  if (g.signature().binary() != m.binary_order)
    throw ValidationError("graph binary predicates do not match the model's binding");
  if (init.dim != m.input_dim || init.node_count() != g.node_count())
    throw ValidationError("initial features have dimension " + std::to_string(init.dim) +
                          ", model expects " + std::to_string(m.input_dim));
  const auto n = g.node_count();
  const auto K = m.relations();
  std::vector<Vec> x = init.rows;
  for (const auto& layer : m.layers) {
    const auto d = layer.input_dim;
    std::vector<const Vec*> all;
    for (const auto& row : x) all.push_back(&row);
    Vec readout;
    aggregate_into(layer.readout, all, d, readout);

    std::vector<Vec> next(n);
    Vec input((K + 2) * d);
    Vec agg;
    std::vector<const Vec*> items;
    for (NodeId v = 0; v < n; ++v) {
      std::copy(x[v].begin(), x[v].end(), input.begin());
      for (std::size_t j = 0; j < K; ++j) {
        items.clear();
        for (auto u : g.out_neighbors(v, static_cast<PredId>(j))) items.push_back(&x[u]);
        aggregate_into(layer.aggregate[j], items, d, agg);
        std::copy(agg.begin(), agg.end(), input.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
      }
      std::copy(readout.begin(), readout.end(),
                input.begin() + static_cast<std::ptrdiff_t>((K + 1) * d));
      next[v] = eval(*layer.combine, input, d);
    }
    x = std::move(next);
  }
  FeatureAssignment out;
  out.dim = m.output_dim();
  out.rows = std::move(x);
  return out;
}

GenericGnn generic_from_zo(const ZoGnn& m) {
  m.validate();
  GenericGnn out;
  out.binary_order = m.binary_order;
  out.input_dim = m.input_dim;
  const auto K = m.relations();
  for (const auto& l : m.layers) {
    const auto d = l.in_dim();
    IntMatrix w(l.out_dim(), (K + 2) * d);
    w.place(l.C, 0, 0);
    for (std::size_t j = 0; j < K; ++j) w.place(l.A[j], 0, (j + 1) * d);
    w.place(l.R, 0, (K + 1) * d);
    out.layers.push_back(make_generic_layer(K, d, prog_affine(prog_input(), std::move(w), l.b, true)));
  }
  return out;
}

}  // namespace focgnn
