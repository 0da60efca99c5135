#include "focgnn/model_io.hpp"

#include <algorithm>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

void require_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw FormatError("unknown key '" + key + "' in " + std::string(what));
}

const Json& field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key))
    throw FormatError(std::string(what) + " is missing '" + key + "'");
  return j[key];
}

std::size_t size_field(const Json& j, const char* key, std::string_view what) {
  const auto& v = field(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw FormatError(std::string(what) + "." + key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::string> names(const Json& j, std::string_view what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::int64_t> int_vector(const Json& j, std::string_view what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw FormatError(std::string(what) + " entries must be integers");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}


}  // namespace

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::int64_t> dense(m.cols(), 0);
    for (const auto& [c, v] : m.row(r)) dense[c] = v;
    rows.push_back(dense);
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    auto row = int_vector(j[r], "matrix row");
    if (row.size() != cols)
      throw FormatError("matrix row has " + std::to_string(row.size()) + " entries, expected " +
                        std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, row[c]);
  }
  return m;
}

Json zo_to_json(const ZoGnn& m) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "zo";
  j["binary_order"] = m.binary_order;
  j["input_dim"] = m.input_dim;
  Json layers = Json::array();
  for (const auto& l : m.layers) {
    Json lj;
    lj["C"] = matrix_to_json(l.C);
    Json a = Json::object();
    for (std::size_t k = 0; k < l.A.size(); ++k)
      if (!l.A[k].is_zero()) a[m.binary_order[k]] = matrix_to_json(l.A[k]);
    lj["A"] = std::move(a);
    lj["R"] = matrix_to_json(l.R);
    lj["b"] = l.b;
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j;
}

ZoGnn zo_from_json(const Json& j) {
  require_keys(j, {"format_version", "kind", "binary_order", "input_dim", "layers", "metadata"},
               "model");
  check_format_version(j);
  if (field(j, "kind", "model") != "zo") throw FormatError("model kind is not 'zo'");
  ZoGnn m;
  m.binary_order = names(field(j, "binary_order", "model"), "binary_order");
  const auto& layers = field(j, "layers", "model");
  if (!layers.is_array()) throw FormatError("layers must be an array");
  // input_dim may be omitted when the first layer's C shows the width
  if (j.contains("input_dim") || layers.empty())
    m.input_dim = size_field(j, "input_dim", "model");
  else if (layers[0].is_object() && layers[0].contains("C") && layers[0]["C"].is_array() &&
           !layers[0]["C"].empty() && layers[0]["C"][0].is_array())
    m.input_dim = layers[0]["C"][0].size();
  else
    throw FormatError("model is missing 'input_dim'");
  std::size_t d = m.input_dim;
  for (const auto& lj : layers) {
    require_keys(lj, {"C", "A", "R", "b"}, "layer");
    ZoLayer l;
    l.C = matrix_from_json(field(lj, "C", "layer"), d);
    const auto out = l.C.rows();
    l.R = lj.contains("R") ? matrix_from_json(lj["R"], d) : IntMatrix(out, d);
    l.A.assign(m.binary_order.size(), IntMatrix(out, d));
    if (lj.contains("A")) {
      if (!lj["A"].is_object()) throw FormatError("A must map relation names to matrices");
      for (const auto& [name, mat] : lj["A"].items()) {
        auto it = std::find(m.binary_order.begin(), m.binary_order.end(), name);
        if (it == m.binary_order.end())
          throw FormatError("A references unknown relation '" + name + "'");
        l.A[static_cast<std::size_t>(it - m.binary_order.begin())] = matrix_from_json(mat, d);
      }
    }
    l.b = lj.contains("b") ? int_vector(lj["b"], "b") : std::vector<std::int64_t>(out, 0);
    d = out;
    m.layers.push_back(std::move(l));
  }
  m.validate();
  return m;
}

Json program_to_json(const Program& p) {
  Json j;
  switch (p->op) {
    case ProgramOp::kInput:
      j["op"] = "input";
      break;
    case ProgramOp::kSlice:
      j["op"] = "slice";
      j["start"] = p->start;
      j["len"] = p->len;
      j["of"] = program_to_json(p->parts[0]);
      break;
    case ProgramOp::kConcat: {
      j["op"] = "concat";
      Json parts = Json::array();
      for (const auto& q : p->parts) parts.push_back(program_to_json(q));
      j["parts"] = std::move(parts);
      break;
    }
    case ProgramOp::kPad:
      j["op"] = "pad";
      j["left"] = p->start;
      j["right"] = p->len;
      j["of"] = program_to_json(p->parts[0]);
      break;
    case ProgramOp::kAffine:
      j["op"] = "affine";
      j["W"] = matrix_to_json(p->weights);
      j["b"] = p->bias;
      j["clip"] = p->clip;
      j["of"] = program_to_json(p->parts[0]);
      break;
    case ProgramOp::kGate:
      j["op"] = "gate";
      j["coord"] = p->start;
      j["then"] = program_to_json(p->parts[0]);
      j["else"] = program_to_json(p->parts[1]);
      break;
  }
  return j;
}

Program program_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw FormatError("program node needs an 'op'");
  const auto op = j["op"].get<std::string>();
  if (op == "input") {
    require_keys(j, {"op"}, "input");
    return prog_input();
  }
  if (op == "slice") {
    require_keys(j, {"op", "start", "len", "of"}, "slice");
    return prog_slice(program_from_json(field(j, "of", "slice")), size_field(j, "start", "slice"),
                      size_field(j, "len", "slice"));
  }
  if (op == "concat") {
    require_keys(j, {"op", "parts"}, "concat");
    std::vector<Program> parts;
    for (const auto& q : field(j, "parts", "concat")) parts.push_back(program_from_json(q));
    return prog_concat(std::move(parts));
  }
  if (op == "pad") {
    require_keys(j, {"op", "left", "right", "of"}, "pad");
    return prog_pad(program_from_json(field(j, "of", "pad")), size_field(j, "left", "pad"),
                    size_field(j, "right", "pad"));
  }
  if (op == "affine") {
    require_keys(j, {"op", "W", "b", "clip", "of"}, "affine");
    const auto& w = field(j, "W", "affine");
    if (!w.is_array()) throw FormatError("affine W must be an array");
    std::size_t cols = w.empty() ? 0 : w[0].size();
    auto clip = j.value("clip", true);
    return prog_affine(program_from_json(field(j, "of", "affine")), matrix_from_json(w, cols),
                       int_vector(field(j, "b", "affine"), "b"), clip);
  }
  if (op == "gate") {
    require_keys(j, {"op", "coord", "then", "else"}, "gate");
    return prog_gate(size_field(j, "coord", "gate"), program_from_json(field(j, "then", "gate")),
                     program_from_json(field(j, "else", "gate")));
  }
  throw FormatError("unknown program op '" + op + "'");
}

Json generic_to_json(const GenericGnn& m) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "generic";
  j["binary_order"] = m.binary_order;
  j["input_dim"] = m.input_dim;
  Json layers = Json::array();
  for (const auto& l : m.layers) {
    Json lj;
    Json aggs = Json::array();
    for (auto a : l.aggregate) aggs.push_back(aggregate_name(a));
    lj["aggregate"] = std::move(aggs);
    lj["readout"] = aggregate_name(l.readout);
    lj["program"] = program_to_json(l.combine);
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j;
}

GenericGnn generic_from_json(const Json& j) {
  require_keys(j, {"format_version", "kind", "binary_order", "input_dim", "layers", "metadata"},
               "model");
  check_format_version(j);
  if (field(j, "kind", "model") != "generic") throw FormatError("model kind is not 'generic'");
  GenericGnn m;
  m.binary_order = names(field(j, "binary_order", "model"), "binary_order");
  m.input_dim = size_field(j, "input_dim", "model");
  std::size_t d = m.input_dim;
  for (const auto& lj : field(j, "layers", "model")) {
    require_keys(lj, {"aggregate", "readout", "program"}, "layer");
    auto aggs = names(field(lj, "aggregate", "layer"), "aggregate");
    if (aggs.size() != m.binary_order.size())
      throw FormatError("aggregate list does not match relations");
    auto readout = aggregate_from_name(lj.value("readout", std::string("sum")));
    auto layer = make_generic_layer(m.binary_order.size(), d,
                                    program_from_json(field(lj, "program", "layer")),
                                    Aggregate::kSum, readout);
    for (std::size_t k = 0; k < aggs.size(); ++k) layer.aggregate[k] = aggregate_from_name(aggs[k]);
    d = layer.output_dim;
    m.layers.push_back(std::move(layer));
  }
  m.validate();
  return m;
}

Json tgnn_to_json(const Tgnn& m) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "tgnn";
  j["recurrent_dim"] = m.recurrent_dim;
  Json steps = Json::array();
  for (const auto& s : m.steps) {
    if (const auto* zo = std::get_if<ZoGnn>(&s))
      steps.push_back(zo_to_json(*zo));
    else
      steps.push_back(generic_to_json(std::get<GenericGnn>(s)));
  }
  j["steps"] = std::move(steps);
  return j;
}

Tgnn tgnn_from_json(const Json& j) {
  require_keys(j, {"format_version", "kind", "recurrent_dim", "steps"}, "temporal model");
  check_format_version(j);
  if (field(j, "kind", "temporal model") != "tgnn") throw FormatError("model kind is not 'tgnn'");
  Tgnn m;
  m.recurrent_dim = size_field(j, "recurrent_dim", "temporal model");
  for (const auto& s : field(j, "steps", "temporal model")) {
    if (s.value("kind", std::string()) == "zo")
      m.steps.emplace_back(zo_from_json(s));
    else
      m.steps.emplace_back(generic_from_json(s));
  }
  return m;
}

}  // namespace focgnn
