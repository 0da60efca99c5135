#pragma once

#include "focgnn/generic_gnn.hpp"
#include "focgnn/graph_io.hpp"
#include "focgnn/tgnn.hpp"
#include "focgnn/zo_gnn.hpp"

namespace focgnn {

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, std::size_t cols);

// {"kind":"zo","binary_order":[...],"input_dim":d,"layers":[{"C","A","R","b"}]}
// all-zero relation matrices are omitted from "A"
Json zo_to_json(const ZoGnn& m);
ZoGnn zo_from_json(const Json& j);

Json program_to_json(const Program& p);
Program program_from_json(const Json& j);

Json generic_to_json(const GenericGnn& m);
GenericGnn generic_from_json(const Json& j);

Json tgnn_to_json(const Tgnn& m);
Tgnn tgnn_from_json(const Json& j);

}  // namespace focgnn
