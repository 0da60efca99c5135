#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "focgnn/graph.hpp"

namespace focgnn {

// Sparse integer matrix; rows hold (column, value) pairs sorted by column.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::int64_t v);
  void add(std::size_t r, std::size_t c, std::int64_t v) { set(r, c, at(r, c) + v); }
  const std::vector<std::pair<std::uint32_t, std::int64_t>>& row(std::size_t r) const {
    return entries_[r];
  }
  bool is_zero() const;
  // copies `src` into this matrix with its top-left corner at (r0, c0)
  void place(const IntMatrix& src, std::size_t r0, std::size_t c0);

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> entries_;
};

struct ZoLayer {
  IntMatrix C;               // d_out x d_in, applied to the node's own vector
  std::vector<IntMatrix> A;  // one per relation, applied to the out-neighbour sum
  IntMatrix R;               // applied to the sum over all nodes
  std::vector<std::int64_t> b;

  std::size_t in_dim() const { return C.cols(); }
  std::size_t out_dim() const { return C.rows(); }
  bool operator==(const ZoLayer&) const = default;
};

// zero layer with the given shape
ZoLayer zero_layer(std::size_t out_dim, std::size_t in_dim, std::size_t relations);
ZoLayer identity_layer(std::size_t dim, std::size_t relations);

struct ZoGnn {
  std::vector<std::string> binary_order;
  std::size_t input_dim = 1;
  std::vector<ZoLayer> layers;

  std::size_t output_dim() const { return layers.empty() ? input_dim : layers.back().out_dim(); }
  std::size_t relations() const { return binary_order.size(); }
  // throws ValidationError on broken dimension chaining
  void validate() const;
  bool operator==(const ZoGnn&) const = default;
};

// Dense integer node features, row-major n x dim.
struct IntFeatures {
  std::size_t nodes = 0;
  std::size_t dim = 0;
  std::vector<std::int64_t> data;

  IntFeatures() = default;
  IntFeatures(std::size_t n, std::size_t d) : nodes(n), dim(d), data(n * d, 0) {}
  std::int64_t& at(std::size_t v, std::size_t i) { return data[v * dim + i]; }
  std::int64_t at(std::size_t v, std::size_t i) const { return data[v * dim + i]; }
  FeatureAssignment to_assignment() const;
};

IntFeatures encode_nodes_int(const Graph& g);

// x_v <- clip(C x_v + sum_j A_j sum_{u in N_j(v)} x_u + R sum_u x_u + b)
FeatureAssignment forward_zo(const ZoGnn& m, const Graph& g);
// same with caller-supplied initial features (dimension must be input_dim)
IntFeatures forward_zo_from(const ZoGnn& m, const Graph& g, IntFeatures init);

// pads with identity layers up to `layers` layers
ZoGnn pad_layers(const ZoGnn& m, std::size_t layers);

ZoGnn gnn_not(const ZoGnn& m);
ZoGnn gnn_and(const ZoGnn& m1, const ZoGnn& m2);
ZoGnn gnn_or(const ZoGnn& m1, const ZoGnn& m2);
ZoGnn parallel_compose(const ZoGnn& m1, const ZoGnn& m2);

}  // namespace focgnn
