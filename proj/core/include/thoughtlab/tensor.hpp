#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "thoughtlab/error.hpp"

namespace thoughtlab {

class Tensor;
using TensorPtr = std::shared_ptr<Tensor>;

// Dense row-major float32 tensor. The shape is fixed at construction; data
// and grad are mutable. grad is allocated lazily and accumulates additively
// until zero_grad() is called.
class Tensor {
  public:
    explicit Tensor(std::vector<int> shape, bool requires_grad = false);

    static TensorPtr create(std::vector<int> shape, bool requires_grad = false);
    static TensorPtr from(std::vector<int> shape, std::vector<float> values,
                          bool requires_grad = false);
    static TensorPtr scalar(float value, bool requires_grad = false);

    const std::vector<int>& shape() const { return shape_; }
    int dim(size_t i) const { return shape_[i]; }
    size_t rank() const { return shape_.size(); }
    size_t numel() const { return data_.size(); }
    bool is_scalar() const { return data_.size() == 1; }

    std::vector<float>& data() { return data_; }
    const std::vector<float>& data() const { return data_; }
    float item() const;

    bool requires_grad() const { return requires_grad_; }
    void set_requires_grad(bool v) { requires_grad_ = v; }

    bool has_grad() const { return !grad_.empty(); }
    // Allocates a zero grad buffer on first use.
    std::vector<float>& grad();
    const std::vector<float>& grad() const;
    void zero_grad();

  private:
    std::vector<int> shape_;
    std::vector<float> data_;
    std::vector<float> grad_;
    bool requires_grad_;
};

std::string shape_string(const std::vector<int>& shape);

struct GraphNode {
    const char* op;
    std::vector<TensorPtr> inputs;
    TensorPtr output;
    std::function<void()> backward;
};

// Reverse-mode tape. Nodes are appended in construction order, which is a
// topological order by definition, and backward() walks them in reverse.
//
// Gradient contract: within one backward() pass, gradients of interior
// tensors (node outputs) are freshly zeroed; gradients of leaves accumulate
// on top of whatever they already held. Running backward() twice on the
// same graph therefore doubles the leaf gradients exactly.
class ComputeGraph {
  public:
    explicit ComputeGraph(bool recording = true) : recording_(recording) {}

    bool recording() const { return recording_; }
    size_t size() const { return nodes_.size(); }
    const std::vector<GraphNode>& nodes() const { return nodes_; }

    // Registers a node. Output requires_grad is set from the inputs; the
    // backward closure is kept only when it can ever run.
    TensorPtr emit(const char* op, std::vector<TensorPtr> inputs, TensorPtr output,
                   std::function<void()> backward);

    void backward(const TensorPtr& loss);

  private:
    std::vector<GraphNode> nodes_;
    std::unordered_set<const Tensor*> outputs_;
    bool recording_;
};

// Test hook shared by graph code and gradient checks: true when the closure
// for `input` should accumulate a gradient.
inline bool wants_grad(const TensorPtr& t) { return t->requires_grad(); }

}  // namespace thoughtlab
