#include "thoughtlab/tensor.hpp"

#include <sstream>

namespace thoughtlab {

std::string shape_string(const std::vector<int>& shape) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < shape.size(); ++i) {
        if (i) os << ", ";
        os << shape[i];
    }
    os << "]";
    return os.str();
}

namespace {
size_t checked_numel(const std::vector<int>& shape) {
    size_t n = 1;
    for (int d : shape) {
        if (d <= 0) {
            throw ShapeError("tensor dimensions must be positive, got " + shape_string(shape));
        }
        n *= static_cast<size_t>(d);
    }
    return n;
}
}  // namespace

Tensor::Tensor(std::vector<int> shape, bool requires_grad)
    : shape_(std::move(shape)),
      data_(checked_numel(shape_), 0.0f),
      requires_grad_(requires_grad) {}

TensorPtr Tensor::create(std::vector<int> shape, bool requires_grad) {
    return std::make_shared<Tensor>(std::move(shape), requires_grad);
}

TensorPtr Tensor::from(std::vector<int> shape, std::vector<float> values, bool requires_grad) {
    auto t = create(std::move(shape), requires_grad);
    if (values.size() != t->numel()) {
        throw ShapeError("value count " + std::to_string(values.size()) +
                         " does not match shape " + shape_string(t->shape()));
    }
    t->data_ = std::move(values);
    return t;
}

TensorPtr Tensor::scalar(float value, bool requires_grad) {
    return from({1}, {value}, requires_grad);
}

float Tensor::item() const {
    if (!is_scalar()) {
        throw ContractError("item() called on non-scalar tensor of shape " +
                            shape_string(shape_));
    }
    return data_[0];
}

std::vector<float>& Tensor::grad() {
    if (grad_.empty()) grad_.assign(data_.size(), 0.0f);
    return grad_;
}

const std::vector<float>& Tensor::grad() const {
    static const std::vector<float> empty;
    return grad_.empty() ? empty : grad_;
}

void Tensor::zero_grad() {
    if (!grad_.empty()) grad_.assign(data_.size(), 0.0f);
}

TensorPtr ComputeGraph::emit(const char* op, std::vector<TensorPtr> inputs, TensorPtr output,
                             std::function<void()> backward) {
    bool any_grad = false;
    for (const auto& in : inputs) {
        if (in->requires_grad()) any_grad = true;
    }
    output->set_requires_grad(any_grad);
    if (recording_) {
        outputs_.insert(output.get());
        nodes_.push_back(GraphNode{op, std::move(inputs), output,
                                   any_grad ? std::move(backward) : std::function<void()>()});
    }
    return output;
}

void ComputeGraph::backward(const TensorPtr& loss) {
    if (!recording_) {
        throw ContractError("backward() on a non-recording graph");
    }
    if (!loss->is_scalar()) {
        throw ContractError("backward() requires a scalar loss, got shape " +
                            shape_string(loss->shape()));
    }

    // Interior grads start from zero each pass; leaf grads are set aside and
    // re-added afterwards so repeated passes double them exactly.
    std::unordered_map<Tensor*, std::vector<float>> saved_leaf_grads;
    for (auto& node : nodes_) {
        node.output->zero_grad();
        node.output->grad();  // ensure allocation
        for (auto& in : node.inputs) {
            if (in->requires_grad() && !outputs_.contains(in.get()) &&
                !saved_leaf_grads.contains(in.get())) {
                std::vector<float>& g = in->grad();
                saved_leaf_grads.emplace(in.get(), std::move(g));
                g.clear();
                in->grad();  // reallocate zeros
            }
        }
    }

    loss->grad()[0] = 1.0f;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
        if (it->backward && it->output->requires_grad()) it->backward();
    }

    for (auto& [tensor, saved] : saved_leaf_grads) {
        std::vector<float>& g = tensor->grad();
        for (size_t i = 0; i < g.size(); ++i) g[i] += saved[i];
    }
}

}  // namespace thoughtlab
