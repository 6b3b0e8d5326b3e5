#pragma once

#include <vector>

#include "thoughtlab/tensor.hpp"

namespace thoughtlab {

// Differentiable ops. Each op validates shapes, computes the forward value,
// and registers a backward closure on the graph. Ops are pure: identical
// inputs give bit-identical outputs.
//
// Broadcasting is deliberately limited to add_bias over the last dimension.

// [m,k] x [k,n] -> [m,n]
TensorPtr matmul(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b);
// [m,k] x [n,k]^T -> [m,n]
TensorPtr matmul_nt(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b);

TensorPtr add(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b);
TensorPtr sub(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b);
TensorPtr mul(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b);
TensorPtr scale(ComputeGraph& g, const TensorPtr& x, float c);
// x[..., d] + b[d]
TensorPtr add_bias(ComputeGraph& g, const TensorPtr& x, const TensorPtr& b);

TensorPtr softmax(ComputeGraph& g, const TensorPtr& x, int axis);
// -log softmax(logits)[target], in nats.
TensorPtr cross_entropy(ComputeGraph& g, const TensorPtr& logits, int target);
// Weighted mean of per-row cross entropies over rows with mask true.
// logits [S,V]; targets and mask have length S.
TensorPtr sequence_nll(ComputeGraph& g, const TensorPtr& logits,
                       const std::vector<int>& targets, const std::vector<bool>& mask);

TensorPtr layer_norm(ComputeGraph& g, const TensorPtr& x, const TensorPtr& gain,
                     const TensorPtr& bias, float eps);
TensorPtr gelu(ComputeGraph& g, const TensorPtr& x);

// Gather rows of table [V,d] -> [n,d].
TensorPtr embedding(ComputeGraph& g, const TensorPtr& table, const std::vector<int>& ids);

TensorPtr slice_cols(ComputeGraph& g, const TensorPtr& x, int start, int len);
TensorPtr concat_cols(ComputeGraph& g, const std::vector<TensorPtr>& parts);

TensorPtr sum_all(ComputeGraph& g, const TensorPtr& x);
TensorPtr mean_all(ComputeGraph& g, const TensorPtr& x);

TensorPtr exp_op(ComputeGraph& g, const TensorPtr& x);
// Requires strictly positive input.
TensorPtr log_op(ComputeGraph& g, const TensorPtr& x);
TensorPtr sigmoid(ComputeGraph& g, const TensorPtr& x);
// log(1 + e^x), computed in the overflow-safe form.
TensorPtr softplus(ComputeGraph& g, const TensorPtr& x);
// min(x, hi); gradient is zero where the clamp is active.
TensorPtr clamp_max(ComputeGraph& g, const TensorPtr& x, float hi);

// Mean of scalar tensors; used to combine per-sequence losses into one batch loss.
TensorPtr mean_of(ComputeGraph& g, const std::vector<TensorPtr>& scalars);

}  // namespace thoughtlab
