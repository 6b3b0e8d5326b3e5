#include "thoughtlab/ops.hpp"

#include <cmath>
#include <cstddef>

namespace thoughtlab {

namespace {

// C[m,n] += A[m,k] * B[k,n]
void gemm_nn_acc(const float* a, const float* b, float* c, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        const float* arow = a + static_cast<size_t>(i) * k;
        float* crow = c + static_cast<size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            const float av = arow[p];
            const float* brow = b + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

// C[m,n] += A[m,k] * B[n,k]^T
void gemm_nt_acc(const float* a, const float* b, float* c, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        const float* arow = a + static_cast<size_t>(i) * k;
        float* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const float* brow = b + static_cast<size_t>(j) * k;
            float acc = 0.0f;
            for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
            crow[j] += acc;
        }
    }
}

// C[k,n] += A[m,k]^T * B[m,n]
void gemm_tn_acc(const float* a, const float* b, float* c, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        const float* arow = a + static_cast<size_t>(i) * k;
        const float* brow = b + static_cast<size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            const float av = arow[p];
            float* crow = c + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void require_rank2(const TensorPtr& t, const char* op) {
    if (t->rank() != 2) {
        throw ShapeError(std::string(op) + ": expected rank-2 tensor, got " +
                         shape_string(t->shape()));
    }
}

void require_same_shape(const TensorPtr& a, const TensorPtr& b, const char* op) {
    if (a->shape() != b->shape()) {
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a->shape()) +
                         " vs " + shape_string(b->shape()));
    }
}

}  // namespace

TensorPtr matmul(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b) {
    require_rank2(a, "matmul");
    require_rank2(b, "matmul");
    const int m = a->dim(0), k = a->dim(1), n = b->dim(1);
    if (b->dim(0) != k) {
        throw ShapeError("matmul: inner dimensions differ, " + shape_string(a->shape()) +
                         " x " + shape_string(b->shape()));
    }
    auto out = Tensor::create({m, n});
    gemm_nn_acc(a->data().data(), b->data().data(), out->data().data(), m, k, n);
    return g.emit("matmul", {a, b}, out, [a, b, out, m, k, n] {
        const float* dout = out->grad().data();
        if (wants_grad(a)) gemm_nt_acc(dout, b->data().data(), a->grad().data(), m, n, k);
        if (wants_grad(b)) gemm_tn_acc(a->data().data(), dout, b->grad().data(), m, k, n);
    });
}

TensorPtr matmul_nt(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b) {
    require_rank2(a, "matmul_nt");
    require_rank2(b, "matmul_nt");
    const int m = a->dim(0), k = a->dim(1), n = b->dim(0);
    if (b->dim(1) != k) {
        throw ShapeError("matmul_nt: inner dimensions differ, " + shape_string(a->shape()) +
                         " x " + shape_string(b->shape()) + "^T");
    }
    auto out = Tensor::create({m, n});
    gemm_nt_acc(a->data().data(), b->data().data(), out->data().data(), m, k, n);
    return g.emit("matmul_nt", {a, b}, out, [a, b, out, m, k, n] {
        const float* dout = out->grad().data();
        if (wants_grad(a)) gemm_nn_acc(dout, b->data().data(), a->grad().data(), m, n, k);
        if (wants_grad(b)) gemm_tn_acc(dout, a->data().data(), b->grad().data(), m, n, k);
    });
}

TensorPtr add(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b) {
    require_same_shape(a, b, "add");
    auto out = Tensor::create(a->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = a->data()[i] + b->data()[i];
    return g.emit("add", {a, b}, out, [a, b, out, n] {
        const float* dout = out->grad().data();
        if (wants_grad(a)) {
            float* da = a->grad().data();
            for (size_t i = 0; i < n; ++i) da[i] += dout[i];
        }
        if (wants_grad(b)) {
            float* db = b->grad().data();
            for (size_t i = 0; i < n; ++i) db[i] += dout[i];
        }
    });
}

TensorPtr sub(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b) {
    require_same_shape(a, b, "sub");
    auto out = Tensor::create(a->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = a->data()[i] - b->data()[i];
    return g.emit("sub", {a, b}, out, [a, b, out, n] {
        const float* dout = out->grad().data();
        if (wants_grad(a)) {
            float* da = a->grad().data();
            for (size_t i = 0; i < n; ++i) da[i] += dout[i];
        }
        if (wants_grad(b)) {
            float* db = b->grad().data();
            for (size_t i = 0; i < n; ++i) db[i] -= dout[i];
        }
    });
}

TensorPtr mul(ComputeGraph& g, const TensorPtr& a, const TensorPtr& b) {
    require_same_shape(a, b, "mul");
    auto out = Tensor::create(a->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = a->data()[i] * b->data()[i];
    return g.emit("mul", {a, b}, out, [a, b, out, n] {
        const float* dout = out->grad().data();
        if (wants_grad(a)) {
            float* da = a->grad().data();
            const float* bv = b->data().data();
            for (size_t i = 0; i < n; ++i) da[i] += dout[i] * bv[i];
        }
        if (wants_grad(b)) {
            float* db = b->grad().data();
            const float* av = a->data().data();
            for (size_t i = 0; i < n; ++i) db[i] += dout[i] * av[i];
        }
    });
}

TensorPtr scale(ComputeGraph& g, const TensorPtr& x, float c) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = x->data()[i] * c;
    return g.emit("scale", {x}, out, [x, out, c, n] {
        if (!wants_grad(x)) return;
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) dx[i] += dout[i] * c;
    });
}

TensorPtr add_bias(ComputeGraph& g, const TensorPtr& x, const TensorPtr& b) {
    if (b->rank() != 1 || x->rank() == 0 ||
        x->dim(x->rank() - 1) != b->dim(0)) {
        throw ShapeError("add_bias: bias " + shape_string(b->shape()) +
                         " does not match last dimension of " + shape_string(x->shape()));
    }
    const size_t d = static_cast<size_t>(b->dim(0));
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = x->data()[i] + b->data()[i % d];
    return g.emit("add_bias", {x, b}, out, [x, b, out, n, d] {
        const float* dout = out->grad().data();
        if (wants_grad(x)) {
            float* dx = x->grad().data();
            for (size_t i = 0; i < n; ++i) dx[i] += dout[i];
        }
        if (wants_grad(b)) {
            float* db = b->grad().data();
            for (size_t i = 0; i < n; ++i) db[i % d] += dout[i];
        }
    });
}

TensorPtr softmax(ComputeGraph& g, const TensorPtr& x, int axis) {
    if (axis < 0 || static_cast<size_t>(axis) >= x->rank()) {
        throw ShapeError("softmax: axis " + std::to_string(axis) + " invalid for shape " +
                         shape_string(x->shape()));
    }
    for (float v : x->data()) {
        if (!std::isfinite(v)) throw NumericError("softmax: non-finite input");
    }
    const int n = x->dim(axis);
    size_t inner = 1, outer = 1;
    for (size_t i = axis + 1; i < x->rank(); ++i) inner *= x->dim(i);
    for (int i = 0; i < axis; ++i) outer *= x->dim(i);

    auto out = Tensor::create(x->shape());
    const float* xd = x->data().data();
    float* yd = out->data().data();
    for (size_t o = 0; o < outer; ++o) {
        for (size_t in = 0; in < inner; ++in) {
            const size_t base = o * n * inner + in;
            float mx = xd[base];
            for (int t = 1; t < n; ++t) mx = std::max(mx, xd[base + t * inner]);
            float sum = 0.0f;
            for (int t = 0; t < n; ++t) {
                const float e = std::exp(xd[base + t * inner] - mx);
                yd[base + t * inner] = e;
                sum += e;
            }
            const float inv = 1.0f / sum;
            for (int t = 0; t < n; ++t) yd[base + t * inner] *= inv;
        }
    }
    return g.emit("softmax", {x}, out, [x, out, n, inner, outer] {
        if (!wants_grad(x)) return;
        const float* y = out->data().data();
        const float* dy = out->grad().data();
        float* dx = x->grad().data();
        for (size_t o = 0; o < outer; ++o) {
            for (size_t in = 0; in < inner; ++in) {
                const size_t base = o * n * inner + in;
                float dot = 0.0f;
                for (int t = 0; t < n; ++t) dot += dy[base + t * inner] * y[base + t * inner];
                for (int t = 0; t < n; ++t) {
                    const size_t idx = base + t * inner;
                    dx[idx] += y[idx] * (dy[idx] - dot);
                }
            }
        }
    });
}

namespace {
// Row log-sum-exp with max subtraction.
float row_lse(const float* row, int n) {
    float mx = row[0];
    for (int j = 1; j < n; ++j) mx = std::max(mx, row[j]);
    float sum = 0.0f;
    for (int j = 0; j < n; ++j) sum += std::exp(row[j] - mx);
    return mx + std::log(sum);
}
}  // namespace

TensorPtr cross_entropy(ComputeGraph& g, const TensorPtr& logits, int target) {
    if (logits->rank() != 1) {
        throw ShapeError("cross_entropy: expected rank-1 logits, got " +
                         shape_string(logits->shape()));
    }
    const int v = logits->dim(0);
    if (target < 0 || target >= v) {
        throw IndexError("cross_entropy: target " + std::to_string(target) +
                         " out of range [0, " + std::to_string(v) + ")");
    }
    const float* xd = logits->data().data();
    const float lse = row_lse(xd, v);
    auto out = Tensor::scalar(lse - xd[target]);
    return g.emit("cross_entropy", {logits}, out, [logits, out, target, v, lse] {
        if (!wants_grad(logits)) return;
        const float dl = out->grad()[0];
        const float* xd = logits->data().data();
        float* dx = logits->grad().data();
        for (int j = 0; j < v; ++j) {
            const float p = std::exp(xd[j] - lse);
            dx[j] += dl * (p - (j == target ? 1.0f : 0.0f));
        }
    });
}

TensorPtr sequence_nll(ComputeGraph& g, const TensorPtr& logits,
                       const std::vector<int>& targets, const std::vector<bool>& mask) {
    require_rank2(logits, "sequence_nll");
    const int s = logits->dim(0), v = logits->dim(1);
    if (targets.size() != static_cast<size_t>(s) || mask.size() != static_cast<size_t>(s)) {
        throw ShapeError("sequence_nll: targets/mask length does not match " +
                         std::to_string(s) + " rows");
    }
    size_t active = 0;
    for (bool b : mask) active += b;
    if (active == 0) throw ContractError("sequence_nll: empty loss mask");
    for (int i = 0; i < s; ++i) {
        if (mask[i] && (targets[i] < 0 || targets[i] >= v)) {
            throw IndexError("sequence_nll: target " + std::to_string(targets[i]) +
                             " out of range [0, " + std::to_string(v) + ") at row " +
                             std::to_string(i));
        }
    }
    const float w = 1.0f / static_cast<float>(active);
    const float* xd = logits->data().data();
    auto lse = std::make_shared<std::vector<float>>(s, 0.0f);
    float loss = 0.0f;
    for (int i = 0; i < s; ++i) {
        if (!mask[i]) continue;
        const float* row = xd + static_cast<size_t>(i) * v;
        (*lse)[i] = row_lse(row, v);
        loss += w * ((*lse)[i] - row[targets[i]]);
    }
    auto out = Tensor::scalar(loss);
    return g.emit("sequence_nll", {logits}, out, [logits, out, targets, mask, lse, s, v, w] {
        if (!wants_grad(logits)) return;
        const float dl = out->grad()[0] * w;
        const float* xd = logits->data().data();
        float* dx = logits->grad().data();
        for (int i = 0; i < s; ++i) {
            if (!mask[i]) continue;
            const float* row = xd + static_cast<size_t>(i) * v;
            float* drow = dx + static_cast<size_t>(i) * v;
            const float l = (*lse)[i];
            for (int j = 0; j < v; ++j) {
                const float p = std::exp(row[j] - l);
                drow[j] += dl * (p - (j == targets[i] ? 1.0f : 0.0f));
            }
        }
    });
}

TensorPtr layer_norm(ComputeGraph& g, const TensorPtr& x, const TensorPtr& gain,
                     const TensorPtr& bias, float eps) {
    if (x->rank() == 0) throw ShapeError("layer_norm: scalar input");
    const int d = x->dim(x->rank() - 1);
    if (gain->shape() != std::vector<int>{d} || bias->shape() != std::vector<int>{d}) {
        throw ShapeError("layer_norm: gain/bias must have shape [" + std::to_string(d) +
                         "], got " + shape_string(gain->shape()) + " and " +
                         shape_string(bias->shape()));
    }
    const size_t rows = x->numel() / d;
    auto out = Tensor::create(x->shape());
    const float* xd = x->data().data();
    const float* gd = gain->data().data();
    const float* bd = bias->data().data();
    float* yd = out->data().data();
    for (size_t r = 0; r < rows; ++r) {
        const float* row = xd + r * d;
        float* orow = yd + r * d;
        float mean = 0.0f;
        for (int j = 0; j < d; ++j) mean += row[j];
        mean /= d;
        float var = 0.0f;  // population variance
        for (int j = 0; j < d; ++j) {
            const float c = row[j] - mean;
            var += c * c;
        }
        var /= d;
        const float inv = 1.0f / std::sqrt(var + eps);
        for (int j = 0; j < d; ++j) orow[j] = gd[j] * ((row[j] - mean) * inv) + bd[j];
    }
    return g.emit("layer_norm", {x, gain, bias}, out, [x, gain, bias, out, eps, rows, d] {
        const float* xd = x->data().data();
        const float* gd = gain->data().data();
        const float* dy = out->grad().data();
        for (size_t r = 0; r < rows; ++r) {
            const float* row = xd + r * d;
            const float* dyrow = dy + r * d;
            float mean = 0.0f;
            for (int j = 0; j < d; ++j) mean += row[j];
            mean /= d;
            float var = 0.0f;
            for (int j = 0; j < d; ++j) {
                const float c = row[j] - mean;
                var += c * c;
            }
            var /= d;
            const float inv = 1.0f / std::sqrt(var + eps);
            if (wants_grad(gain) || wants_grad(bias)) {
                float* dg = gain->grad().data();
                float* db = bias->grad().data();
                for (int j = 0; j < d; ++j) {
                    const float xhat = (row[j] - mean) * inv;
                    if (wants_grad(gain)) dg[j] += dyrow[j] * xhat;
                    if (wants_grad(bias)) db[j] += dyrow[j];
                }
            }
            if (wants_grad(x)) {
                float* dxrow = x->grad().data() + r * d;
                float mean_dxhat = 0.0f, mean_dxhat_xhat = 0.0f;
                for (int j = 0; j < d; ++j) {
                    const float xhat = (row[j] - mean) * inv;
                    const float dxhat = dyrow[j] * gd[j];
                    mean_dxhat += dxhat;
                    mean_dxhat_xhat += dxhat * xhat;
                }
                mean_dxhat /= d;
                mean_dxhat_xhat /= d;
                for (int j = 0; j < d; ++j) {
                    const float xhat = (row[j] - mean) * inv;
                    const float dxhat = dyrow[j] * gd[j];
                    dxrow[j] += inv * (dxhat - mean_dxhat - xhat * mean_dxhat_xhat);
                }
            }
        }
    });
}

TensorPtr gelu(ComputeGraph& g, const TensorPtr& x) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    constexpr float inv_sqrt2 = 0.70710678118654752440f;
    for (size_t i = 0; i < n; ++i) {
        const float v = x->data()[i];
        out->data()[i] = 0.5f * v * (1.0f + std::erf(v * inv_sqrt2));
    }
    return g.emit("gelu", {x}, out, [x, out, n] {
        if (!wants_grad(x)) return;
        constexpr float inv_sqrt2 = 0.70710678118654752440f;
        constexpr float inv_sqrt2pi = 0.39894228040143267794f;
        const float* xd = x->data().data();
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) {
            const float v = xd[i];
            const float cdf = 0.5f * (1.0f + std::erf(v * inv_sqrt2));
            const float pdf = inv_sqrt2pi * std::exp(-0.5f * v * v);
            dx[i] += dout[i] * (cdf + v * pdf);
        }
    });
}

TensorPtr embedding(ComputeGraph& g, const TensorPtr& table, const std::vector<int>& ids) {
    require_rank2(table, "embedding");
    const int v = table->dim(0), d = table->dim(1);
    for (int id : ids) {
        if (id < 0 || id >= v) {
            throw IndexError("embedding: id " + std::to_string(id) + " out of range [0, " +
                             std::to_string(v) + ")");
        }
    }
    const int n = static_cast<int>(ids.size());
    if (n == 0) throw ShapeError("embedding: empty id list");
    auto out = Tensor::create({n, d});
    for (int i = 0; i < n; ++i) {
        const float* src = table->data().data() + static_cast<size_t>(ids[i]) * d;
        float* dst = out->data().data() + static_cast<size_t>(i) * d;
        for (int j = 0; j < d; ++j) dst[j] = src[j];
    }
    return g.emit("embedding", {table}, out, [table, out, ids, n, d] {
        if (!wants_grad(table)) return;
        const float* dout = out->grad().data();
        float* dt = table->grad().data();
        for (int i = 0; i < n; ++i) {
            const float* src = dout + static_cast<size_t>(i) * d;
            float* dst = dt + static_cast<size_t>(ids[i]) * d;
            for (int j = 0; j < d; ++j) dst[j] += src[j];
        }
    });
}

TensorPtr slice_cols(ComputeGraph& g, const TensorPtr& x, int start, int len) {
    require_rank2(x, "slice_cols");
    const int r = x->dim(0), c = x->dim(1);
    if (start < 0 || len <= 0 || start + len > c) {
        throw ShapeError("slice_cols: [" + std::to_string(start) + ", " +
                         std::to_string(start + len) + ") out of range for " +
                         shape_string(x->shape()));
    }
    auto out = Tensor::create({r, len});
    for (int i = 0; i < r; ++i) {
        const float* src = x->data().data() + static_cast<size_t>(i) * c + start;
        float* dst = out->data().data() + static_cast<size_t>(i) * len;
        for (int j = 0; j < len; ++j) dst[j] = src[j];
    }
    return g.emit("slice_cols", {x}, out, [x, out, start, len, r, c] {
        if (!wants_grad(x)) return;
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (int i = 0; i < r; ++i) {
            const float* src = dout + static_cast<size_t>(i) * len;
            float* dst = dx + static_cast<size_t>(i) * c + start;
            for (int j = 0; j < len; ++j) dst[j] += src[j];
        }
    });
}

TensorPtr concat_cols(ComputeGraph& g, const std::vector<TensorPtr>& parts) {
    if (parts.empty()) throw ShapeError("concat_cols: no inputs");
    const int r = parts[0]->dim(0);
    int total = 0;
    for (const auto& p : parts) {
        require_rank2(p, "concat_cols");
        if (p->dim(0) != r) {
            throw ShapeError("concat_cols: row mismatch " + shape_string(p->shape()));
        }
        total += p->dim(1);
    }
    auto out = Tensor::create({r, total});
    int off = 0;
    for (const auto& p : parts) {
        const int c = p->dim(1);
        for (int i = 0; i < r; ++i) {
            const float* src = p->data().data() + static_cast<size_t>(i) * c;
            float* dst = out->data().data() + static_cast<size_t>(i) * total + off;
            for (int j = 0; j < c; ++j) dst[j] = src[j];
        }
        off += c;
    }
    std::vector<TensorPtr> inputs = parts;
    return g.emit("concat_cols", inputs, out, [parts, out, r, total] {
        const float* dout = out->grad().data();
        int off = 0;
        for (const auto& p : parts) {
            const int c = p->dim(1);
            if (wants_grad(p)) {
                float* dp = p->grad().data();
                for (int i = 0; i < r; ++i) {
                    const float* src = dout + static_cast<size_t>(i) * total + off;
                    float* dst = dp + static_cast<size_t>(i) * c;
                    for (int j = 0; j < c; ++j) dst[j] += src[j];
                }
            }
            off += c;
        }
    });
}

TensorPtr sum_all(ComputeGraph& g, const TensorPtr& x) {
    float s = 0.0f;
    for (float v : x->data()) s += v;
    auto out = Tensor::scalar(s);
    return g.emit("sum_all", {x}, out, [x, out] {
        if (!wants_grad(x)) return;
        const float dl = out->grad()[0];
        float* dx = x->grad().data();
        for (size_t i = 0; i < x->numel(); ++i) dx[i] += dl;
    });
}

TensorPtr mean_all(ComputeGraph& g, const TensorPtr& x) {
    float s = 0.0f;
    for (float v : x->data()) s += v;
    const float inv = 1.0f / static_cast<float>(x->numel());
    auto out = Tensor::scalar(s * inv);
    return g.emit("mean_all", {x}, out, [x, out, inv] {
        if (!wants_grad(x)) return;
        const float dl = out->grad()[0] * inv;
        float* dx = x->grad().data();
        for (size_t i = 0; i < x->numel(); ++i) dx[i] += dl;
    });
}

TensorPtr exp_op(ComputeGraph& g, const TensorPtr& x) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = std::exp(x->data()[i]);
    return g.emit("exp", {x}, out, [x, out, n] {
        if (!wants_grad(x)) return;
        const float* y = out->data().data();
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) dx[i] += dout[i] * y[i];
    });
}

TensorPtr log_op(ComputeGraph& g, const TensorPtr& x) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) {
        const float v = x->data()[i];
        if (!(v > 0.0f)) throw NumericError("log: non-positive input " + std::to_string(v));
        out->data()[i] = std::log(v);
    }
    return g.emit("log", {x}, out, [x, out, n] {
        if (!wants_grad(x)) return;
        const float* xd = x->data().data();
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) dx[i] += dout[i] / xd[i];
    });
}

TensorPtr sigmoid(ComputeGraph& g, const TensorPtr& x) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) {
        const float v = x->data()[i];
        out->data()[i] = v >= 0.0f ? 1.0f / (1.0f + std::exp(-v))
                                   : std::exp(v) / (1.0f + std::exp(v));
    }
    return g.emit("sigmoid", {x}, out, [x, out, n] {
        if (!wants_grad(x)) return;
        const float* y = out->data().data();
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) dx[i] += dout[i] * y[i] * (1.0f - y[i]);
    });
}

TensorPtr softplus(ComputeGraph& g, const TensorPtr& x) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) {
        const float v = x->data()[i];
        out->data()[i] = std::max(v, 0.0f) + std::log1p(std::exp(-std::fabs(v)));
    }
    return g.emit("softplus", {x}, out, [x, out, n] {
        if (!wants_grad(x)) return;
        const float* xd = x->data().data();
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) {
            const float v = xd[i];
            const float sig = v >= 0.0f ? 1.0f / (1.0f + std::exp(-v))
                                        : std::exp(v) / (1.0f + std::exp(v));
            dx[i] += dout[i] * sig;
        }
    });
}

TensorPtr clamp_max(ComputeGraph& g, const TensorPtr& x, float hi) {
    auto out = Tensor::create(x->shape());
    const size_t n = out->numel();
    for (size_t i = 0; i < n; ++i) out->data()[i] = std::min(x->data()[i], hi);
    return g.emit("clamp_max", {x}, out, [x, out, hi, n] {
        if (!wants_grad(x)) return;
        const float* xd = x->data().data();
        const float* dout = out->grad().data();
        float* dx = x->grad().data();
        for (size_t i = 0; i < n; ++i) {
            if (xd[i] < hi) dx[i] += dout[i];
        }
    });
}

TensorPtr mean_of(ComputeGraph& g, const std::vector<TensorPtr>& scalars) {
    if (scalars.empty()) throw ContractError("mean_of: no inputs");
    float s = 0.0f;
    for (const auto& t : scalars) {
        if (!t->is_scalar()) {
            throw ShapeError("mean_of: non-scalar input of shape " + shape_string(t->shape()));
        }
        s += t->item();
    }
    const float inv = 1.0f / static_cast<float>(scalars.size());
    auto out = Tensor::scalar(s * inv);
    std::vector<TensorPtr> inputs = scalars;
    return g.emit("mean_of", inputs, out, [scalars, out, inv] {
        const float dl = out->grad()[0] * inv;
        for (const auto& t : scalars) {
            if (wants_grad(t)) t->grad()[0] += dl;
        }
    });
}

}  // namespace thoughtlab
