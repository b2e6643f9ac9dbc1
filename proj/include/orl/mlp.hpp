#pragma once

#include "orl/common.hpp"
#include "orl/rng.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace orl {

/// Architecture of a fully-connected net: relu on hidden layers, identity output.
struct LayerSpec {
    int input_dim = 0;
    std::vector<int> hidden = {256, 256};
    int output_dim = 0;

    void validate() const {
        ORL_REQUIRE(input_dim >= 1, "LayerSpec: input_dim must be >= 1");
        ORL_REQUIRE(output_dim >= 1, "LayerSpec: output_dim must be >= 1");
        ORL_REQUIRE(!hidden.empty(), "LayerSpec: hidden list must be non-empty");
        for (int h : hidden) ORL_REQUIRE(h >= 1, "LayerSpec: hidden dims must be >= 1");
    }

    /// Full dimension chain [input, hidden..., output].
    std::vector<int> dims() const {
        std::vector<int> d;
        d.push_back(input_dim);
        d.insert(d.end(), hidden.begin(), hidden.end());
        d.push_back(output_dim);
        return d;
    }

    int n_layers() const { return static_cast<int>(hidden.size()) + 1; }

    bool operator==(const LayerSpec& o) const {
        return input_dim == o.input_dim && hidden == o.hidden && output_dim == o.output_dim;
    }
};

/// All weights and biases of one MLP. weights[l] has shape (dims[l+1] x dims[l]).
struct ParamSet {
    LayerSpec spec;
    std::vector<Mat> weights;
    std::vector<Vec> biases;

    size_t n_params() const {
        size_t n = 0;
        for (size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
        return n;
    }

    bool same_shape(const ParamSet& o) const {
        if (weights.size() != o.weights.size()) return false;
        for (size_t l = 0; l < weights.size(); ++l) {
            if (weights[l].rows() != o.weights[l].rows() || weights[l].cols() != o.weights[l].cols() ||
                biases[l].size() != o.biases[l].size())
                return false;
        }
        return true;
    }

    bool all_finite() const {
        for (size_t l = 0; l < weights.size(); ++l)
            if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
        return true;
    }

    void set_zero() {
        for (size_t l = 0; l < weights.size(); ++l) {
            weights[l].setZero();
            biases[l].setZero();
        }
    }

    /// Flat read/write access in layer-major order (W0 row-major, b0, W1, b1, ...).
    double& at(size_t idx) {
        for (size_t l = 0; l < weights.size(); ++l) {
            size_t wn = static_cast<size_t>(weights[l].size());
            if (idx < wn) {
                Eigen::Index r = static_cast<Eigen::Index>(idx) / weights[l].cols();
                Eigen::Index c = static_cast<Eigen::Index>(idx) % weights[l].cols();
                return weights[l](r, c);
            }
            idx -= wn;
            size_t bn = static_cast<size_t>(biases[l].size());
            if (idx < bn) return biases[l](static_cast<Eigen::Index>(idx));
            idx -= bn;
        }
        throw Error("ParamSet::at: index out of range");
    }

    double at(size_t idx) const { return const_cast<ParamSet*>(this)->at(idx); }
};

inline ParamSet zeros_like(const ParamSet& p) {
    ParamSet z;
    z.spec = p.spec;
    z.weights.reserve(p.weights.size());
    z.biases.reserve(p.biases.size());
    for (size_t l = 0; l < p.weights.size(); ++l) {
        z.weights.emplace_back(Mat::Zero(p.weights[l].rows(), p.weights[l].cols()));
        z.biases.emplace_back(Vec::Zero(p.biases[l].size()));
    }
    return z;
}

/// Deterministic init: weights uniform in +/- 1/sqrt(fan_in), biases zero.
///
/// The paper does not state an initialisation scheme; fan-in scaled uniform
/// keeps relu pre-activations at unit scale. Weights are drawn row-major per
/// layer so the draw order matches the serialisation order.
inline ParamSet mlp_init(const LayerSpec& spec, uint64_t seed) {
    spec.validate();
    ParamSet p;
    p.spec = spec;
    Rng rng(seed);
    auto d = spec.dims();
    for (int l = 0; l + 1 < static_cast<int>(d.size()); ++l) {
        int fan_in = d[l], fan_out = d[l + 1];
        double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        Mat w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-bound, bound);
        p.weights.push_back(std::move(w));
        p.biases.emplace_back(Vec::Zero(fan_out));
    }
    return p;
}

/// Activations recorded during a batch forward pass, for the reverse pass.
/// acts[0] is the input batch; acts[l+1] the output of layer l after relu
/// (identity on the last layer). pre[l] holds layer l pre-activations.
struct MlpCache {
    std::vector<Mat> acts;
    std::vector<Mat> pre;
};

/// Forward pass over a batch (rows = samples). Returns (B x output_dim).
inline Mat mlp_forward_batch(const ParamSet& p, const Mat& x, MlpCache* cache = nullptr) {
    ORL_REQUIRE(x.cols() == p.spec.input_dim, "mlp_forward: input dim mismatch");
    int n_layers = static_cast<int>(p.weights.size());
    Mat a = x;
    if (cache) {
        cache->acts.assign(1, a);
        cache->pre.clear();
    }
    for (int l = 0; l < n_layers; ++l) {
        Mat z = (a * p.weights[l].transpose()).rowwise() + p.biases[l].transpose();
        if (l + 1 < n_layers) {
            if (cache) cache->pre.push_back(z);
            a = z.cwiseMax(0.0);
        } else {
            if (cache) cache->pre.push_back(z);
            a = std::move(z);
        }
        if (cache) cache->acts.push_back(a);
    }
    return a;
}

inline Vec mlp_forward(const ParamSet& p, const Vec& x) {
    Mat out = mlp_forward_batch(p, x.transpose());
    return out.row(0).transpose();
}

/// Reverse pass: given dL/d(output batch), accumulates parameter gradients
/// into `grads` (must be zero-initialised or carry a partial sum) and
/// optionally returns dL/d(input batch).
inline void mlp_backward(const ParamSet& p, const MlpCache& cache, const Mat& d_out,
                         ParamSet& grads, Mat* d_input = nullptr) {
    int n_layers = static_cast<int>(p.weights.size());
    ORL_REQUIRE(static_cast<int>(cache.acts.size()) == n_layers + 1, "mlp_backward: bad cache");
    Mat delta = d_out;
    for (int l = n_layers - 1; l >= 0; --l) {
        if (l + 1 < n_layers) {
            // relu'(z) = 1 for z > 0, 0 otherwise (0 at the kink)
            delta = delta.cwiseProduct((cache.pre[l].array() > 0.0).cast<double>().matrix());
        }
        grads.weights[l].noalias() += delta.transpose() * cache.acts[l];
        grads.biases[l].noalias() += delta.colwise().sum().transpose();
        if (l > 0 || d_input) {
            Mat prev = delta * p.weights[l];
            if (l == 0) {
                if (d_input) *d_input = std::move(prev);
            } else {
                delta = std::move(prev);
            }
        }
    }
}

struct AdamState {
    double lr = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long long step = 0;
    std::vector<Mat> m_w, v_w;
    std::vector<Vec> m_b, v_b;

    static AdamState init(const ParamSet& p, double lr = 3e-4) {
        AdamState s;
        s.lr = lr;
        for (size_t l = 0; l < p.weights.size(); ++l) {
            s.m_w.emplace_back(Mat::Zero(p.weights[l].rows(), p.weights[l].cols()));
            s.v_w.emplace_back(Mat::Zero(p.weights[l].rows(), p.weights[l].cols()));
            s.m_b.emplace_back(Vec::Zero(p.biases[l].size()));
            s.v_b.emplace_back(Vec::Zero(p.biases[l].size()));
        }
        return s;
    }
};

/// Bias-corrected Adam update, applied in place.
inline void adam_step(ParamSet& params, const ParamSet& grads, AdamState& st) {
    ORL_REQUIRE(params.same_shape(grads), "adam_step: shape mismatch");
    ORL_REQUIRE(grads.all_finite(), "adam_step: non-finite gradient");
    st.step += 1;
    double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.step));
    double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.step));
    for (size_t l = 0; l < params.weights.size(); ++l) {
        st.m_w[l] = st.beta1 * st.m_w[l] + (1.0 - st.beta1) * grads.weights[l];
        st.v_w[l] = st.beta2 * st.v_w[l].array().matrix() +
                    (1.0 - st.beta2) * grads.weights[l].cwiseProduct(grads.weights[l]);
        params.weights[l].array() -=
            st.lr * (st.m_w[l].array() / bc1) / ((st.v_w[l].array() / bc2).sqrt() + st.eps);
        st.m_b[l] = st.beta1 * st.m_b[l] + (1.0 - st.beta1) * grads.biases[l];
        st.v_b[l] = st.beta2 * st.v_b[l] + (1.0 - st.beta2) * grads.biases[l].cwiseProduct(grads.biases[l]);
        params.biases[l].array() -=
            st.lr * (st.m_b[l].array() / bc1) / ((st.v_b[l].array() / bc2).sqrt() + st.eps);
    }
}

/// Polyak averaging: target <- (1 - tau) * target + tau * online.
inline void soft_update(ParamSet& target, const ParamSet& online, double tau) {
    for (size_t l = 0; l < target.weights.size(); ++l) {
        target.weights[l] = (1.0 - tau) * target.weights[l] + tau * online.weights[l];
        target.biases[l] = (1.0 - tau) * target.biases[l] + tau * online.biases[l];
    }
}

// --- checkpoint serialisation -------------------------------------------
//
// One text header line "orlmlp v1 in=<d> hidden=<h1,h2,...> out=<d>\n",
// then raw little-endian doubles, layer-major: W0 row-major, b0, W1, b1, ...

inline void save_params(const ParamSet& p, std::ostream& out) {
    out << "orlmlp v1 in=" << p.spec.input_dim << " hidden=";
    for (size_t i = 0; i < p.spec.hidden.size(); ++i) {
        if (i) out << ',';
        out << p.spec.hidden[i];
    }
    out << " out=" << p.spec.output_dim << "\n";
    auto write_d = [&out](double v) { out.write(reinterpret_cast<const char*>(&v), sizeof(double)); };
    for (size_t l = 0; l < p.weights.size(); ++l) {
        const Mat& w = p.weights[l];
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) write_d(w(r, c));
        for (Eigen::Index i = 0; i < p.biases[l].size(); ++i) write_d(p.biases[l](i));
    }
    ORL_REQUIRE(out.good(), "save_params: write failed");
}

inline void save_params(const ParamSet& p, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    ORL_REQUIRE(f.good(), "save_params: cannot open " + path);
    save_params(p, f);
}

inline ParamSet load_params(std::istream& in) {
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, tok;
    hs >> magic >> tok;
    ORL_REQUIRE(magic == "orlmlp" && tok == "v1", "load_params: bad header");
    LayerSpec spec;
    spec.hidden.clear();
    while (hs >> tok) {
        auto eq = tok.find('=');
        ORL_REQUIRE(eq != std::string::npos, "load_params: bad header field");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "in") {
            spec.input_dim = std::stoi(val);
        } else if (key == "out") {
            spec.output_dim = std::stoi(val);
        } else if (key == "hidden") {
            std::istringstream vs(val);
            std::string h;
            while (std::getline(vs, h, ',')) spec.hidden.push_back(std::stoi(h));
        } else {
            throw Error("load_params: unknown header field " + key);
        }
    }
    spec.validate();
    ParamSet p;
    p.spec = spec;
    auto d = spec.dims();
    auto read_d = [&in]() {
        double v;
        in.read(reinterpret_cast<char*>(&v), sizeof(double));
        ORL_REQUIRE(in.good(), "load_params: truncated file");
        return v;
    };
    for (int l = 0; l + 1 < static_cast<int>(d.size()); ++l) {
        Mat w(d[l + 1], d[l]);
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = read_d();
        Vec b(d[l + 1]);
        for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = read_d();
        p.weights.push_back(std::move(w));
        p.biases.push_back(std::move(b));
    }
    return p;
}

inline ParamSet load_params(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    ORL_REQUIRE(f.good(), "load_params: cannot open " + path);
    return load_params(f);
}

}  // namespace orl
