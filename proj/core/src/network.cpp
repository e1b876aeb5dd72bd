#include "gramian_lens/network.hpp"

#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gramian_lens/errors.hpp"

namespace gramian_lens {

namespace {
using nlohmann::json;

std::string layer_label(std::size_t index) {
    return "layer " + std::to_string(index + 1);
}

Eigen::VectorXd parse_vector(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ParseError(where + ": expected an array of numbers");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index k = 0;
    for (const auto& e : j) {
        if (!e.is_number()) {
            throw ParseError(where + ": entry " + std::to_string(k) + " is not a number");
        }
        v[k++] = e.get<double>();
    }
    return v;
}

Eigen::MatrixXd parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(where + ": expected a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Eigen::MatrixXd m;
    for (std::size_t r = 0; r < rows; ++r) {
        const Eigen::VectorXd row = parse_vector(j[r], where + ", row " + std::to_string(r));
        if (r == 0) {
            cols = static_cast<std::size_t>(row.size());
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        } else if (static_cast<std::size_t>(row.size()) != cols) {
            throw ParseError(where + ": row " + std::to_string(r) + " has " +
                             std::to_string(row.size()) + " entries, expected " +
                             std::to_string(cols));
        }
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

}  // namespace

int NetworkSpec::output_width() const {
    return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows());
}

int NetworkSpec::hidden_width() const {
    int n = 0;
    for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
        n += static_cast<int>(layers[l].weights.rows());
    }
    return n;
}

std::vector<int> NetworkSpec::widths() const {
    std::vector<int> w{n_x};
    for (const auto& layer : layers) {
        w.push_back(static_cast<int>(layer.weights.rows()));
    }
    return w;
}

std::vector<int> NetworkSpec::hidden_widths() const {
    std::vector<int> w;
    for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
        w.push_back(static_cast<int>(layers[l].weights.rows()));
    }
    return w;
}

void NetworkSpec::validate() const {
    if (n_x < 1) {
        throw ShapeError("n_x must be at least 1");
    }
    if (layers.empty()) {
        throw ShapeError("model has no layers");
    }
    Eigen::Index prev = n_x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        const std::string where = layer_label(l);
        if (layer.weights.rows() < 1) {
            throw ShapeError(where + ": empty weight matrix");
        }
        if (layer.weights.cols() != prev) {
            throw ShapeError(where + ": weights have " + std::to_string(layer.weights.cols()) +
                             " columns, expected " + std::to_string(prev));
        }
        if (layer.bias.size() != layer.weights.rows()) {
            throw ShapeError(where + ": bias length " + std::to_string(layer.bias.size()) +
                             " does not match weight rows " +
                             std::to_string(layer.weights.rows()));
        }
        if (!layer.weights.allFinite() || !layer.bias.allFinite()) {
            throw ShapeError(where + ": non-finite weight or bias entry");
        }
        prev = layer.weights.rows();
    }
}

NetworkSpec load_network(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("model document must be an object");
    }
    if (!doc.contains("n_x") || !doc["n_x"].is_number_integer()) {
        throw ParseError("missing or non-integer field \"n_x\"");
    }
    if (!doc.contains("layers") || !doc["layers"].is_array() || doc["layers"].empty()) {
        throw ParseError("missing or empty field \"layers\"");
    }

    NetworkSpec net;
    net.n_x = doc["n_x"].get<int>();
    const auto& layers = doc["layers"];
    net.layers.reserve(layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& jl = layers[l];
        const std::string where = layer_label(l);
        if (!jl.is_object()) {
            throw ParseError(where + ": expected an object");
        }
        for (const char* field : {"weights", "bias", "activation"}) {
            if (!jl.contains(field)) {
                throw ParseError(where + ": missing field \"" + std::string(field) + "\"");
            }
        }
        LayerSpec layer;
        layer.weights = parse_matrix(jl["weights"], where + ", field \"weights\"");
        layer.bias = parse_vector(jl["bias"], where + ", field \"bias\"");
        if (!jl["activation"].is_string()) {
            throw ParseError(where + ": field \"activation\" must be a string");
        }
        try {
            layer.activation = parse_activation(jl["activation"].get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

NetworkSpec load_network_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open model file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_network(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ShapeError& e) {
        throw ShapeError(path.string() + ": " + e.what());
    }
}

ForwardTrace forward(const NetworkSpec& net, const Eigen::VectorXd& x) {
    if (x.size() != net.n_x) {
        throw ShapeError("input has length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(net.n_x));
    }
    if (!x.allFinite()) {
        throw ShapeError("input contains a non-finite entry");
    }

    ForwardTrace trace;
    trace.x_star = x;
    const int L = net.layer_count();
    trace.z_star.reserve(L);
    trace.h_star.reserve(L > 0 ? L - 1 : 0);

    Eigen::VectorXd h = x;
    for (int l = 0; l < L; ++l) {
        const LayerSpec& layer = net.layers[static_cast<std::size_t>(l)];
        Eigen::VectorXd z = layer.weights * h + layer.bias;
        Eigen::VectorXd a(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            a[i] = act_value(layer.activation, z[i]);
        }
        trace.z_star.push_back(std::move(z));
        if (l + 1 < L) {
            trace.h_star.push_back(a);
            h = std::move(a);
        } else {
            trace.y_star = std::move(a);
        }
    }

    trace.h_stacked.resize(net.hidden_width());
    Eigen::Index offset = 0;
    for (const auto& hl : trace.h_star) {
        trace.h_stacked.segment(offset, hl.size()) = hl;
        offset += hl.size();
    }
    return trace;
}

namespace {

// FNV-1a, 64-bit; stable across platforms.
class Fnv1a {
  public:
    void feed(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ull;
        }
    }
    void feed(const std::string& s) { feed(s.data(), s.size()); }
    void feed_double(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v == 0.0 ? 0.0 : v);
        feed(buf, std::char_traits<char>::length(buf));
    }
    std::uint64_t value() const { return hash_; }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace

std::string network_hash(const NetworkSpec& net) {
    Fnv1a h;
    h.feed("nx:" + std::to_string(net.n_x) + ";");
    for (const auto& layer : net.layers) {
        h.feed("layer:" + std::to_string(layer.weights.rows()) + "x" +
               std::to_string(layer.weights.cols()) + ":" +
               std::string(activation_name(layer.activation)) + ";");
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
                h.feed_double(layer.weights(r, c));
            }
        }
        h.feed("b;");
        for (Eigen::Index i = 0; i < layer.bias.size(); ++i) {
            h.feed_double(layer.bias[i]);
        }
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016" PRIx64, h.value());
    return std::string(out, 16);
}

}  // namespace gramian_lens
