#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

#include "gramian_lens/activations.hpp"

namespace gramian_lens {

struct LayerSpec {
    Eigen::MatrixXd weights;  // rows = layer width, cols = previous width
    Eigen::VectorXd bias;     // length = layer width
    ActivationKind activation = ActivationKind::identity;
};

/**
 * Declarative feedforward model: layers[0..L-1] map an n_x-vector to an
 * n_y-vector; the first L-1 layers are the hidden stack.
 *
 * Immutable after load/validate by convention; safe to share across threads.
 */
struct NetworkSpec {
    int n_x = 0;
    std::vector<LayerSpec> layers;

    int layer_count() const { return static_cast<int>(layers.size()); }
    int output_width() const;
    int hidden_width() const;               // n_h = sum of hidden widths
    std::vector<int> widths() const;        // [n_x, n_1, ..., n_L]
    std::vector<int> hidden_widths() const; // [n_1, ..., n_{L-1}]

    // Checks every shape invariant and finiteness; throws ShapeError naming
    // the offending layer.
    void validate() const;
};

// Everything recorded by one forward pass.
struct ForwardTrace {
    Eigen::VectorXd x_star;
    std::vector<Eigen::VectorXd> z_star;  // pre-activations, layers 1..L
    std::vector<Eigen::VectorXd> h_star;  // hidden activations, layers 1..L-1
    Eigen::VectorXd y_star;
    Eigen::VectorXd h_stacked;            // col(h1*, ..., h_{L-1}*), size n_h
};

// Parses and validates a model document (see README for the format).
// Throws ParseError / ShapeError.
NetworkSpec load_network(const std::string& text);
NetworkSpec load_network_file(const std::filesystem::path& path);

// Forward pass with full intermediate recording. Pure and deterministic.
ForwardTrace forward(const NetworkSpec& net, const Eigen::VectorXd& x);

// Stable content hash of a validated model (activation aliases normalized),
// hex-encoded. Used to tag reports.
std::string network_hash(const NetworkSpec& net);

}  // namespace gramian_lens
