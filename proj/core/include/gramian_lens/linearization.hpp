#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gramian_lens/network.hpp"

namespace gramian_lens {

/**
 * Local linear model of the network around one forward trace:
 *
 *     dh = B dx,   dy = C dh
 *
 * with h the stacked hidden state. B is assembled block-wise from ordered
 * layer-Jacobian products; C is zero except on the last hidden block.
 */
struct LocalLinearization {
    std::vector<Eigen::VectorXd> D;         // diagonal of sigma'_l(z_l*), l = 1..L
    std::vector<Eigen::MatrixXd> J;         // D_l W_l for hidden layers l = 1..L-1
    std::vector<Eigen::MatrixXd> B_blocks;  // J_l J_{l-1} ... J_1, each n_l x n_x
    Eigen::MatrixXd B;                      // stacked blocks, n_h x n_x
    Eigen::MatrixXd C_local;                // D_L W_L, n_y x n_{L-1}
    Eigen::MatrixXd C;                      // [0 ... 0 C_local], n_y x n_h
};

// Diagonals of the activation derivative matrices D_l, l = 1..L.
// Throws ShapeError if the trace does not match the network.
std::vector<Eigen::VectorXd> activation_derivative_matrices(const NetworkSpec& net,
                                                            const ForwardTrace& trace);

struct LayerJacobians {
    std::vector<Eigen::MatrixXd> J;  // hidden layers only
    Eigen::MatrixXd C_local;
};

// J_l = D_l W_l for the hidden layers and C_local = D_L W_L.
LayerJacobians layer_jacobians(const NetworkSpec& net, const std::vector<Eigen::VectorXd>& D);

struct InputStateJacobian {
    std::vector<Eigen::MatrixXd> blocks;
    Eigen::MatrixXd B;
};

// Ordered products B_l = J_l * B_{l-1} (left-multiplied, never re-associated)
// stacked top to bottom. Throws ShapeError on an empty or incompatible chain.
InputStateJacobian input_state_jacobian(const std::vector<Eigen::MatrixXd>& J);

// Pads C_local with zero columns for every hidden layer before the last.
Eigen::MatrixXd hidden_output_jacobian(const Eigen::MatrixXd& C_local,
                                       const std::vector<int>& hidden_widths);

// Composition of the four steps above.
LocalLinearization linearize(const NetworkSpec& net, const ForwardTrace& trace);

struct FiniteDifferenceJacobians {
    Eigen::MatrixXd B_fd;  // d h_stacked / d x, n_h x n_x
    Eigen::MatrixXd H_fd;  // d y / d x, n_y x n_x
};

// Central-difference Jacobians of the stacked hidden state and the output.
// Validation oracle for the analytic path; step must be > 0.
FiniteDifferenceJacobians finite_difference_jacobians(const NetworkSpec& net,
                                                      const Eigen::VectorXd& x,
                                                      double step = 1e-5);

}  // namespace gramian_lens
