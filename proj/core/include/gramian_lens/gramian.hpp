#pragma once

#include <Eigen/Dense>

#include "gramian_lens/linearization.hpp"
#include "gramian_lens/network.hpp"

namespace gramian_lens {

inline constexpr double kDefaultAlpha = 1.0;
inline constexpr double kDefaultRankTol = 1e-10;
// Absolute floor under which the leading Hankel value counts as zero.
inline constexpr double kSigmaFloor = 1e-14;

// W_C = B B^T, symmetrized as (X + X^T)/2. Diagonal entries are the squared
// row norms of B: per-neuron input sensitivity.
Eigen::MatrixXd controllability_gramian(const Eigen::MatrixXd& B);

// W_O = C^T C, symmetrized. Diagonal entries are the squared column norms of
// C: per-neuron output influence.
Eigen::MatrixXd observability_gramian(const Eigen::MatrixXd& C);

/**
 * Hankel values and internal modes of M = W_C W_O.
 *
 * sigma_i and v_i satisfy M v_i = sigma_i^2 v_i. Columns of `modes` are unit
 * vectors with the largest-magnitude entry positive; exact sigma ties are
 * ordered by first differing mode component, descending.
 */
struct ModeAnalysis {
    Eigen::VectorXd hankel_values;  // descending, retained values only
    Eigen::MatrixXd modes;          // n_h x r, column i is v_i
    Eigen::Index rank = 0;          // r
};

// Computed through the SVD of H = C*B: sigma_i are its singular values and
// v_i = B w_i / |B w_i| for the right singular vectors w_i, which is exact
// for this model (M B w = B H^T H w). sigma_i is retained iff
// sigma_i > rank_tol * sigma_1 and sigma_1 exceeds the absolute floor.
// Throws NumericError on non-finite inputs.
ModeAnalysis hankel_modes(const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                          double rank_tol = kDefaultRankTol);

// Imp(j) = sum_i sigma_i^alpha * v_{i,j}^2. Throws std::invalid_argument for
// alpha < 1.
Eigen::VectorXd neuron_importance(const ModeAnalysis& analysis, double alpha = kDefaultAlpha);

// Rebuilds the linearization with one hidden neuron's activation derivative
// forced to zero and returns ||H - H_ablated||_F for H = C*B: the neuron's
// local contribution to the end-to-end Jacobian. `neuron` is a 0-based
// stacked hidden index; throws std::out_of_range otherwise.
double linearized_ablation(const NetworkSpec& net, const ForwardTrace& trace,
                           Eigen::Index neuron);

}  // namespace gramian_lens
