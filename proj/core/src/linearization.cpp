#include "gramian_lens/linearization.hpp"

#include <stdexcept>
#include <string>

#include "gramian_lens/errors.hpp"

namespace gramian_lens {

std::vector<Eigen::VectorXd> activation_derivative_matrices(const NetworkSpec& net,
                                                            const ForwardTrace& trace) {
    const std::size_t L = net.layers.size();
    if (trace.z_star.size() != L) {
        throw ShapeError("trace has " + std::to_string(trace.z_star.size()) +
                         " pre-activation vectors, network has " + std::to_string(L) +
                         " layers");
    }
    std::vector<Eigen::VectorXd> D;
    D.reserve(L);
    for (std::size_t l = 0; l < L; ++l) {
        const Eigen::VectorXd& z = trace.z_star[l];
        if (z.size() != net.layers[l].weights.rows()) {
            throw ShapeError("trace layer " + std::to_string(l + 1) + " has width " +
                             std::to_string(z.size()) + ", network expects " +
                             std::to_string(net.layers[l].weights.rows()));
        }
        Eigen::VectorXd d(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            d[i] = act_deriv(net.layers[l].activation, z[i]);
        }
        D.push_back(std::move(d));
    }
    return D;
}

LayerJacobians layer_jacobians(const NetworkSpec& net, const std::vector<Eigen::VectorXd>& D) {
    const std::size_t L = net.layers.size();
    if (D.size() != L) {
        throw ShapeError("expected " + std::to_string(L) + " derivative diagonals, got " +
                         std::to_string(D.size()));
    }
    for (std::size_t l = 0; l < L; ++l) {
        if (D[l].size() != net.layers[l].weights.rows()) {
            throw ShapeError("derivative diagonal " + std::to_string(l + 1) +
                             " does not match layer width");
        }
    }
    LayerJacobians out;
    out.J.reserve(L > 0 ? L - 1 : 0);
    for (std::size_t l = 0; l + 1 < L; ++l) {
        out.J.push_back(D[l].asDiagonal() * net.layers[l].weights);
    }
    out.C_local = D[L - 1].asDiagonal() * net.layers[L - 1].weights;
    return out;
}

InputStateJacobian input_state_jacobian(const std::vector<Eigen::MatrixXd>& J) {
    if (J.empty()) {
        throw ShapeError("empty Jacobian chain");
    }
    InputStateJacobian out;
    out.blocks.reserve(J.size());
    Eigen::Index rows = 0;
    for (std::size_t l = 0; l < J.size(); ++l) {
        if (l == 0) {
            out.blocks.push_back(J[0]);
        } else {
            if (J[l].cols() != out.blocks.back().rows()) {
                throw ShapeError("Jacobian chain mismatch at layer " + std::to_string(l + 1));
            }
            // Left-multiply the accumulated block; the product order is the
            // chain rule's and is never re-associated.
            out.blocks.push_back(J[l] * out.blocks.back());
        }
        rows += out.blocks.back().rows();
    }
    const Eigen::Index n_x = J[0].cols();
    out.B.resize(rows, n_x);
    Eigen::Index offset = 0;
    for (const auto& block : out.blocks) {
        out.B.middleRows(offset, block.rows()) = block;
        offset += block.rows();
    }
    return out;
}

Eigen::MatrixXd hidden_output_jacobian(const Eigen::MatrixXd& C_local,
                                       const std::vector<int>& hidden_widths) {
    if (hidden_widths.empty() || hidden_widths.back() != C_local.cols()) {
        throw ShapeError("last hidden width does not match C_local columns");
    }
    Eigen::Index n_h = 0;
    for (int w : hidden_widths) n_h += w;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(C_local.rows(), n_h);
    C.rightCols(C_local.cols()) = C_local;
    return C;
}

LocalLinearization linearize(const NetworkSpec& net, const ForwardTrace& trace) {
    LocalLinearization lin;
    lin.D = activation_derivative_matrices(net, trace);
    auto lj = layer_jacobians(net, lin.D);
    lin.J = std::move(lj.J);
    lin.C_local = std::move(lj.C_local);
    if (lin.J.empty()) {
        // No hidden layers: the state is empty and the linear model is
        // degenerate (B and C have zero size).
        lin.B.resize(0, net.n_x);
        lin.C.resize(net.output_width(), 0);
        return lin;
    }
    auto isj = input_state_jacobian(lin.J);
    lin.B_blocks = std::move(isj.blocks);
    lin.B = std::move(isj.B);
    lin.C = hidden_output_jacobian(lin.C_local, net.hidden_widths());
    return lin;
}

FiniteDifferenceJacobians finite_difference_jacobians(const NetworkSpec& net,
                                                      const Eigen::VectorXd& x, double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    const Eigen::Index n_x = x.size();
    FiniteDifferenceJacobians out;
    out.B_fd.resize(net.hidden_width(), n_x);
    out.H_fd.resize(net.output_width(), n_x);
    for (Eigen::Index k = 0; k < n_x; ++k) {
        Eigen::VectorXd xp = x;
        Eigen::VectorXd xm = x;
        xp[k] += step;
        xm[k] -= step;
        const ForwardTrace tp = forward(net, xp);
        const ForwardTrace tm = forward(net, xm);
        out.B_fd.col(k) = (tp.h_stacked - tm.h_stacked) / (2.0 * step);
        out.H_fd.col(k) = (tp.y_star - tm.y_star) / (2.0 * step);
    }
    return out;
}

}  // namespace gramian_lens
