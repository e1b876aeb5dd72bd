#include "gramian_lens/gramian.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gramian_lens/errors.hpp"

namespace gramian_lens {

Eigen::MatrixXd controllability_gramian(const Eigen::MatrixXd& B) {
    const Eigen::MatrixXd X = B * B.transpose();
    return 0.5 * (X + X.transpose());
}

Eigen::MatrixXd observability_gramian(const Eigen::MatrixXd& C) {
    const Eigen::MatrixXd X = C.transpose() * C;
    return 0.5 * (X + X.transpose());
}

namespace {

// Largest-magnitude entry positive. Exact zero vectors are left alone.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index k = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best) {
            best = a;
            k = i;
        }
    }
    if (v.size() > 0 && v[k] < 0.0) {
        v = -v;
    }
}

// Within a group of exactly equal sigmas, order modes by the first differing
// component, descending.
void order_ties(Eigen::VectorXd& sigma, Eigen::MatrixXd& modes) {
    const Eigen::Index r = sigma.size();
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(r));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (sigma[a] != sigma[b]) {
            return sigma[a] > sigma[b];
        }
        for (Eigen::Index i = 0; i < modes.rows(); ++i) {
            if (modes(i, a) != modes(i, b)) {
                return modes(i, a) > modes(i, b);
            }
        }
        return false;
    });
    bool identity = true;
    for (Eigen::Index i = 0; i < r; ++i) {
        identity = identity && perm[static_cast<std::size_t>(i)] == i;
    }
    if (identity) {
        return;
    }
    Eigen::VectorXd s2(r);
    Eigen::MatrixXd m2(modes.rows(), r);
    for (Eigen::Index i = 0; i < r; ++i) {
        s2[i] = sigma[perm[static_cast<std::size_t>(i)]];
        m2.col(i) = modes.col(perm[static_cast<std::size_t>(i)]);
    }
    sigma = std::move(s2);
    modes = std::move(m2);
}

}  // namespace

ModeAnalysis hankel_modes(const Eigen::MatrixXd& B, const Eigen::MatrixXd& C, double rank_tol) {
    if (C.cols() != B.rows()) {
        throw ShapeError("C has " + std::to_string(C.cols()) + " columns, B has " +
                         std::to_string(B.rows()) + " rows");
    }
    if (!B.allFinite() || !C.allFinite()) {
        throw NumericError("non-finite entries in B or C");
    }

    ModeAnalysis out;
    out.modes.resize(B.rows(), 0);
    out.hankel_values.resize(0);
    if (B.rows() == 0 || B.cols() == 0 || C.rows() == 0) {
        return out;
    }

    const Eigen::MatrixXd H = C * B;  // n_y x n_x
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (!sv.allFinite()) {
        throw NumericError("singular value decomposition produced non-finite values");
    }
    if (sv.size() == 0 || sv[0] <= kSigmaFloor) {
        return out;  // H is numerically zero: empty mode set
    }

    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > rank_tol * sv[0]) {
        ++r;
    }

    out.rank = r;
    out.hankel_values = sv.head(r);
    out.modes.resize(B.rows(), r);
    for (Eigen::Index i = 0; i < r; ++i) {
        // v = B w / |B w| is an exact eigenvector of M = W_C W_O here:
        // M (B w) = B (H^T H) w = sigma^2 (B w).
        Eigen::VectorXd v = B * svd.matrixV().col(i);
        const double norm = v.norm();
        if (!(norm > 0.0)) {
            throw NumericError("mode reconstruction collapsed for a retained singular value");
        }
        v /= norm;
        fix_sign(v);
        out.modes.col(i) = v;
    }
    order_ties(out.hankel_values, out.modes);
    return out;
}

Eigen::VectorXd neuron_importance(const ModeAnalysis& analysis, double alpha) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("importance exponent alpha must be >= 1");
    }
    Eigen::VectorXd imp = Eigen::VectorXd::Zero(analysis.modes.rows());
    for (Eigen::Index i = 0; i < analysis.rank; ++i) {
        imp += std::pow(analysis.hankel_values[i], alpha) *
               analysis.modes.col(i).array().square().matrix();
    }
    return imp;
}

double linearized_ablation(const NetworkSpec& net, const ForwardTrace& trace,
                           Eigen::Index neuron) {
    const int n_h = net.hidden_width();
    if (neuron < 0 || neuron >= n_h) {
        throw std::out_of_range("neuron index " + std::to_string(neuron) +
                                " outside stacked state of size " + std::to_string(n_h));
    }

    std::vector<Eigen::VectorXd> D = activation_derivative_matrices(net, trace);
    const auto base = layer_jacobians(net, D);
    const Eigen::MatrixXd H =
        hidden_output_jacobian(base.C_local, net.hidden_widths()) * input_state_jacobian(base.J).B;

    // Locate the stacked index and freeze that neuron at its operating value.
    Eigen::Index remaining = neuron;
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l) {
        if (remaining < D[l].size()) {
            D[l][remaining] = 0.0;
            break;
        }
        remaining -= D[l].size();
    }

    const auto ablated = layer_jacobians(net, D);
    const Eigen::MatrixXd H_ablated =
        hidden_output_jacobian(ablated.C_local, net.hidden_widths()) *
        input_state_jacobian(ablated.J).B;
    return (H - H_ablated).norm();
}

}  // namespace gramian_lens
