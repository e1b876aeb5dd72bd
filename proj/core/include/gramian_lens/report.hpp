#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gramian_lens/gramian.hpp"
#include "gramian_lens/network.hpp"

namespace gramian_lens {

// Full Gramians are embedded in reports automatically up to this state size.
inline constexpr int kFullGramianLimit = 64;

struct AnalysisOptions {
    double alpha = kDefaultAlpha;
    double rank_tol = kDefaultRankTol;
    bool include_full_gramians = false;  // force; small states include them anyway
};

// Serializable result of analyzing one operating point.
struct OperatingPointReport {
    std::string network_hash;
    Eigen::VectorXd point;             // x*
    Eigen::VectorXd output;            // y*
    Eigen::VectorXd diag_wc;
    Eigen::VectorXd diag_wo;
    Eigen::VectorXd hankel_values;     // descending, retained
    Eigen::MatrixXd modes;             // n_h x r
    Eigen::VectorXd importance;
    Eigen::VectorXd mode_coordinates;  // v_i . h*, one per retained mode
    double alpha = kDefaultAlpha;
    double rank_tol = kDefaultRankTol;
    std::vector<std::string> activations;  // normalized tags, one per layer
    std::optional<Eigen::MatrixXd> wc;
    std::optional<Eigen::MatrixXd> wo;

    Eigen::Index state_size() const { return diag_wc.size(); }  // n_h
    Eigen::Index rank() const { return hankel_values.size(); }
    // 1-based index of the largest importance entry (smallest index wins
    // ties); 0 for an empty state.
    int importance_argmax() const;
};

// Runs forward -> derivative diagonals -> layer Jacobians -> stacked B, C ->
// Gramians -> modes -> importance and assembles the report.
OperatingPointReport analyze_point(const NetworkSpec& net, const Eigen::VectorXd& x,
                                   const AnalysisOptions& options = {});

struct SweepReport {
    std::string network_hash;
    double alpha = kDefaultAlpha;
    double rank_tol = kDefaultRankTol;
    std::vector<OperatingPointReport> points;   // input order
    std::vector<double> sigma1_series;          // 0 where no mode is retained
    std::vector<int> imp_argmax_series;         // 1-based
};

// One report per point, in input order. Points may be analyzed concurrently
// (max_threads caps the workers, 0 = auto); assembly order and output are
// independent of the thread count. Throws std::invalid_argument on an empty
// point set.
SweepReport sweep(const NetworkSpec& net, const std::vector<Eigen::VectorXd>& points,
                  const AnalysisOptions& options = {}, unsigned max_threads = 0);

// Operating-point comparison (saturation diagnostics). Ratios follow the
// convention 0/0 -> 1 and x/0 -> +infinity (serialized as the string "inf").
struct ComparisonReport {
    Eigen::VectorXd point_a;
    Eigen::VectorXd point_b;
    std::string network_hash_a;
    std::string network_hash_b;
    Eigen::VectorXd diag_wc_ratio;  // diag(W_C^b) / diag(W_C^a)
    Eigen::VectorXd diag_wo_ratio;
    double sigma_ratio = 1.0;       // sigma1_b / sigma1_a
    double mode_overlap = 1.0;      // |v1_a . v1_b|
    int importance_rank_shift = 0;  // Kendall tau distance between Imp orders
};

// Requires both reports to share the same state size; throws ShapeError
// otherwise.
ComparisonReport compare_points(const OperatingPointReport& a, const OperatingPointReport& b);

// ---- serialization ----
// Machine output carries 17 significant digits and a fixed field order, so
// identical analyses serialize byte-identically.

std::string to_json(const OperatingPointReport& report);
std::string to_json(const SweepReport& report);
std::string to_json(const ComparisonReport& report);

// Plot-ready summary: x0..x{n-1}, sigma1, imp_argmax per point.
std::string to_csv(const SweepReport& report);

// Parses a serialized OperatingPointReport. Throws ParseError.
OperatingPointReport parse_report(const std::string& json_text);
OperatingPointReport parse_report_file(const std::filesystem::path& path);

// Write-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace gramian_lens
