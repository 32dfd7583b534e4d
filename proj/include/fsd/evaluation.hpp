#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace fsd {

struct CostParams {
  double c_miss = 1.0;    ///< cost of missing a new story
  double c_fa = 0.1;      ///< cost of a false alarm
  double p_target = 0.02; ///< prior probability of a new story
};

/// One scored document with its ground truth.
struct ScoredTruth {
  double score;  ///< novelty score; predict new iff score >= threshold
  bool is_new;
};

/// One operating point of the detection-error tradeoff.
struct DetPoint {
  double threshold;
  double p_miss;
  double p_fa;
  double cost_norm;
  bool is_min_cost = false;
};

/// (p_miss, p_fa) at one threshold. Throws DegenerateTruth when either
/// truth class is empty.
std::pair<double, double> confusion(std::span<const ScoredTruth> scored,
                                    double threshold);

/// Normalized detection cost:
/// (c_miss*p_miss*p_target + c_fa*p_fa*(1-p_target))
///   / min(c_miss*p_target, c_fa*(1-p_target)).
double cost_norm(double p_miss, double p_fa, const CostParams& params);

/// One DetPoint per distinct score plus -inf/+inf sentinels, ascending
/// by threshold, with the first minimum-cost point flagged.
std::vector<DetPoint> det_curve(std::span<const ScoredTruth> scored,
                                const CostParams& params);
/// Serial reference for det_curve.
std::vector<DetPoint> det_curve_serial(std::span<const ScoredTruth> scored,
                                       const CostParams& params);

const DetPoint& min_cost_point(std::span<const DetPoint> curve);

/// Inverse standard-normal CDF; input clamped to [1e-6, 1 - 1e-6],
/// absolute error well under 1e-6.
double probit(double p);

/// CSV: threshold,p_miss,p_fa,probit_miss,probit_fa,cost_norm,is_min_cost
/// one row per DetPoint, ascending threshold.
void write_det_csv(std::ostream& out, std::span<const DetPoint> curve);
void write_det_csv(const std::filesystem::path& path,
                   std::span<const DetPoint> curve);

}  // namespace fsd
