#include "fsd/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "fsd/errors.hpp"
#include "fsd/parallel.hpp"

namespace fsd {

namespace {

struct ClassCounts {
  std::size_t n_new = 0;
  std::size_t n_old = 0;
};

ClassCounts count_classes(std::span<const ScoredTruth> scored) {
  ClassCounts c;
  for (const auto& s : scored) (s.is_new ? c.n_new : c.n_old)++;
  if (c.n_new == 0 || c.n_old == 0)
    throw DegenerateTruth("both truth classes must be non-empty");
  return c;
}

// Sorted distinct scores plus the -inf/+inf sentinel thresholds, and
// for each threshold the counts needed for (p_miss, p_fa):
//   miss  = new docs with score < t
//   alarm = old docs with score >= t
struct Sweep {
  std::vector<double> thresholds;
  std::vector<std::size_t> new_below;  // per threshold
  std::vector<std::size_t> old_at_or_above;
};

Sweep build_sweep(std::span<const ScoredTruth> scored) {
  std::vector<ScoredTruth> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredTruth& a, const ScoredTruth& b) {
              return a.score < b.score;
            });
  const std::size_t n = sorted.size();
  std::size_t total_old = 0;
  for (const auto& s : sorted) total_old += !s.is_new;

  Sweep sweep;
  const double inf = std::numeric_limits<double>::infinity();
  sweep.thresholds.push_back(-inf);
  sweep.new_below.push_back(0);
  sweep.old_at_or_above.push_back(total_old);

  std::size_t new_below = 0, old_below = 0, i = 0;
  while (i < n) {
    const double t = sorted[i].score;
    sweep.thresholds.push_back(t);
    sweep.new_below.push_back(new_below);
    sweep.old_at_or_above.push_back(total_old - old_below);
    while (i < n && sorted[i].score == t) {
      (sorted[i].is_new ? new_below : old_below)++;
      i++;
    }
  }
  sweep.thresholds.push_back(inf);
  sweep.new_below.push_back(new_below);
  sweep.old_at_or_above.push_back(total_old - old_below);
  return sweep;
}

void flag_min_cost(std::vector<DetPoint>& points) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].cost_norm < points[best].cost_norm) best = i;
  points[best].is_min_cost = true;
}

std::vector<DetPoint> curve_from_sweep(const Sweep& sweep, ClassCounts counts,
                                       const CostParams& params,
                                       bool parallel) {
  const auto n = static_cast<std::int64_t>(sweep.thresholds.size());
  std::vector<DetPoint> points(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (parallel && n >= 1024)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    DetPoint& p = points[idx];
    p.threshold = sweep.thresholds[idx];
    p.p_miss = static_cast<double>(sweep.new_below[idx]) /
               static_cast<double>(counts.n_new);
    p.p_fa = static_cast<double>(sweep.old_at_or_above[idx]) /
             static_cast<double>(counts.n_old);
    p.cost_norm = cost_norm(p.p_miss, p.p_fa, params);
  }
  flag_min_cost(points);
  return points;
}

void append_double(std::string& row, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  row.append(buf, end);
}

}  // namespace

std::pair<double, double> confusion(std::span<const ScoredTruth> scored,
                                    double threshold) {
  const ClassCounts counts = count_classes(scored);
  std::size_t miss = 0, alarm = 0;
  for (const auto& s : scored) {
    const bool predicted_new = s.score >= threshold;
    if (s.is_new && !predicted_new) miss++;
    if (!s.is_new && predicted_new) alarm++;
  }
  return {static_cast<double>(miss) / static_cast<double>(counts.n_new),
          static_cast<double>(alarm) / static_cast<double>(counts.n_old)};
}

double cost_norm(double p_miss, double p_fa, const CostParams& params) {
  const double p_nontarget = 1.0 - params.p_target;
  const double cost = params.c_miss * p_miss * params.p_target +
                      params.c_fa * p_fa * p_nontarget;
  return cost /
         std::min(params.c_miss * params.p_target, params.c_fa * p_nontarget);
}

std::vector<DetPoint> det_curve(std::span<const ScoredTruth> scored,
                                const CostParams& params) {
  const ClassCounts counts = count_classes(scored);
  return curve_from_sweep(build_sweep(scored), counts, params, true);
}

std::vector<DetPoint> det_curve_serial(std::span<const ScoredTruth> scored,
                                       const CostParams& params) {
  const ClassCounts counts = count_classes(scored);
  return curve_from_sweep(build_sweep(scored), counts, params, false);
}

const DetPoint& min_cost_point(std::span<const DetPoint> curve) {
  for (const auto& p : curve)
    if (p.is_min_cost) return p;
  throw std::logic_error("curve has no min-cost flag");
}

double probit(double p) {
  p = std::clamp(p, 1e-6, 1.0 - 1e-6);

  // Acklam's rational approximation of the inverse normal CDF
  // (|relative error| < 1.15e-9), then one Halley refinement.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = err * std::sqrt(2.0 * std::numbers::pi) *
                   std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

void write_det_csv(std::ostream& out, std::span<const DetPoint> curve) {
  out << "threshold,p_miss,p_fa,probit_miss,probit_fa,cost_norm,is_min_cost\n";
  std::string row;
  for (const auto& p : curve) {
    row.clear();
    append_double(row, p.threshold);
    row.push_back(',');
    append_double(row, p.p_miss);
    row.push_back(',');
    append_double(row, p.p_fa);
    row.push_back(',');
    append_double(row, probit(p.p_miss));
    row.push_back(',');
    append_double(row, probit(p.p_fa));
    row.push_back(',');
    append_double(row, p.cost_norm);
    row.push_back(',');
    row.append(p.is_min_cost ? "true" : "false");
    row.push_back('\n');
    out << row;
  }
}

void write_det_csv(const std::filesystem::path& path,
                   std::span<const DetPoint> curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_det_csv(out, curve);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace fsd
