#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sharptf/error.hpp"
#include "sharptf/tfr.hpp"

namespace sharptf {

namespace detail {

template <typename DA, typename DB>
void check_same_shape(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
}

}  // namespace detail

/// Pearson correlation of the flattened, mean-subtracted matrices.
template <typename DA, typename DB>
double pearson(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::check_same_shape(a, b);
  const Eigen::ArrayXXd ca = a.template cast<double>().array() - a.template cast<double>().mean();
  const Eigen::ArrayXXd cb = b.template cast<double>().array() - b.template cast<double>().mean();
  const double na = std::sqrt((ca * ca).sum());
  const double nb = std::sqrt((cb * cb).sum());
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw ValidationError("pearson correlation undefined for a zero-variance matrix");
  }
  const double pc = (ca * cb).sum() / (na * nb);
  return std::clamp(pc, -1.0, 1.0);
}

/// Sum of absolute elementwise differences.
template <typename DA, typename DB>
double l1_diff(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::check_same_shape(a, b);
  return (a.template cast<double>() - b.template cast<double>()).cwiseAbs().sum();
}

/// Order-alpha Renyi entropy (bits) of the matrix normalized to unit sum.
/// Negative entries are raised to the power as-is.
template <typename Derived>
double renyi(const Eigen::MatrixBase<Derived>& p, double alpha) {
  if (alpha == 1.0 || alpha <= 0.0) throw ConfigError("renyi order must be positive and != 1");
  const Eigen::ArrayXXd v = p.template cast<double>().array();
  const double total = v.sum();
  if (!(total > 0.0)) throw ValidationError("renyi entropy needs a positive total sum");
  const Eigen::ArrayXXd q = v / total;
  double acc = 0.0;
  if (alpha == 3.0) {
    acc = (q * q * q).sum();
  } else {
    acc = q.unaryExpr([alpha](double u) {
             return u < 0.0 ? -std::pow(-u, alpha) : std::pow(u, alpha);
           }).sum();
  }
  if (!(acc > 0.0)) throw ValidationError("renyi entropy undefined: power sum is not positive");
  return std::log2(acc) / (1.0 - alpha);
}

template <typename Derived>
double renyi3(const Eigen::MatrixBase<Derived>& p) {
  return renyi(p, 3.0);
}

struct MetricRow {
  std::string signal;
  std::string method;
  double pc = 0.0;
  double l1 = 0.0;
  double renyi3 = 0.0;
};

/// Per-(signal, method) rows sorted by signal id then method, and one mean
/// row per method labelled "Avg(n)".
struct MetricsReport {
  std::vector<MetricRow> rows;
  std::vector<MetricRow> averages;
};

/// One method's distribution for one signal.
struct Prediction {
  std::string signal;
  std::string method;
  Tfr values;
};

/// pc and Renyi-3 on the values as given; l1 between the two normalized
/// images with pixels scaled to [0, 1].
MetricRow score(const Tfr& prediction, const Tfr& ideal);

/// Scores every prediction against the ideal of its signal. Throws when a
/// signal has no ideal (all missing ids listed) or a pair repeats.
MetricsReport build_report(const std::vector<Prediction>& predictions,
                           const std::map<std::string, Tfr>& ideals, std::size_t threads = 1);

std::string average_label(std::size_t population);

/// CSV with header signal,method,pc,l1,renyi3 followed by the Avg rows.
std::string to_csv(const MetricsReport& report);

/// Aligned text table: one line per signal, a (pc, l1, R) column group per
/// method, and a final Avg(n) line.
std::string to_table(const MetricsReport& report);

}  // namespace sharptf
