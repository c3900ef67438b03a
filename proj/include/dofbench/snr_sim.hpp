#pragma once

#include "dofbench/alignment.hpp"
#include "dofbench/network.hpp"

#include <Eigen/Dense>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dofbench {

struct RateRow {
  double rho = 0.0;
  std::vector<double> user_rates;  // bits per channel use
  double sum = 0.0;

  double snr_db() const { return 10.0 * std::log10(rho); }
};

struct RateReport {
  std::vector<RateRow> rows;
  double slope = 0.0;
  std::vector<std::size_t> window;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace detail {

inline Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
  return out;
}

/// log2 det(I + A A^T) via Cholesky; I + A A^T is positive definite.
inline double log2_det_identity_plus_gram(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (a.cols() == 0) return 0.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m.selfadjointView<Eigen::Lower>().rankUpdate(a);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw std::runtime_error("covariance is not positive definite");
  const Eigen::MatrixXd& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) acc += std::log2(l(i, i));
  return 2.0 * acc;
}

}  // namespace detail

/// Per-user rates (bits per channel use) with Gaussian inputs and a joint
/// linear receiver at each clustered decoder:
///   R_k = (1/T) log2 det(I + P D^T (I + P J J^T)^{-1} D)
/// evaluated as log2 det(I + [D|J][D|J]^T) - log2 det(I + J J^T), where each
/// beamformer column is unit-normalized and carries power rho / d_j.
inline std::vector<double> sum_rate(const ChannelRealization& channel, const NetworkTopology& topology,
                                    const LinearScheme& scheme, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("SNR must be positive");
  auto column_gain = [&](int tx, int stream) {
    const auto& b = scheme.beamformer(tx);
    double norm2 = 0.0;
    for (std::size_t r = 0; r < b.rows(); ++r) {
      const double v = b(r, static_cast<std::size_t>(stream - 1)).get_d();
      norm2 += v * v;
    }
    return std::sqrt(rho / scheme.streams(tx) / norm2);
  };

  std::vector<double> rates;
  for (int k = 1; k <= topology.users(); ++k) {
    const auto view = decoder_view(channel, topology, scheme, k);
    Eigen::MatrixXd desired = detail::to_eigen(view.desired);
    for (Eigen::Index c = 0; c < desired.cols(); ++c) desired.col(c) *= column_gain(k, static_cast<int>(c) + 1);
    Eigen::MatrixXd interference = detail::to_eigen(view.interference);
    for (Eigen::Index c = 0; c < interference.cols(); ++c) {
      const auto& label = view.interference_columns[static_cast<std::size_t>(c)];
      interference.col(c) *= column_gain(label.transmitter, label.stream);
    }
    Eigen::MatrixXd joint(desired.rows(), desired.cols() + interference.cols());
    joint << desired, interference;
    const double bits = detail::log2_det_identity_plus_gram(joint) - detail::log2_det_identity_plus_gram(interference);
    rates.push_back(std::max(0.0, bits) / channel.extension());
  }
  return rates;
}

/// Least-squares slope of sum rate against log2(rho) over the rows with
/// rho >= min_rho.
inline double estimate_dof(std::span<const RateRow> rows, double min_rho = 1e4,
                           std::vector<std::size_t>* window = nullptr) {
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].rho >= min_rho) used.push_back(i);
  double mean_x = 0.0, mean_y = 0.0;
  for (auto i : used) {
    mean_x += std::log2(rows[i].rho);
    mean_y += rows[i].sum;
  }
  if (used.size() < 2) throw std::invalid_argument("slope needs at least two rows in the fit window");
  mean_x /= static_cast<double>(used.size());
  mean_y /= static_cast<double>(used.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto i : used) {
    const double dx = std::log2(rows[i].rho) - mean_x;
    sxx += dx * dx;
    sxy += dx * (rows[i].sum - mean_y);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope needs rows with distinct SNR");
  if (window) *window = std::move(used);
  return sxy / sxx;
}

inline RateReport sweep(const ChannelRealization& channel, const NetworkTopology& topology, const LinearScheme& scheme,
                        std::vector<double> rhos, double min_rho = 1e4) {
  if (rhos.empty()) throw std::invalid_argument("empty SNR grid");
  std::sort(rhos.begin(), rhos.end());
  RateReport report;
  for (double rho : rhos) {
    RateRow row;
    row.rho = rho;
    row.user_rates = sum_rate(channel, topology, scheme, rho);
    for (double r : row.user_rates) row.sum += r;
    report.rows.push_back(std::move(row));
  }
  report.slope = estimate_dof(report.rows, min_rho, &report.window);
  return report;
}

/// header `snr_db,R1,...,RK,sum`, one row per grid point.
inline std::string to_csv(const RateReport& report) {
  std::ostringstream out;
  out << "snr_db";
  const std::size_t users = report.rows.empty() ? 0 : report.rows.front().user_rates.size();
  for (std::size_t k = 1; k <= users; ++k) out << ",R" << k;
  out << ",sum\n";
  out << std::setprecision(12);
  for (const auto& row : report.rows) {
    out << row.snr_db();
    for (double r : row.user_rates) out << ',' << r;
    out << ',' << row.sum << '\n';
  }
  return out.str();
}

/// {slope, window_db: [lowest, highest]}
inline nlohmann::json summary_json(const RateReport& report) {
  nlohmann::json window = nlohmann::json::array();
  if (!report.window.empty()) {
    window.push_back(report.rows[report.window.front()].snr_db());
    window.push_back(report.rows[report.window.back()].snr_db());
  }
  return {{"slope", report.slope}, {"window_db", window}};
}

}  // namespace dofbench
