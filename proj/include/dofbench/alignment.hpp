#pragma once

#include "dofbench/matrix.hpp"
#include "dofbench/network.hpp"

#include "json.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dofbench {

/// Per-user beamforming matrices B[k] (T x d_k) over a T-symbol extension.
class LinearScheme {
 public:
  LinearScheme(int extension, std::vector<RationalMatrix> beamformers)
      : extension_(extension), beamformers_(std::move(beamformers)) {
    if (extension_ < 1) throw std::invalid_argument("symbol extension length must be positive");
    for (std::size_t k = 0; k < beamformers_.size(); ++k) {
      const auto& b = beamformers_[k];
      if (b.rows() != static_cast<std::size_t>(extension_))
        throw std::invalid_argument("beamformer of user " + std::to_string(k + 1) + " does not have T rows");
      if (exact_rank(b) != b.cols())
        throw std::invalid_argument("beamformer of user " + std::to_string(k + 1) + " is column-rank deficient");
    }
  }

  int extension() const noexcept { return extension_; }
  int users() const noexcept { return static_cast<int>(beamformers_.size()); }
  /// d_k for 1-based user k.
  int streams(int user) const { return static_cast<int>(beamformer(user).cols()); }
  const RationalMatrix& beamformer(int user) const { return beamformers_.at(static_cast<std::size_t>(user - 1)); }

  int total_streams() const {
    int total = 0;
    for (const auto& b : beamformers_) total += static_cast<int>(b.cols());
    return total;
  }

 private:
  int extension_;
  std::vector<RationalMatrix> beamformers_;
};

/// Every user sends [w | Gw | G^2 w], w = ones(5), G = diag(1..5).
inline LinearScheme example_scheme(int users = 4) {
  constexpr int kExtension = 5;
  RationalMatrix b(kExtension, 3);
  for (int t = 0; t < kExtension; ++t) {
    const Rational node(t + 1);
    b(t, 0) = 1;
    b(t, 1) = node;
    b(t, 2) = node * node;
  }
  return LinearScheme(kExtension, std::vector<RationalMatrix>(static_cast<std::size_t>(users), b));
}

/// Zero streams for every user.
inline LinearScheme silent_scheme(int users, int extension) {
  return LinearScheme(extension, std::vector<RationalMatrix>(static_cast<std::size_t>(users),
                                                             RationalMatrix(static_cast<std::size_t>(extension), 0)));
}

struct StreamLabel {
  int transmitter = 0;
  int stream = 0;
  bool operator==(const StreamLabel&) const = default;
};

/// Desired and interference subspaces seen by one clustered decoder, with
/// the cluster's receiver outputs stacked in cluster order.
struct DecoderView {
  int decoder = 0;
  RationalMatrix desired;
  RationalMatrix interference;
  std::vector<StreamLabel> interference_columns;
};

inline DecoderView decoder_view(const ChannelRealization& channel, const NetworkTopology& topology,
                                const LinearScheme& scheme, int decoder) {
  if (scheme.extension() != channel.extension()) throw std::invalid_argument("scheme and channel differ in T");
  if (topology.users() != channel.topology().users() || scheme.users() != topology.users())
    throw std::invalid_argument("scheme, topology and channel differ in user count");
  const int users = topology.users();
  if (decoder < 1 || decoder > users) throw std::invalid_argument("decoder index out of range");

  const auto& receivers = topology.cluster(decoder);
  auto response = [&](int tx) {
    const auto& b = scheme.beamformer(tx);
    std::vector<RationalMatrix> blocks;
    for (int rx : receivers) blocks.push_back(channel.matrix(rx, tx) * b);
    return vstack(blocks, b.cols());
  };
  const std::size_t rows = receivers.size() * static_cast<std::size_t>(channel.extension());

  DecoderView view;
  view.decoder = decoder;
  view.desired = response(decoder);
  std::vector<RationalMatrix> blocks;
  for (int tx = 1; tx <= users; ++tx) {
    if (tx == decoder) continue;
    const bool heard = std::any_of(receivers.begin(), receivers.end(),
                                   [&](int rx) { return channel.topology().has_link(rx, tx); });
    if (!heard) continue;
    blocks.push_back(response(tx));
    for (int s = 1; s <= scheme.streams(tx); ++s) view.interference_columns.push_back({tx, s});
  }
  view.interference = hstack(blocks, rows);
  return view;
}

struct DecoderReport {
  int decoder = 0;
  int streams = 0;
  std::size_t interference_rank = 0;
  std::size_t joint_rank = 0;
  bool decodable = false;
  /// Determinant of [desired | interference] when that matrix is square.
  std::optional<Rational> joint_determinant;
};

struct AlignmentReport {
  std::vector<DecoderReport> decoders;
  /// Sum of streams over T when every decoder can zero-force its interference.
  std::optional<Rational> dof;

  std::vector<int> failing_decoders() const {
    std::vector<int> out;
    for (const auto& d : decoders)
      if (!d.decodable) out.push_back(d.decoder);
    return out;
  }
  bool all_decodable() const { return dof.has_value(); }
};

/// Zero-forcing decodability of one view: the desired columns add exactly
/// d_k dimensions on top of the interference span.
inline DecoderReport analyze_view(const DecoderView& view) {
  DecoderReport report;
  report.decoder = view.decoder;
  report.streams = static_cast<int>(view.desired.cols());
  report.interference_rank = exact_rank(view.interference);
  const auto joint = hstack<Rational>({view.desired, view.interference}, view.desired.rows());
  report.joint_rank = exact_rank(joint);
  report.decodable = report.joint_rank == report.interference_rank + view.desired.cols();
  if (joint.rows() == joint.cols()) report.joint_determinant = exact_determinant(joint);
  return report;
}

inline AlignmentReport alignment_report(const ChannelRealization& channel, const NetworkTopology& topology,
                                        const LinearScheme& scheme) {
  AlignmentReport report;
  for (int k = 1; k <= topology.users(); ++k) report.decoders.push_back(analyze_view(decoder_view(channel, topology, scheme, k)));
  if (report.failing_decoders().empty()) {
    Rational dof(scheme.total_streams(), scheme.extension());
    dof.canonicalize();
    report.dof = dof;
  }
  return report;
}

inline AlignmentReport alignment_report(const ChannelRealization& channel, const LinearScheme& scheme) {
  return alignment_report(channel, channel.topology(), scheme);
}

/// {per_decoder: [{k, interference_rank, joint_rank, decodable}], dof: "p/q"}
inline nlohmann::json to_json(const AlignmentReport& report) {
  nlohmann::json per_decoder = nlohmann::json::array();
  for (const auto& d : report.decoders) {
    nlohmann::json entry{{"k", d.decoder},
                         {"streams", d.streams},
                         {"interference_rank", d.interference_rank},
                         {"joint_rank", d.joint_rank},
                         {"decodable", d.decodable}};
    if (d.joint_determinant) entry["joint_determinant"] = to_string(*d.joint_determinant);
    per_decoder.push_back(std::move(entry));
  }
  nlohmann::json doc{{"per_decoder", per_decoder}};
  if (report.dof) {
    doc["dof"] = to_string(*report.dof);
  } else {
    doc["dof"] = "not decodable";
    doc["failing_decoders"] = report.failing_decoders();
  }
  return doc;
}

struct PowerAssignment {
  int direct = 0;    // H(k,k)   = G^direct
  int next = 0;      // H(k,k+1) = G^next
  int previous = 0;  // H(k,k-1) = G^previous
  auto operator<=>(const PowerAssignment&) const = default;
};

/// Exhaustive search over cyclically symmetric power-of-G channels for
/// assignments on which the example scheme reaches 12/5. Results are in
/// lexicographic (direct, next, previous) order.
inline std::vector<PowerAssignment> search_power_assignment(int max_exponent) {
  if (max_exponent < 0) throw std::invalid_argument("max_exponent must be nonnegative");
  const auto scheme = example_scheme();
  const Rational target(12, 5);
  std::vector<PowerAssignment> found;
  for (int a = 0; a <= max_exponent; ++a)
    for (int b = 0; b <= max_exponent; ++b)
      for (int c = 0; c <= max_exponent; ++c) {
        const auto report = alignment_report(cyclic_power_channel(a, b, c), scheme);
        if (report.dof && *report.dof == target) found.push_back({a, b, c});
      }
  return found;
}

}  // namespace dofbench
