#pragma once

#include "dofbench/matrix.hpp"
#include "dofbench/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dofbench {

enum class Connectivity { local, full };

inline std::string_view to_string(Connectivity c) { return c == Connectivity::local ? "local" : "full"; }

inline Connectivity parse_connectivity(std::string_view text) {
  if (text == "local") return Connectivity::local;
  if (text == "full") return Connectivity::full;
  throw std::invalid_argument("unknown connectivity '" + std::string(text) + "'");
}

/// Directed channel from transmitter `tx` to receiver `rx`, both 1-based.
struct Link {
  int rx = 0;
  int tx = 0;
  auto operator<=>(const Link&) const = default;
};

/// K-user wrap-around network: which links carry signal and which receivers
/// each decoder processes jointly.
class NetworkTopology {
 public:
  NetworkTopology(int users, Connectivity connectivity, std::set<Link> links, std::vector<std::vector<int>> clusters)
      : users_(users), connectivity_(connectivity), links_(std::move(links)), clusters_(std::move(clusters)) {
    if (users_ < 3) throw std::invalid_argument("wrap-around network needs at least 3 users");
    if (clusters_.size() != static_cast<std::size_t>(users_))
      throw std::invalid_argument("one cluster per decoder required");
    for (const auto& l : links_)
      if (!valid_index(l.rx) || !valid_index(l.tx)) throw std::invalid_argument("link index out of range");
    for (const auto& cl : clusters_) {
      if (cl.empty()) throw std::invalid_argument("empty decoding cluster");
      for (int r : cl)
        if (!valid_index(r)) throw std::invalid_argument("cluster receiver out of range");
    }
  }

  int users() const noexcept { return users_; }
  Connectivity connectivity() const noexcept { return connectivity_; }
  bool wrap_around() const noexcept { return true; }
  const std::set<Link>& links() const noexcept { return links_; }
  bool has_link(int rx, int tx) const { return links_.contains(Link{wrap(rx), wrap(tx)}); }

  /// Receivers processed by decoder k (1-based), in stacking order.
  const std::vector<int>& cluster(int decoder) const { return clusters_.at(static_cast<std::size_t>(wrap(decoder) - 1)); }
  const std::vector<std::vector<int>>& clusters() const noexcept { return clusters_; }

  /// Maps any integer onto [1, K] cyclically.
  int wrap(int index) const noexcept { return ((index - 1) % users_ + users_) % users_ + 1; }

  bool operator==(const NetworkTopology&) const = default;

 private:
  bool valid_index(int i) const noexcept { return i >= 1 && i <= users_; }

  int users_;
  Connectivity connectivity_;
  std::set<Link> links_;
  std::vector<std::vector<int>> clusters_;
};

inline NetworkTopology build_topology(int users, Connectivity connectivity, int cluster_size) {
  if (users < 3) throw std::invalid_argument("wrap-around network needs at least 3 users");
  if (cluster_size < 1 || cluster_size > users) throw std::invalid_argument("cluster size must lie in [1, K]");
  auto wrap = [users](int i) { return ((i - 1) % users + users) % users + 1; };
  std::set<Link> links;
  for (int rx = 1; rx <= users; ++rx) {
    if (connectivity == Connectivity::full) {
      for (int tx = 1; tx <= users; ++tx) links.insert({rx, tx});
    } else {
      for (int offset : {-1, 0, 1}) links.insert({rx, wrap(rx + offset)});
    }
  }
  std::vector<std::vector<int>> clusters(static_cast<std::size_t>(users));
  for (int k = 1; k <= users; ++k)
    for (int m = 0; m < cluster_size; ++m) clusters[static_cast<std::size_t>(k - 1)].push_back(wrap(k + m));
  return NetworkTopology(users, connectivity, std::move(links), std::move(clusters));
}

/// Per-link T x T diagonal channel matrices over a T-symbol extension.
/// Links missing from the topology are identically zero.
class ChannelRealization {
 public:
  using Diagonal = std::vector<Rational>;

  ChannelRealization(NetworkTopology topology, int extension, std::map<Link, Diagonal> diagonals)
      : topology_(std::move(topology)), extension_(extension), diagonals_(std::move(diagonals)) {
    if (extension_ < 1) throw std::invalid_argument("symbol extension length must be positive");
    for (const auto& [link, diag] : diagonals_) {
      if (!topology_.links().contains(link)) throw std::invalid_argument("channel entry on an absent link");
      if (diag.size() != static_cast<std::size_t>(extension_))
        throw std::invalid_argument("channel diagonal length differs from T");
    }
  }

  const NetworkTopology& topology() const noexcept { return topology_; }
  int extension() const noexcept { return extension_; }
  const std::map<Link, Diagonal>& diagonals() const noexcept { return diagonals_; }

  /// Diagonal of H(rx, tx); all zeros for an absent link.
  Diagonal diagonal(int rx, int tx) const {
    const auto it = diagonals_.find(Link{topology_.wrap(rx), topology_.wrap(tx)});
    if (it == diagonals_.end()) return Diagonal(static_cast<std::size_t>(extension_), Rational(0));
    return it->second;
  }

  RationalMatrix matrix(int rx, int tx) const { return RationalMatrix::diagonal(diagonal(rx, tx)); }

  /// Every present link has an all-nonzero diagonal.
  bool is_generic() const {
    for (const auto& link : topology_.links()) {
      const auto it = diagonals_.find(link);
      if (it == diagonals_.end()) return false;
      for (const auto& v : it->second)
        if (v == 0) return false;
    }
    return true;
  }

  bool operator==(const ChannelRealization&) const = default;

 private:
  NetworkTopology topology_;
  int extension_;
  std::map<Link, Diagonal> diagonals_;
};

/// Draws integer diagonal entries uniformly from [-9, 9] \ {0}. The mapping
/// from engine output is explicit so realizations are identical across
/// standard libraries.
inline ChannelRealization sample_generic_channel(const NetworkTopology& topology, int extension, std::uint64_t seed) {
  if (extension < 1) throw std::invalid_argument("symbol extension length must be positive");
  std::mt19937_64 engine(seed);
  std::map<Link, ChannelRealization::Diagonal> diagonals;
  for (const auto& link : topology.links()) {
    ChannelRealization::Diagonal diag;
    diag.reserve(static_cast<std::size_t>(extension));
    while (diag.size() < static_cast<std::size_t>(extension)) {
      const auto value = static_cast<long>(engine() % 19) - 9;
      if (value != 0) diag.emplace_back(value);
    }
    diagonals.emplace(link, std::move(diag));
  }
  return ChannelRealization(topology, extension, std::move(diagonals));
}

/// Diagonal of G^e with G = diag(1, ..., T).
inline ChannelRealization::Diagonal power_diagonal(int extension, int exponent) {
  ChannelRealization::Diagonal diag;
  for (int t = 1; t <= extension; ++t) {
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(t), static_cast<unsigned long>(exponent));
    diag.emplace_back(v);
  }
  return diag;
}

/// Cyclically symmetric locally connected channel on 4 users with a 5-symbol
/// extension: H(k,k) = G^a, H(k,k+1) = G^b, H(k,k-1) = G^c.
inline ChannelRealization cyclic_power_channel(int direct, int next, int previous, int users = 4, int extension = 5) {
  if (direct < 0 || next < 0 || previous < 0) throw std::invalid_argument("exponents must be nonnegative");
  auto topology = build_topology(users, Connectivity::local, 2);
  std::map<Link, ChannelRealization::Diagonal> diagonals;
  for (int k = 1; k <= users; ++k) {
    diagonals[{k, k}] = power_diagonal(extension, direct);
    diagonals[{k, topology.wrap(k + 1)}] = power_diagonal(extension, next);
    diagonals[{k, topology.wrap(k - 1)}] = power_diagonal(extension, previous);
  }
  return ChannelRealization(std::move(topology), extension, std::move(diagonals));
}

/// The artificial 12/5 example: H(k,k) = I, H(k,k+1) = G, H(k,k-1) = G^2,
/// G = diag(1 2 3 4 5).
inline ChannelRealization build_example_channel() { return cyclic_power_channel(0, 1, 2); }

/// Y_k = sum_j H(k,j) X_j + Z_k over present links. `inputs` and `noise`
/// hold one length-T column per user, index 0 for user 1.
inline std::vector<std::vector<Rational>> received_signal(const ChannelRealization& channel,
                                                          const std::vector<std::vector<Rational>>& inputs,
                                                          const std::vector<std::vector<Rational>>& noise) {
  const auto users = static_cast<std::size_t>(channel.topology().users());
  const auto extension = static_cast<std::size_t>(channel.extension());
  if (inputs.size() != users || noise.size() != users) throw std::invalid_argument("one input and noise column per user");
  for (std::size_t k = 0; k < users; ++k)
    if (inputs[k].size() != extension || noise[k].size() != extension)
      throw std::invalid_argument("input/noise length differs from T");

  std::vector<std::vector<Rational>> outputs(noise);
  for (const auto& [link, diag] : channel.diagonals()) {
    auto& y = outputs[static_cast<std::size_t>(link.rx - 1)];
    const auto& x = inputs[static_cast<std::size_t>(link.tx - 1)];
    for (std::size_t t = 0; t < extension; ++t) y[t] += diag[t] * x[t];
  }
  return outputs;
}

}  // namespace dofbench
