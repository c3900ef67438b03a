#pragma once

#include "dofbench/entropy/expression.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dofbench::entropy {

/// rank[mask] for every subset of the ground set; rank[0] = 0.
using RankVector = std::vector<int>;

inline constexpr std::uint32_t kSamplingPrime = 101;

/// Rank over GF(p) of a column set; each column has `dimension` entries.
inline int rank_mod_prime(std::vector<std::vector<std::uint32_t>> columns, std::size_t dimension,
                          std::uint32_t prime = kSamplingPrime) {
  auto inverse = [prime](std::uint32_t a) {
    std::uint64_t result = 1, base = a, e = prime - 2;
    while (e) {
      if (e & 1) result = result * base % prime;
      base = base * base % prime;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
  };
  int rank = 0;
  for (std::size_t r = 0; r < dimension && !columns.empty(); ++r) {
    std::optional<std::size_t> pivot;
    for (std::size_t c = static_cast<std::size_t>(rank); c < columns.size(); ++c)
      if (columns[c][r] != 0) {
        pivot = c;
        break;
      }
    if (!pivot) continue;
    std::swap(columns[static_cast<std::size_t>(rank)], columns[*pivot]);
    auto& p = columns[static_cast<std::size_t>(rank)];
    const std::uint64_t inv = inverse(p[r]);
    for (std::size_t c = static_cast<std::size_t>(rank) + 1; c < columns.size(); ++c) {
      if (columns[c][r] == 0) continue;
      const std::uint64_t factor = columns[c][r] * inv % prime;
      for (std::size_t i = r; i < dimension; ++i)
        columns[c][i] = static_cast<std::uint32_t>((columns[c][i] + prime - factor * p[i] % prime) % prime);
    }
    ++rank;
  }
  return rank;
}

/// Recognizes c * (H(A) + H(B) - H(A u B)) with A, B disjoint and nonempty.
inline std::optional<std::pair<SubsetMask, SubsetMask>> as_independence(const EntropyExpression& e) {
  if (e.terms().size() != 3) return std::nullopt;
  std::vector<SubsetMask> positive;
  std::optional<SubsetMask> joint;
  std::optional<Rational> scale;
  for (const auto& [mask, c] : e.terms()) {
    if (c < 0) {
      if (joint) return std::nullopt;
      joint = mask;
      if (scale && *scale != -c) return std::nullopt;
      scale = -c;
    } else {
      positive.push_back(mask);
      if (scale && *scale != c) return std::nullopt;
      scale = c;
    }
  }
  if (!joint || positive.size() != 2) return std::nullopt;
  if ((positive[0] & positive[1]) != 0 || (positive[0] | positive[1]) != *joint) return std::nullopt;
  return std::make_pair(positive[0], positive[1]);
}

namespace detail {

/// Independence statements become disjoint coordinate blocks: each
/// constrained variable is assigned a group, groups occupy disjoint
/// supports, unconstrained variables may use every coordinate.
inline std::vector<int> independence_groups(std::size_t variables, std::span<const EntropyExpression> constraints) {
  std::vector<int> group(variables, -1);
  int next_group = 0;
  auto assign_side = [&](SubsetMask side) {
    int g = -1;
    for (std::size_t i = 0; i < variables; ++i)
      if (side & (SubsetMask{1} << i) && group[i] >= 0) {
        if (g >= 0 && g != group[i])
          throw std::invalid_argument("independence constraints do not fit a direct-sum construction");
        g = group[i];
      }
    if (g < 0) g = next_group++;
    for (std::size_t i = 0; i < variables; ++i)
      if (side & (SubsetMask{1} << i)) group[i] = g;
    return g;
  };
  for (const auto& c : constraints) {
    const auto sides = as_independence(c);
    if (!sides) throw std::invalid_argument("unsupported constraint for representable sampling: " + c.to_string());
    const int a = assign_side(sides->first);
    const int b = assign_side(sides->second);
    if (a == b) throw std::invalid_argument("independence constraint between variables of one group");
  }
  return group;
}

}  // namespace detail

/// Random subspace arrangements over GF(101). Variable i spans
/// `block_dims[i]` random columns; every returned vector is a polymatroid
/// and satisfies the independence constraints by construction.
inline std::vector<RankVector> sample_representable(const GroundSet& ground, std::span<const int> block_dims,
                                                    std::span<const EntropyExpression> constraints, std::size_t count,
                                                    std::uint64_t seed) {
  const std::size_t n = ground.size();
  if (n < 1 || n > kMaxVariables) throw std::invalid_argument("ground set must have 1..10 variables");
  if (block_dims.size() != n) throw std::invalid_argument("one block dimension per variable");
  for (int d : block_dims)
    if (d < 1) throw std::invalid_argument("block dimensions must be positive");
  for (const auto& c : constraints)
    if (!(c.ground() == ground)) throw std::invalid_argument("constraint ground set mismatch");
  const auto group = detail::independence_groups(n, constraints);
  const int groups = *std::max_element(group.begin(), group.end()) + 1;

  std::mt19937_64 engine(seed);
  auto uniform = [&engine](std::uint64_t lo, std::uint64_t hi) { return lo + engine() % (hi - lo + 1); };

  std::vector<RankVector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    // Coordinate layout: one block per group, then a shared block.
    std::vector<std::size_t> offset(static_cast<std::size_t>(groups) + 1, 0);
    std::vector<std::size_t> width(static_cast<std::size_t>(groups) + 1, 0);
    std::size_t dimension = 0;
    for (int g = 0; g <= groups; ++g) {
      int group_dims = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (group[i] == g || (g == groups && group[i] < 0)) group_dims += block_dims[i];
      const auto w = g < groups ? uniform(1, static_cast<std::uint64_t>(group_dims))
                                : uniform(0, static_cast<std::uint64_t>(std::max(group_dims, 1)));
      offset[static_cast<std::size_t>(g)] = dimension;
      width[static_cast<std::size_t>(g)] = w;
      dimension += w;
    }
    if (dimension == 0) dimension = 1, width[static_cast<std::size_t>(groups)] = 1;

    std::vector<std::vector<std::vector<std::uint32_t>>> blocks(n);
    std::vector<std::pair<std::size_t, std::size_t>> drawn;  // (variable, column) drawn so far
    for (std::size_t i = 0; i < n; ++i) {
      const bool constrained = group[i] >= 0;
      const std::size_t lo = constrained ? offset[static_cast<std::size_t>(group[i])] : 0;
      const std::size_t hi = constrained ? lo + width[static_cast<std::size_t>(group[i])] : dimension;
      auto compatible = [&](std::size_t other) { return !constrained ? true : group[other] == group[i]; };
      for (int c = 0; c < block_dims[i]; ++c) {
        std::vector<std::uint32_t> column(dimension, 0);
        const auto style = uniform(0, 3);
        std::vector<std::pair<std::size_t, std::size_t>> pool;
        for (const auto& d : drawn)
          if (compatible(d.first)) pool.push_back(d);
        if (style == 0 && !pool.empty()) {
          // Combination of two earlier compatible columns: shared information.
          for (int t = 0; t < 2; ++t) {
            const auto& [v, k] = pool[uniform(0, pool.size() - 1)];
            const auto coefficient = uniform(1, kSamplingPrime - 1);
            for (std::size_t r = 0; r < dimension; ++r)
              column[r] = static_cast<std::uint32_t>((column[r] + coefficient * blocks[v][k][r]) % kSamplingPrime);
          }
        } else {
          for (std::size_t r = lo; r < hi; ++r)
            if (uniform(0, 1) == 1) column[r] = static_cast<std::uint32_t>(uniform(1, kSamplingPrime - 1));
        }
        blocks[i].push_back(std::move(column));
        drawn.emplace_back(i, blocks[i].size() - 1);
      }
    }

    RankVector rank(coordinate_count(n) + 1, 0);
    for (SubsetMask mask = 1; mask <= ground.full_mask(); ++mask) {
      std::vector<std::vector<std::uint32_t>> columns;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (SubsetMask{1} << i)) columns.insert(columns.end(), blocks[i].begin(), blocks[i].end());
      rank[mask] = rank_mod_prime(std::move(columns), dimension);
    }
    out.push_back(std::move(rank));
  }
  return out;
}

/// Normalized, monotone and submodular.
inline bool is_polymatroid(std::span<const int> rank, std::size_t variables) {
  const SubsetMask full = static_cast<SubsetMask>(coordinate_count(variables));
  if (rank.size() < static_cast<std::size_t>(full) + 1 || rank[0] != 0) return false;
  for (SubsetMask a = 0; a <= full; ++a)
    for (SubsetMask b = 0; b <= full; ++b) {
      if ((a & b) == a && rank[a] > rank[b]) return false;
      if (rank[a] + rank[b] < rank[a | b] + rank[a & b]) return false;
    }
  return true;
}

}  // namespace dofbench::entropy
