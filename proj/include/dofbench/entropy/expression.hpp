#pragma once

#include "dofbench/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dofbench::entropy {

/// Bitmask over ground-set order: bit i set means variable i is in the subset.
using SubsetMask = std::uint32_t;

inline constexpr std::size_t kMaxVariables = 10;

inline std::size_t coordinate_count(std::size_t variables) { return (std::size_t{1} << variables) - 1; }

/// Ordered variable names; masks refer to positions in this list, so
/// appending never invalidates an existing mask.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> names) {
    for (auto& n : names) add(n);
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t add(const std::string& name) {
    if (auto i = find(name)) return *i;
    if (names_.size() == kMaxVariables) throw std::invalid_argument("ground set limited to 10 variables");
    names_.push_back(name);
    return names_.size() - 1;
  }

  SubsetMask full_mask() const { return static_cast<SubsetMask>(coordinate_count(names_.size())); }

  /// "A,B,C" for a mask, in ground-set order.
  std::string join(SubsetMask mask) const {
    std::string out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (mask & (SubsetMask{1} << i)) {
        if (!out.empty()) out += ',';
        out += names_[i];
      }
    return out;
  }

  bool operator==(const GroundSet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Linear combination of joint-entropy terms H(S), S a nonempty subset.
class EntropyExpression {
 public:
  EntropyExpression() = default;
  explicit EntropyExpression(GroundSet ground) : ground_(std::move(ground)) {}

  static EntropyExpression entropy(const GroundSet& ground, SubsetMask subset) {
    EntropyExpression e(ground);
    e.add_term(subset, 1);
    return e;
  }

  /// H(A|C) = H(AC) - H(C).
  static EntropyExpression conditional_entropy(const GroundSet& ground, SubsetMask a, SubsetMask c) {
    EntropyExpression e(ground);
    e.add_term(a | c, 1);
    e.add_term(c, -1);
    return e;
  }

  /// I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C).
  static EntropyExpression mutual_information(const GroundSet& ground, SubsetMask a, SubsetMask b, SubsetMask c = 0) {
    EntropyExpression e(ground);
    e.add_term(a | c, 1);
    e.add_term(b | c, 1);
    e.add_term(a | b | c, -1);
    e.add_term(c, -1);
    return e;
  }

  const GroundSet& ground() const noexcept { return ground_; }
  const std::map<SubsetMask, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(SubsetMask subset) const {
    const auto it = terms_.find(subset);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// H(empty) = 0, so the empty subset is dropped.
  void add_term(SubsetMask subset, const Rational& coefficient) {
    if (subset == 0 || coefficient == 0) return;
    if (subset > ground_.full_mask()) throw std::invalid_argument("subset outside the ground set");
    auto& slot = terms_[subset];
    slot += coefficient;
    if (slot == 0) terms_.erase(subset);
  }

  /// Coordinates indexed by mask - 1.
  std::vector<Rational> dense() const {
    std::vector<Rational> out(coordinate_count(ground_.size()));
    for (const auto& [mask, c] : terms_) out[mask - 1] = c;
    return out;
  }

  /// Same expression over a ground set that extends this one.
  EntropyExpression rebased(const GroundSet& wider) const {
    if (wider.size() < ground_.size() ||
        !std::equal(ground_.names().begin(), ground_.names().end(), wider.names().begin()))
      throw std::invalid_argument("ground set is not an extension");
    EntropyExpression out(wider);
    out.terms_ = terms_;
    return out;
  }

  /// Value on a set function given by rank[mask] (rank[0] ignored).
  template <typename Value>
  Rational evaluate(std::span<const Value> rank) const {
    if (rank.size() < coordinate_count(ground_.size()) + 1) throw std::invalid_argument("rank vector too short");
    Rational acc = 0;
    for (const auto& [mask, c] : terms_) acc += c * Rational(rank[mask]);
    return acc;
  }

  /// Canonical text, e.g. "H(W1) + H(W4) - H(W1,W4)"; "0" when empty.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mask, c] : terms_) {
      const bool negative = c < 0;
      const Rational magnitude = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (magnitude != 1) out += dofbench::to_string(magnitude) + "*";
      out += "H(" + ground_.join(mask) + ")";
    }
    return out;
  }

  EntropyExpression& operator+=(const EntropyExpression& other) {
    require_same_ground(other);
    for (const auto& [mask, c] : other.terms_) add_term(mask, c);
    return *this;
  }
  EntropyExpression& operator-=(const EntropyExpression& other) {
    require_same_ground(other);
    for (const auto& [mask, c] : other.terms_) add_term(mask, -c);
    return *this;
  }
  EntropyExpression& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [mask, c] : terms_) c *= s;
    return *this;
  }

  friend EntropyExpression operator+(EntropyExpression a, const EntropyExpression& b) { return a += b; }
  friend EntropyExpression operator-(EntropyExpression a, const EntropyExpression& b) { return a -= b; }
  friend EntropyExpression operator*(const Rational& s, EntropyExpression a) { return a *= s; }
  friend EntropyExpression operator-(EntropyExpression a) { return a *= Rational(-1); }

  bool operator==(const EntropyExpression&) const = default;

 private:
  void require_same_ground(const EntropyExpression& other) const {
    if (!(ground_ == other.ground_)) throw std::invalid_argument("ground set mismatch");
  }

  GroundSet ground_;
  std::map<SubsetMask, Rational> terms_;
};

}  // namespace dofbench::entropy
