#pragma once

#include "dofbench/entropy/expression.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dofbench::entropy {

/// discrete: monotonicity plus conditional-MI nonnegativity.
/// mi_only: conditional-MI nonnegativity alone, which stays valid for
/// differential entropies.
enum class ElementalMode { discrete, mi_only };

inline std::string_view to_string(ElementalMode mode) { return mode == ElementalMode::discrete ? "discrete" : "mi-only"; }

inline ElementalMode parse_mode(std::string_view text) {
  if (text == "discrete") return ElementalMode::discrete;
  if (text == "mi-only") return ElementalMode::mi_only;
  throw std::invalid_argument("unknown prover mode '" + std::string(text) + "'");
}

/// Either H(i | N \ {i}) >= 0 (second = npos) or I(i; j | K) >= 0.
struct ElementalInequality {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t first = 0;
  std::size_t second = npos;
  SubsetMask conditioning = 0;

  bool is_monotonicity() const noexcept { return second == npos; }

  EntropyExpression expression(const GroundSet& ground) const {
    const SubsetMask a = SubsetMask{1} << first;
    if (is_monotonicity()) return EntropyExpression::conditional_entropy(ground, a, conditioning);
    return EntropyExpression::mutual_information(ground, a, SubsetMask{1} << second, conditioning);
  }

  std::string label(const GroundSet& ground) const {
    if (is_monotonicity()) return "H(" + ground.name(first) + "|" + ground.join(conditioning) + ")";
    std::string out = "I(" + ground.name(first) + ";" + ground.name(second);
    if (conditioning != 0) out += "|" + ground.join(conditioning);
    return out + ")";
  }
};

/// Monotonicity terms first (i ascending), then I(i;j|K) for i < j with K
/// ascending by mask.
inline std::vector<ElementalInequality> elemental_system(std::size_t variables, ElementalMode mode) {
  if (variables < 1 || variables > kMaxVariables) throw std::invalid_argument("elemental system needs 1 <= n <= 10");
  const SubsetMask full = static_cast<SubsetMask>(coordinate_count(variables));
  std::vector<ElementalInequality> out;
  if (mode == ElementalMode::discrete)
    for (std::size_t i = 0; i < variables; ++i) out.push_back({i, ElementalInequality::npos, full & ~(SubsetMask{1} << i)});
  for (std::size_t i = 0; i < variables; ++i)
    for (std::size_t j = i + 1; j < variables; ++j) {
      const SubsetMask rest = full & ~(SubsetMask{1} << i) & ~(SubsetMask{1} << j);
      // Enumerate submasks of `rest` in ascending order.
      for (SubsetMask k = 0;; k = (k - rest) & rest) {
        out.push_back({i, j, k});
        if (k == rest) break;
      }
    }
  return out;
}

}  // namespace dofbench::entropy
