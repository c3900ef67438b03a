#pragma once

#include "dofbench/entropy/elemental.hpp"
#include "dofbench/entropy/expression.hpp"
#include "dofbench/entropy/simplex.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dofbench::entropy {

enum class ProofStatus { provable, not_provable };

inline std::string_view to_string(ProofStatus s) { return s == ProofStatus::provable ? "provable" : "not-provable"; }

struct ElementalMultiplier {
  ElementalInequality inequality;
  std::string label;
  Rational value;
};

struct ConstraintMultiplier {
  std::size_t index = 0;
  Rational value;
};

/// Verdict for `target >= 0` under equality constraints. A provable outcome
/// carries the certificate
///   target = sum lambda_e * elemental_e + sum mu_c * constraint_c,
/// lambda >= 0, mu unrestricted.
struct ProofOutcome {
  ProofStatus status = ProofStatus::not_provable;
  ElementalMode mode = ElementalMode::discrete;
  std::vector<ElementalMultiplier> lambda;
  std::vector<ConstraintMultiplier> mu;

  bool provable() const noexcept { return status == ProofStatus::provable; }
};

/// Recombines the certificate; the caller compares against the target.
inline EntropyExpression reconstruct(const ProofOutcome& outcome, const GroundSet& ground,
                                     const std::vector<EntropyExpression>& constraints) {
  EntropyExpression acc(ground);
  for (const auto& l : outcome.lambda) {
    if (l.value < 0) throw std::logic_error("negative elemental multiplier");
    acc += l.value * l.inequality.expression(ground);
  }
  for (const auto& m : outcome.mu) acc += m.value * constraints.at(m.index).rebased(ground);
  return acc;
}

inline bool certificate_reconstructs(const ProofOutcome& outcome, const EntropyExpression& target,
                                     const std::vector<EntropyExpression>& constraints) {
  return outcome.provable() && reconstruct(outcome, target.ground(), constraints) == target;
}

/// Decides whether `target >= 0` is a Shannon-type consequence of the
/// constraints by exact LP over the elemental cone plus constraint span.
inline ProofOutcome prove(const EntropyExpression& target, const std::vector<EntropyExpression>& constraints,
                          ElementalMode mode) {
  const GroundSet& ground = target.ground();
  for (const auto& c : constraints)
    if (!(c.ground() == ground)) throw std::invalid_argument("constraint ground set differs from the target's");
  if (ground.size() < 1 || ground.size() > kMaxVariables) throw std::invalid_argument("ground set must have 1..10 variables");

  const auto elementals = elemental_system(ground.size(), mode);
  auto sparse = [](const EntropyExpression& e) {
    SparseColumn col;
    for (const auto& [mask, c] : e.terms()) col.emplace_back(mask - 1, c);
    return col;
  };
  std::vector<SparseColumn> columns;
  columns.reserve(elementals.size() + 2 * constraints.size());
  for (const auto& e : elementals) columns.push_back(sparse(e.expression(ground)));
  for (const auto& c : constraints) {
    columns.push_back(sparse(c));
    columns.push_back(sparse(-c));
  }

  ProofOutcome outcome;
  outcome.mode = mode;
  const auto solution = ExactFeasibility(coordinate_count(ground.size()), std::move(columns), target.dense()).solve();
  if (!solution) return outcome;

  outcome.status = ProofStatus::provable;
  const auto& x = *solution;
  for (std::size_t i = 0; i < elementals.size(); ++i)
    if (x[i] != 0) outcome.lambda.push_back({elementals[i], elementals[i].label(ground), x[i]});
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const Rational mu = x[elementals.size() + 2 * c] - x[elementals.size() + 2 * c + 1];
    if (mu != 0) outcome.mu.push_back({c, mu});
  }
  if (!certificate_reconstructs(outcome, target, constraints))
    throw std::logic_error("LP solution does not reconstruct the target");
  return outcome;
}

/// {status, mode, lambda: [["elemental-id","p/q"]...], mu: [["constraint-idx","p/q"]...]}
inline nlohmann::json to_json(const ProofOutcome& outcome) {
  nlohmann::json lambda = nlohmann::json::array();
  for (const auto& l : outcome.lambda) lambda.push_back({l.label, dofbench::to_string(l.value)});
  nlohmann::json mu = nlohmann::json::array();
  for (const auto& m : outcome.mu) mu.push_back({std::to_string(m.index), dofbench::to_string(m.value)});
  return {{"status", std::string(to_string(outcome.status))},
          {"mode", std::string(to_string(outcome.mode))},
          {"lambda", lambda},
          {"mu", mu}};
}

}  // namespace dofbench::entropy
