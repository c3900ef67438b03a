#pragma once

#include "dofbench/rational.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dofbench::entropy {

/// Symbol basis for the leading-order converse arithmetic. o(log rho) and
/// o(n) terms are dropped; L stands for log rho and h-terms are per-letter
/// conditional entropies h(Y_i^n | W_j) / n.
///   h1 = h(Y1|W1), h2 = h(Y2|W1), h3 = h(Y2|W2), h4 = h(Y3|W2),
///   h5 = h(Y3|W3), h6 = h(Y4|W3), h7 = h(Y4|W4), h8 = h(Y1|W4).
enum Symbol : std::size_t { R1, R2, R3, R4, L, H1, H2, H3, H4, H5, H6, H7, H8 };

inline constexpr std::size_t kSymbolCount = 13;
inline constexpr std::size_t kCertificateUsers = 4;

using SymbolVector = std::array<Rational, kSymbolCount>;

inline std::string symbol_name(std::size_t s) {
  static const std::array<const char*, kSymbolCount> names{
      "R1",       "R2",       "R3",       "R4",       "L",        "h(Y1|W1)", "h(Y2|W1)",
      "h(Y2|W2)", "h(Y3|W2)", "h(Y3|W3)", "h(Y4|W3)", "h(Y4|W4)", "h(Y1|W4)"};
  return names.at(s);
}

inline bool is_entropy_symbol(std::size_t s) { return s >= H1; }

/// 1-based, cyclic.
inline std::size_t rate_symbol(int user) { return static_cast<std::size_t>((user - 1 + 4 * 4) % 4); }
/// h(Y_user | W_user)
inline std::size_t own_entropy_symbol(int user) { return H1 + 2 * rate_symbol(user); }
/// h(Y_{user+1} | W_user)
inline std::size_t next_entropy_symbol(int user) { return H2 + 2 * rate_symbol(user); }

enum class Sense { less_equal, greater_equal };

/// coefficients . x (<= | >=) 0 over the symbol basis.
struct RateInequality {
  std::string label;
  std::string justification;
  SymbolVector coefficients{};
  Sense sense = Sense::less_equal;

  /// Coefficients of the equivalent `... >= 0` form.
  SymbolVector nonnegative_form() const {
    SymbolVector out = coefficients;
    if (sense == Sense::less_equal)
      for (auto& c : out) c = -c;
    return out;
  }
};

inline std::string format_linear(const SymbolVector& v) {
  std::string out;
  for (std::size_t s = 0; s < kSymbolCount; ++s) {
    if (v[s] == 0) continue;
    const bool negative = v[s] < 0;
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    const Rational magnitude = negative ? Rational(-v[s]) : v[s];
    if (magnitude != 1) out += dofbench::to_string(magnitude) + "*";
    out += symbol_name(s);
  }
  return out.empty() ? "0" : out;
}

/// Sum rate at decoder k bounded by three h-terms:
///   R1+R2+R3+R4 <= h(Y_k|W_k) + h(Y_k|W_{k-1}) + h(Y_{k+1}|W_{k+1}).
inline std::vector<RateInequality> sum_rate_bounds() {
  std::vector<RateInequality> out;
  for (int k = 1; k <= static_cast<int>(kCertificateUsers); ++k) {
    RateInequality q;
    q.label = "sum-rate@decoder" + std::to_string(k);
    const auto w = [k](int offset) { return "W" + std::to_string((k - 1 + offset + 4) % 4 + 1); };
    const auto y = [k](int offset) { return "Y" + std::to_string((k - 1 + offset + 4) % 4 + 1); };
    q.justification = "Fano at decoder " + std::to_string(k) + " and conditioning on " + w(1) +
                      "; inverting " + y(0) + "," + y(1) + " given " + w(0) + "," + w(1) +
                      " recovers the remaining two messages [axiom: channel invertibility]; chain rule and dropping "
                      "conditioning [prover: I(" + y(0) + ";" + y(1) + "|" + w(1) + ") >= 0]; submodularity with " +
                      w(0) + " independent of " + w(-1) + " [prover, mi-only]; h(" + y(0) + "|" + w(0) + "," + w(-1) +
                      ") = n(R" + std::to_string((k % 4) + 1) + " + o(log rho)) [axiom: interference-free decoding]";
    for (std::size_t r = R1; r <= R4; ++r) q.coefficients[r] = 1;
    q.coefficients[own_entropy_symbol(k)] -= 1;
    q.coefficients[next_entropy_symbol(k - 1)] -= 1;
    q.coefficients[own_entropy_symbol(k + 1)] -= 1;
    out.push_back(q);
  }
  return out;
}

/// h(Y_m|W_m) <= 2L - R_m - R_{m+2} and h(Y_{m+1}|W_m) <= 2L - R_m - R_{m-1}.
inline std::vector<RateInequality> entropy_substitution_bounds() {
  std::vector<RateInequality> out;
  const std::string common =
      "Fano at decoder %; h(two outputs) <= 2 log rho [axiom: Gaussian output entropy]; removing two of the three messages "
      "heard at one output leaves a single interferer, h = n(R + o(log rho)) [axiom: deterministic invertible codebooks]";
  for (int m = 1; m <= static_cast<int>(kCertificateUsers); ++m) {
    auto justification = common;
    justification.replace(justification.find('%'), 1, std::to_string(m));
    for (int variant = 0; variant < 2; ++variant) {
      RateInequality q;
      const std::size_t h = variant == 0 ? own_entropy_symbol(m) : next_entropy_symbol(m);
      q.label = symbol_name(h);
      q.justification = justification;
      q.coefficients[h] = 1;
      q.coefficients[L] = -2;
      q.coefficients[rate_symbol(m)] += 1;
      q.coefficients[rate_symbol(variant == 0 ? m + 2 : m - 1)] += 1;
      out.push_back(q);
    }
  }
  return out;
}

/// Inequalities with nonnegative multipliers.
struct DofCertificate {
  std::vector<RateInequality> inequalities;
  std::vector<Rational> multipliers;
};

struct CertificateResult {
  bool complete = false;
  /// Weighted sum in `... >= 0` form.
  SymbolVector combined{};
  /// h-coordinates of the combined form; zero when complete.
  SymbolVector residual{};
  /// a with a*(R1+..+R4) <= b*L, when the combined form has that shape.
  std::optional<Rational> rate_coefficient;
  std::optional<Rational> log_snr_coefficient;
  std::optional<Rational> dof_bound;
  std::string summary;
};

/// Weights each substitution by the coefficient its h-term has accumulated
/// in the weighted sum-rate bounds, i.e. every right-hand h-term is replaced
/// once per occurrence.
inline DofCertificate substitution_certificate(const std::vector<RateInequality>& bounds,
                                               const std::vector<Rational>& weights,
                                               const std::vector<RateInequality>& substitutions) {
  if (weights.size() != bounds.size()) throw std::invalid_argument("one weight per sum-rate bound");
  SymbolVector acc{};
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("weights must be nonnegative");
    const auto v = bounds[i].nonnegative_form();
    for (std::size_t s = 0; s < kSymbolCount; ++s) acc[s] += weights[i] * v[s];
  }
  DofCertificate cert{bounds, weights};
  for (const auto& sub : substitutions) {
    const auto v = sub.nonnegative_form();
    std::optional<std::size_t> bounded;
    for (std::size_t s = H1; s < kSymbolCount; ++s)
      if (v[s] < 0) {
        if (bounded) throw std::invalid_argument("substitution '" + sub.label + "' bounds more than one h-term");
        bounded = s;
      }
    if (!bounded) throw std::invalid_argument("substitution '" + sub.label + "' bounds no h-term");
    const Rational weight = acc[*bounded] > 0 ? Rational(acc[*bounded] / -v[*bounded]) : Rational(0);
    cert.inequalities.push_back(sub);
    cert.multipliers.push_back(weight);
  }
  return cert;
}

/// The built-in 12/5 converse: every sum-rate bound with weight `weight`,
/// substitutions derived by occurrence, optionally with some inequalities
/// (by label) removed.
inline DofCertificate builtin_certificate(const Rational& weight = 1, const std::vector<std::string>& dropped = {}) {
  auto keep = [&](const RateInequality& q) {
    for (const auto& d : dropped)
      if (q.label == d) return false;
    return true;
  };
  std::vector<RateInequality> bounds, subs;
  for (const auto& q : sum_rate_bounds())
    if (keep(q)) bounds.push_back(q);
  for (const auto& q : entropy_substitution_bounds())
    if (keep(q)) subs.push_back(q);
  return substitution_certificate(bounds, std::vector<Rational>(bounds.size(), weight), subs);
}

inline std::vector<std::string> builtin_labels() {
  std::vector<std::string> out;
  for (const auto& q : sum_rate_bounds()) out.push_back(q.label);
  for (const auto& q : entropy_substitution_bounds()) out.push_back(q.label);
  return out;
}

inline CertificateResult verify_dof_certificate(const DofCertificate& cert) {
  if (cert.multipliers.size() != cert.inequalities.size()) throw std::invalid_argument("one multiplier per inequality");
  CertificateResult result;
  for (std::size_t i = 0; i < cert.inequalities.size(); ++i) {
    if (cert.multipliers[i] < 0) throw std::invalid_argument("multipliers must be nonnegative");
    const auto v = cert.inequalities[i].nonnegative_form();
    for (std::size_t s = 0; s < kSymbolCount; ++s) result.combined[s] += cert.multipliers[i] * v[s];
  }
  bool residual_free = true;
  for (std::size_t s = H1; s < kSymbolCount; ++s) {
    result.residual[s] = result.combined[s];
    if (result.residual[s] != 0) residual_free = false;
  }
  result.complete = residual_free;
  if (!residual_free) {
    std::string terms;
    for (std::size_t s = H1; s < kSymbolCount; ++s)
      if (result.residual[s] != 0)
        terms += (terms.empty() ? "" : ", ") + symbol_name(s) + " = " + dofbench::to_string(result.residual[s]);
    result.summary = "certificate incomplete: residual " + terms;
    return result;
  }

  // combined = b*L - a*(R1+..+R4) >= 0 is the symmetric sum-rate shape.
  const Rational a = -result.combined[R1];
  const Rational b = result.combined[L];
  bool symmetric = a > 0;
  for (std::size_t r = R1; r <= R4; ++r) symmetric = symmetric && -result.combined[r] == a;
  if (!symmetric || b < 0) {
    result.summary = format_linear(result.combined) + " >= 0";
    return result;
  }
  result.rate_coefficient = a;
  result.log_snr_coefficient = b;
  result.dof_bound = Rational(b / a);
  result.summary = dofbench::to_string(a) + "R ≤ " + dofbench::to_string(b) + "L, DoF ≤ " +
                   dofbench::to_string(*result.dof_bound);
  return result;
}

inline CertificateResult verify_dof_certificate() { return verify_dof_certificate(builtin_certificate()); }

inline nlohmann::json to_json(const DofCertificate& cert, const CertificateResult& result) {
  nlohmann::json inequalities = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.inequalities.size(); ++i) {
    const auto& q = cert.inequalities[i];
    inequalities.push_back({{"label", q.label},
                            {"inequality", format_linear(q.nonnegative_form()) + " >= 0"},
                            {"multiplier", dofbench::to_string(cert.multipliers[i])},
                            {"justification", q.justification}});
  }
  nlohmann::json residual = nlohmann::json::object();
  for (std::size_t s = H1; s < kSymbolCount; ++s)
    if (result.residual[s] != 0) residual[symbol_name(s)] = dofbench::to_string(result.residual[s]);
  nlohmann::json doc{{"complete", result.complete},
                     {"combined", format_linear(result.combined) + " >= 0"},
                     {"summary", result.summary},
                     {"inequalities", inequalities}};
  if (!result.complete) doc["residual"] = residual;
  if (result.dof_bound) doc["dof_bound"] = dofbench::to_string(*result.dof_bound);
  return doc;
}

}  // namespace dofbench::entropy
