#include "dofbench/entropy/dof_certificate.hpp"

#include <gtest/gtest.h>

using namespace dofbench;
using namespace dofbench::entropy;

TEST(Symbols, Names) {
  EXPECT_EQ(symbol_name(R3), "R3");
  EXPECT_EQ(symbol_name(L), "L");
  EXPECT_EQ(symbol_name(own_entropy_symbol(1)), "h(Y1|W1)");
  EXPECT_EQ(symbol_name(next_entropy_symbol(4)), "h(Y1|W4)");
  EXPECT_EQ(own_entropy_symbol(5), own_entropy_symbol(1));
}

TEST(Certificate, DecoderOneBound) {
  const auto bound = sum_rate_bounds().front();
  EXPECT_EQ(bound.label, "sum-rate@decoder1");
  EXPECT_EQ(format_linear(bound.coefficients),
            "R1 + R2 + R3 + R4 - h(Y1|W1) - h(Y2|W2) - h(Y1|W4)");
}

TEST(Certificate, BuiltinCancelsEveryEntropyTerm) {
  const auto result = verify_dof_certificate();
  EXPECT_TRUE(result.complete);
  for (std::size_t s = H1; s < kSymbolCount; ++s) EXPECT_EQ(result.residual[s], 0) << symbol_name(s);
  ASSERT_TRUE(result.dof_bound.has_value());
  EXPECT_EQ(*result.rate_coefficient, Rational(10));
  EXPECT_EQ(*result.log_snr_coefficient, Rational(24));
  EXPECT_EQ(*result.dof_bound, Rational(12, 5));
  EXPECT_EQ(result.summary, "10R ≤ 24L, DoF ≤ 12/5");
}

TEST(Certificate, MultiplierPattern) {
  const auto cert = builtin_certificate();
  ASSERT_EQ(cert.multipliers.size(), 12u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(cert.multipliers[i], 1);
  // h(Y_m|W_m) appears twice across the four bounds, h(Y_{m+1}|W_m) once.
  for (std::size_t i = 4; i < 12; ++i) EXPECT_EQ(cert.multipliers[i], (i % 2 == 0) ? 2 : 1) << cert.inequalities[i].label;
}

TEST(Certificate, DroppedSubstitutionLeavesResidual) {
  const auto result = verify_dof_certificate(builtin_certificate(1, {"h(Y1|W4)"}));
  EXPECT_FALSE(result.complete);
  EXPECT_EQ(result.residual[next_entropy_symbol(4)], Rational(1));
  EXPECT_EQ(result.summary, "certificate incomplete: residual h(Y1|W4) = 1");
  EXPECT_FALSE(result.dof_bound.has_value());
}

TEST(Certificate, DroppedSumRateBoundLosesSymmetry) {
  // Substitutions still close the h-terms, but the rates no longer enter symmetrically.
  const auto result = verify_dof_certificate(builtin_certificate(1, {"sum-rate@decoder1"}));
  EXPECT_TRUE(result.complete);
  EXPECT_FALSE(result.dof_bound.has_value());
  EXPECT_EQ(format_linear(result.combined), "-8*R1 - 8*R2 - 7*R3 - 7*R4 + 18*L");
}

TEST(Certificate, ScaledWeightsGiveSameBound) {
  const auto result = verify_dof_certificate(builtin_certificate(2));
  ASSERT_TRUE(result.dof_bound.has_value());
  EXPECT_EQ(*result.dof_bound, Rational(12, 5));
  EXPECT_EQ(result.summary, "20R ≤ 48L, DoF ≤ 12/5");
}

TEST(Certificate, RejectsNegativeMultipliers) {
  auto cert = builtin_certificate();
  cert.multipliers[0] = -1;
  EXPECT_THROW(verify_dof_certificate(cert), std::invalid_argument);
  cert.multipliers.pop_back();
  EXPECT_THROW(verify_dof_certificate(cert), std::invalid_argument);
  EXPECT_THROW(builtin_certificate(-1), std::invalid_argument);
}

TEST(Certificate, Json) {
  const auto cert = builtin_certificate();
  const auto doc = to_json(cert, verify_dof_certificate(cert));
  EXPECT_EQ(doc["complete"], true);
  EXPECT_EQ(doc["dof_bound"], "12/5");
  EXPECT_EQ(doc["inequalities"].size(), 12u);
  EXPECT_EQ(builtin_labels().size(), 12u);
}
