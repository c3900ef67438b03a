#include "dofbench/alignment.hpp"

#include <gtest/gtest.h>

using namespace dofbench;

namespace {

std::vector<Rational> plus(std::vector<Rational> a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

TEST(ExampleScheme, Beamformer) {
  const auto s = example_scheme();
  EXPECT_EQ(s.extension(), 5);
  EXPECT_EQ(s.total_streams(), 12);
  EXPECT_EQ(s.beamformer(2), (RationalMatrix{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}, {1, 4, 16}, {1, 5, 25}}));
}

TEST(LinearSchemeValidation, RejectsBadBeamformers) {
  EXPECT_THROW(LinearScheme(5, {RationalMatrix(4, 1)}), std::invalid_argument);
  EXPECT_THROW(LinearScheme(2, {RationalMatrix{{1, 2}, {2, 4}}}), std::invalid_argument);
  EXPECT_THROW(LinearScheme(0, {}), std::invalid_argument);
}

TEST(DecoderView, ExampleDecoderOneShape) {
  const auto h = build_example_channel();
  const auto view = decoder_view(h, h.topology(), example_scheme(), 1);
  EXPECT_EQ(view.desired.rows(), 10u);
  EXPECT_EQ(view.desired.cols(), 3u);
  EXPECT_EQ(view.interference.rows(), 10u);
  EXPECT_EQ(view.interference.cols(), 9u);
  // Decoder 1 hears users 2, 3 (at receiver 2) and 4 (at receiver 1).
  EXPECT_EQ(view.interference_columns.front().transmitter, 2);
  EXPECT_EQ(view.interference_columns.back().transmitter, 4);
}

TEST(DecoderView, ExampleColumnRelations) {
  const auto h = build_example_channel();
  const auto j = decoder_view(h, h.topology(), example_scheme(), 1).interference;
  // 1-based: col2 = col4 + col7, col3 = col5 + col8.
  EXPECT_EQ(j.column(1), plus(j.column(3), j.column(6)));
  EXPECT_EQ(j.column(2), plus(j.column(4), j.column(7)));
}

TEST(AlignmentReport, ExampleReachesTwelveFifths) {
  const auto report = alignment_report(build_example_channel(), example_scheme());
  ASSERT_EQ(report.decoders.size(), 4u);
  for (const auto& d : report.decoders) {
    EXPECT_EQ(d.interference_rank, 7u) << "decoder " << d.decoder;
    EXPECT_EQ(d.joint_rank, 10u) << "decoder " << d.decoder;
    EXPECT_TRUE(d.decodable);
    EXPECT_FALSE(d.joint_determinant.has_value());  // 10 x 12 is not square
  }
  ASSERT_TRUE(report.dof.has_value());
  EXPECT_EQ(*report.dof, Rational(12, 5));
  EXPECT_TRUE(report.failing_decoders().empty());
}

TEST(AlignmentReport, ExampleFullRankDeterminant) {
  const auto h = build_example_channel();
  const auto view = decoder_view(h, h.topology(), example_scheme(), 1);
  const auto basis = view.interference.select_columns({0, 3, 4, 5, 6, 7, 8});
  const auto joint = hstack<Rational>({view.desired, basis}, 10);
  EXPECT_EQ(exact_determinant(joint), Rational(-82944));
}

TEST(AlignmentReport, GenericChannelBreaksAlignment) {
  const auto topology = build_topology(4, Connectivity::local, 2);
  const auto report = alignment_report(sample_generic_channel(topology, 5, 1), example_scheme());
  EXPECT_FALSE(report.all_decodable());
  EXPECT_FALSE(report.failing_decoders().empty());
  const auto doc = to_json(report);
  EXPECT_EQ(doc["dof"], "not decodable");
  EXPECT_FALSE(doc["failing_decoders"].empty());
}

TEST(AlignmentReport, SilentSchemeHasZeroDof) {
  const auto report = alignment_report(build_example_channel(), silent_scheme(4, 5));
  ASSERT_TRUE(report.dof.has_value());
  EXPECT_EQ(*report.dof, Rational(0));
}

TEST(AlignmentReport, NoCooperationFails) {
  // With single-receiver decoding, 3 desired + 6 interfering columns cannot fit in 5 dimensions.
  const auto h = build_example_channel();
  const auto report = alignment_report(h, build_topology(4, Connectivity::local, 1), example_scheme());
  EXPECT_EQ(report.failing_decoders().size(), 4u);
}

TEST(AlignmentReport, JsonShape) {
  const auto doc = to_json(alignment_report(build_example_channel(), example_scheme()));
  EXPECT_EQ(doc["dof"], "12/5");
  ASSERT_EQ(doc["per_decoder"].size(), 4u);
  EXPECT_EQ(doc["per_decoder"][2]["k"], 3);
  EXPECT_EQ(doc["per_decoder"][2]["interference_rank"], 7);
  EXPECT_EQ(doc["per_decoder"][2]["joint_rank"], 10);
}

TEST(Search, MaxExponentTwo) {
  const auto found = search_power_assignment(2);
  EXPECT_EQ(found, (std::vector<PowerAssignment>{{0, 1, 2}, {2, 1, 0}}));
}

TEST(Search, MaxExponentThree) {
  const auto found = search_power_assignment(3);
  EXPECT_EQ(found, (std::vector<PowerAssignment>{{0, 1, 2}, {1, 2, 3}, {2, 1, 0}, {3, 2, 1}}));
}

TEST(Search, TrivialRangeYieldsNothing) {
  EXPECT_TRUE(search_power_assignment(0).empty());
  const auto d = alignment_report(cyclic_power_channel(0, 0, 0), example_scheme()).decoders.front();
  EXPECT_EQ(d.interference_rank, 6u);
  EXPECT_EQ(d.joint_rank, 6u);
  EXPECT_THROW(search_power_assignment(-1), std::invalid_argument);
}

TEST(SearchProperty, EveryResultReverifies) {
  for (const auto& p : search_power_assignment(3)) {
    const auto report = alignment_report(cyclic_power_channel(p.direct, p.next, p.previous), example_scheme());
    ASSERT_TRUE(report.dof.has_value());
    EXPECT_EQ(*report.dof, Rational(12, 5));
  }
}
