#include "dofbench/network.hpp"
#include "dofbench/network_json.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dofbench;

TEST(Topology, LocalFourUserLinks) {
  const auto t = build_topology(4, Connectivity::local, 2);
  EXPECT_EQ(t.users(), 4);
  EXPECT_TRUE(t.wrap_around());
  EXPECT_EQ(t.links().size(), 12u);
  EXPECT_TRUE(t.has_link(1, 4));
  EXPECT_TRUE(t.has_link(1, 2));
  EXPECT_TRUE(t.has_link(4, 1));
  EXPECT_FALSE(t.has_link(1, 3));
  EXPECT_FALSE(t.has_link(2, 4));
}

TEST(Topology, ClustersWrapAround) {
  const auto t = build_topology(4, Connectivity::local, 2);
  EXPECT_EQ(t.cluster(1), (std::vector<int>{1, 2}));
  EXPECT_EQ(t.cluster(4), (std::vector<int>{4, 1}));
  const auto solo = build_topology(5, Connectivity::full, 1);
  EXPECT_EQ(solo.cluster(3), (std::vector<int>{3}));
  EXPECT_EQ(solo.links().size(), 25u);
}

TEST(Topology, WrapIndex) {
  const auto t = build_topology(4, Connectivity::local, 2);
  EXPECT_EQ(t.wrap(0), 4);
  EXPECT_EQ(t.wrap(5), 1);
  EXPECT_EQ(t.wrap(-3), 1);
}

TEST(Topology, RejectsBadParameters) {
  EXPECT_THROW(build_topology(2, Connectivity::local, 1), std::invalid_argument);
  EXPECT_THROW(build_topology(4, Connectivity::local, 0), std::invalid_argument);
  EXPECT_THROW(build_topology(4, Connectivity::local, 5), std::invalid_argument);
  EXPECT_THROW(parse_connectivity("ring"), std::invalid_argument);
  EXPECT_EQ(parse_connectivity("full"), Connectivity::full);
}

TEST(Channel, ExampleMatrices) {
  const auto h = build_example_channel();
  EXPECT_EQ(h.extension(), 5);
  EXPECT_EQ(h.matrix(2, 2), RationalMatrix::identity(5));
  EXPECT_EQ(h.matrix(2, 3), RationalMatrix::diagonal({1, 2, 3, 4, 5}));
  EXPECT_EQ(h.matrix(2, 1), RationalMatrix::diagonal({1, 4, 9, 16, 25}));
  EXPECT_EQ(h.matrix(4, 1), RationalMatrix::diagonal({1, 2, 3, 4, 5}));
  EXPECT_TRUE(h.matrix(1, 3).is_zero());
  EXPECT_TRUE(h.is_generic());
}

TEST(Channel, ExampleAppliedToOnes) {
  const auto h = build_example_channel();
  const auto w = RationalMatrix::column_vector({1, 1, 1, 1, 1});
  EXPECT_EQ(h.matrix(1, 2) * w, RationalMatrix::column_vector({1, 2, 3, 4, 5}));
  EXPECT_EQ(h.matrix(1, 4) * w, RationalMatrix::column_vector({1, 4, 9, 16, 25}));
}

TEST(Channel, GenericSamplingIsNonzeroAndDeterministic) {
  const auto t = build_topology(4, Connectivity::full, 2);
  const auto a = sample_generic_channel(t, 1, 7);
  EXPECT_EQ(a.diagonals().size(), 16u);
  EXPECT_TRUE(a.is_generic());
  EXPECT_EQ(a, sample_generic_channel(t, 1, 7));
  EXPECT_NE(a, sample_generic_channel(t, 1, 8));
  const auto local = sample_generic_channel(build_topology(4, Connectivity::local, 2), 5, 3);
  for (const auto& [link, diag] : local.diagonals())
    for (const auto& v : diag) {
      EXPECT_NE(v, 0);
      EXPECT_LE(abs(v), 9);
    }
}

TEST(Channel, RejectsEntriesOnAbsentLinks) {
  const auto t = build_topology(4, Connectivity::local, 2);
  std::map<Link, ChannelRealization::Diagonal> d{{{1, 3}, {1}}};
  EXPECT_THROW(ChannelRealization(t, 1, d), std::invalid_argument);
  std::map<Link, ChannelRealization::Diagonal> wrong_length{{{1, 1}, {1, 2}}};
  EXPECT_THROW(ChannelRealization(t, 1, wrong_length), std::invalid_argument);
  EXPECT_FALSE(ChannelRealization(t, 1, {}).is_generic());
}

TEST(ReceivedSignal, SingleActiveTransmitter) {
  const auto h = build_example_channel();
  std::vector<std::vector<Rational>> x(4, std::vector<Rational>(5, 0)), z(4, std::vector<Rational>(5, 0));
  x[0] = {1, 1, 1, 1, 1};
  const auto y = received_signal(h, x, z);
  EXPECT_EQ(y[0], (std::vector<Rational>{1, 1, 1, 1, 1}));
  EXPECT_EQ(y[3], (std::vector<Rational>{1, 2, 3, 4, 5}));   // receiver 4 hears user 1 through G
  EXPECT_EQ(y[1], (std::vector<Rational>{1, 4, 9, 16, 25}));  // receiver 2 through G^2
  EXPECT_EQ(y[2], (std::vector<Rational>(5, 0)));
}

TEST(ReceivedSignal, NoiseIsAdded) {
  const auto h = build_example_channel();
  std::vector<std::vector<Rational>> x(4, std::vector<Rational>(5, 0)), z(4, std::vector<Rational>(5, Rational(1, 2)));
  EXPECT_EQ(received_signal(h, x, z), z);
  z.pop_back();
  EXPECT_THROW(received_signal(h, x, z), std::invalid_argument);
}

TEST(ReceivedSignalProperty, LinearAndLocal) {
  const auto h = sample_generic_channel(build_topology(5, Connectivity::local, 2), 3, 21);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> v(-5, 5);
  auto random_inputs = [&] {
    std::vector<std::vector<Rational>> out(5, std::vector<Rational>(3));
    for (auto& col : out)
      for (auto& e : col) e = v(rng);
    return out;
  };
  const std::vector<std::vector<Rational>> zero(5, std::vector<Rational>(3, 0));
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_inputs(), b = random_inputs();
    auto sum = a;
    for (std::size_t k = 0; k < 5; ++k)
      for (std::size_t t = 0; t < 3; ++t) sum[k][t] += b[k][t];
    const auto ya = received_signal(h, a, zero), yb = received_signal(h, b, zero), ys = received_signal(h, sum, zero);
    for (std::size_t k = 0; k < 5; ++k)
      for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(ys[k][t], ya[k][t] + yb[k][t]);

    // Changing user 1 only disturbs receivers 5, 1 and 2.
    auto changed = a;
    changed[0][0] += 1;
    const auto yc = received_signal(h, changed, zero);
    EXPECT_EQ(yc[2], ya[2]);
    EXPECT_EQ(yc[3], ya[3]);
  }
}

TEST(ChannelJson, RoundTrip) {
  const auto h = sample_generic_channel(build_topology(4, Connectivity::local, 2), 5, 1);
  const auto doc = channel_to_json(h);
  EXPECT_EQ(doc["K"], 4);
  EXPECT_EQ(doc["connectivity"], "local");
  EXPECT_EQ(channel_from_json(doc), h);
  EXPECT_EQ(channel_from_json(nlohmann::json::parse(doc.dump())), h);
  EXPECT_EQ(channel_from_json(channel_to_json(build_example_channel())), build_example_channel());
}

TEST(ChannelJson, RejectsMalformedDocuments) {
  auto doc = channel_to_json(build_example_channel());
  auto missing = doc;
  missing.erase("T");
  EXPECT_THROW(channel_from_json(missing), std::invalid_argument);
  auto duplicate = doc;
  duplicate["entries"].push_back(duplicate["entries"][0]);
  EXPECT_THROW(channel_from_json(duplicate), std::invalid_argument);
  auto bad_value = doc;
  bad_value["entries"][0]["diag"][0] = "1/0";
  EXPECT_THROW(channel_from_json(bad_value), std::invalid_argument);
  auto absent_link = doc;
  absent_link["entries"].push_back({{"rx", 1}, {"tx", 3}, {"diag", {"1", "1", "1", "1", "1"}}});
  EXPECT_THROW(channel_from_json(absent_link), std::invalid_argument);
}
