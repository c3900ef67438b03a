#include "dofbench/snr_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dofbench;

namespace {

ChannelRealization scaled(const ChannelRealization& h, const Rational& factor) {
  auto diagonals = h.diagonals();
  for (auto& [link, diag] : diagonals)
    for (auto& v : diag) v *= factor;
  return ChannelRealization(h.topology(), h.extension(), diagonals);
}

std::vector<double> grid(double lo_db, double hi_db, double step_db) {
  std::vector<double> out;
  for (double db = lo_db; db <= hi_db + 1e-9; db += step_db) out.push_back(db_to_linear(db));
  return out;
}

double total(const std::vector<double>& rates) {
  double s = 0.0;
  for (double r : rates) s += r;
  return s;
}

/// Only user 1 transmits, with a single stream.
LinearScheme lone_stream(int users, int extension, const RationalMatrix& b) {
  std::vector<RationalMatrix> beams(static_cast<std::size_t>(users), RationalMatrix(static_cast<std::size_t>(extension), 0));
  beams[0] = b;
  return LinearScheme(extension, beams);
}

}  // namespace

TEST(SumRate, PointToPointClosedForm) {
  const auto topology = build_topology(3, Connectivity::local, 1);
  const auto h = sample_generic_channel(topology, 1, 4);
  const double gain = h.diagonal(1, 1)[0].get_d();
  for (double rho : {0.5, 10.0, 1e6}) {
    const auto rates = sum_rate(h, topology, lone_stream(3, 1, RationalMatrix{{1}}), rho);
    EXPECT_NEAR(rates[0], std::log2(1.0 + rho * gain * gain), 1e-9);
    EXPECT_DOUBLE_EQ(rates[1], 0.0);
    EXPECT_DOUBLE_EQ(rates[2], 0.0);
  }
}

TEST(SumRate, InterferenceFreeSingleStreamOverExtension) {
  // log2(1 + rho |H b|^2 / |b|^2) / T with receivers 1 and 2 combined.
  const auto h = build_example_channel();
  const auto b = RationalMatrix::column_vector({1, 1, 1, 1, 1});
  const double rho = 1e3;
  const auto rates = sum_rate(h, h.topology(), lone_stream(4, 5, b), rho);
  double gain2 = 0.0;
  for (int t = 1; t <= 5; ++t) gain2 += 1.0 + std::pow(t, 4);  // H(1,1) = I and H(2,1) = G^2
  EXPECT_NEAR(rates[0], std::log2(1.0 + rho * gain2 / 5.0) / 5.0, 1e-9);
}

TEST(SumRate, VanishesAtLowSnr) {
  const auto h = build_example_channel();
  EXPECT_LT(total(sum_rate(h, h.topology(), example_scheme(), 1e-12)), 1e-9);
  EXPECT_THROW(sum_rate(h, h.topology(), example_scheme(), 0.0), std::invalid_argument);
}

TEST(SumRate, SilentSchemeHasZeroRate) {
  const auto h = build_example_channel();
  EXPECT_DOUBLE_EQ(total(sum_rate(h, h.topology(), silent_scheme(4, 5), 1e6)), 0.0);
}

TEST(SumRate, FrozenExampleValues) {
  const auto h = build_example_channel();
  const auto at40 = sum_rate(h, h.topology(), example_scheme(), db_to_linear(40));
  const auto at90 = sum_rate(h, h.topology(), example_scheme(), db_to_linear(90));
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(at40[static_cast<std::size_t>(k)], 3.7220, 1e-3);
    EXPECT_NEAR(at90[static_cast<std::size_t>(k)], 11.3734, 1e-3);
  }
}

TEST(SumRateProperty, MonotoneInSnr) {
  const auto h = build_example_channel();
  double previous = 0.0;
  for (double rho : grid(-10, 120, 5)) {
    const double s = total(sum_rate(h, h.topology(), example_scheme(), rho));
    EXPECT_GE(s, previous - 1e-9);
    previous = s;
  }
}

TEST(SumRateProperty, ChannelScaleEqualsSnrShift) {
  const auto h = build_example_channel();
  const auto h2 = scaled(h, 2);
  for (double rho : grid(20, 100, 20)) {
    const auto a = sum_rate(h2, h2.topology(), example_scheme(), rho);
    const auto b = sum_rate(h, h.topology(), example_scheme(), 4.0 * rho);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a[k], b[k], 1e-6 * std::max(1.0, b[k]));
  }
}

TEST(EstimateDof, SyntheticLine) {
  std::vector<RateRow> rows;
  for (double db : {30.0, 40.0, 50.0, 60.0}) {
    RateRow r;
    r.rho = db_to_linear(db);
    r.sum = 2.4 * std::log2(r.rho) + 7.0;
    rows.push_back(r);
  }
  std::vector<std::size_t> window;
  EXPECT_NEAR(estimate_dof(rows, 1e4, &window), 2.4, 1e-12);
  EXPECT_EQ(window, (std::vector<std::size_t>{1, 2, 3}));
  for (auto& r : rows) r.sum = 5.0;
  EXPECT_NEAR(estimate_dof(rows, 0.0), 0.0, 1e-12);
}

TEST(EstimateDof, RejectsDegenerateWindows) {
  std::vector<RateRow> rows(1);
  rows[0].rho = 1e5;
  EXPECT_THROW(estimate_dof(rows), std::invalid_argument);
  rows.push_back(rows[0]);
  EXPECT_THROW(estimate_dof(rows), std::invalid_argument);
  EXPECT_THROW(sweep(build_example_channel(), build_example_channel().topology(), example_scheme(), {}),
               std::invalid_argument);
}

TEST(Sweep, FrozenSlopes) {
  const auto h = build_example_channel();
  const auto spec_grid = grid(40, 90, 10);
  const auto report = sweep(h, h.topology(), example_scheme(), spec_grid);
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_NEAR(report.rows.front().sum, 14.888, 2e-3);
  EXPECT_NEAR(report.rows.back().sum, 45.494, 2e-3);
  EXPECT_NEAR(report.slope, 1.8681, 1e-3);

  EXPECT_NEAR(sweep(h, h.topology(), example_scheme(), {1e6, 1e9}).slope, 2.2267, 1e-3);

  const auto solo = build_topology(4, Connectivity::local, 1);
  EXPECT_NEAR(sweep(h, solo, example_scheme(), spec_grid).slope, 0.7371, 1e-3);
}

TEST(Sweep, CooperationBeatsSingleReceiverDecoding) {
  const auto h = build_example_channel();
  const auto g = grid(40, 90, 10);
  EXPECT_GT(sweep(h, h.topology(), example_scheme(), g).slope,
            sweep(h, build_topology(4, Connectivity::local, 1), example_scheme(), g).slope);
}

TEST(SweepProperty, SlopeScaleInvariantOnceAsymptotic) {
  const auto h = build_example_channel();
  // Reference slopes from a 60-digit evaluation; double precision costs ~1e-3 here.
  const auto g = grid(80, 120, 10);
  const double base = sweep(h, h.topology(), example_scheme(), g).slope;
  const double doubled = sweep(scaled(h, 2), h.topology(), example_scheme(), g).slope;
  EXPECT_NEAR(base, 2.39770, 2e-3);
  EXPECT_NEAR(doubled, 2.39942, 2e-3);
  EXPECT_NEAR(doubled, base, 0.01);
}

TEST(SweepProperty, SlopeScaleInvariantOnWellConditionedInstance) {
  // Interference-free point-to-point links: the slope settles to 1 quickly.
  const auto topology = build_topology(3, Connectivity::local, 1);
  const auto h = sample_generic_channel(topology, 1, 12);
  const auto scheme = lone_stream(3, 1, RationalMatrix{{1}});
  const auto g = grid(40, 90, 10);
  const double base = sweep(h, topology, scheme, g).slope;
  EXPECT_NEAR(base, 1.0, 1e-3);
  EXPECT_NEAR(sweep(scaled(h, 3), topology, scheme, g).slope, base, 1e-3);
}

TEST(Output, CsvAndSummary) {
  const auto h = build_example_channel();
  const auto report = sweep(h, h.topology(), example_scheme(), {db_to_linear(40), db_to_linear(50)});
  const auto csv = to_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "snr_db,R1,R2,R3,R4,sum");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  const auto doc = summary_json(report);
  EXPECT_NEAR(doc["window_db"][0].get<double>(), 40.0, 1e-9);
  EXPECT_NEAR(doc["window_db"][1].get<double>(), 50.0, 1e-9);
}
