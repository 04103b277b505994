#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "hiercoop/core.hpp"

using namespace hiercoop;

TEST(DofLimit, CampusExample) { EXPECT_DOUBLE_EQ(dof_limit(1e6, 0.01), 1e5); }

TEST(DofLimit, UnitAndSimpleCases) {
  EXPECT_DOUBLE_EQ(dof_limit(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(dof_limit(4.0, 0.5), 4.0);
}

TEST(DofLimit, RejectsNonPositive) {
  EXPECT_THROW(dof_limit(0.0, 1.0), std::domain_error);
  EXPECT_THROW(dof_limit(1.0, -1.0), std::domain_error);
}

TEST(NetworkConfig, Validation) {
  EXPECT_NO_THROW(NetworkConfig::make(4, 2.0, 1.5));
  EXPECT_THROW(NetworkConfig::make(3, 3.0, 1e9), std::invalid_argument);
  EXPECT_THROW(NetworkConfig::make(100, 1.9, 1e9), std::invalid_argument);
  EXPECT_THROW(NetworkConfig::make(100, 3.0, 1.0), std::invalid_argument);
  EXPECT_THROW(NetworkConfig::make(100, NAN, 1e9), std::invalid_argument);
}

TEST(RateReport, SumRateIsExactProduct) {
  const double c = 4.129560700608594, t = 5.050762722761053;
  const RateReport r = make_report(c, t, {{"local_rate", c}}, ProtocolParams{});
  EXPECT_EQ(r.sum_rate, c * t);
  EXPECT_EQ(r, make_report(c, t, {{"local_rate", c}}, ProtocolParams{}));
}

TEST(Enums, RoundTripNames) {
  for (Scheme s : {Scheme::SingleStage, Scheme::ConventionalHierarchy, Scheme::EnhancedHierarchy})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  for (auto m : {InterferenceModel::RingDistance, InterferenceModel::Literal})
    EXPECT_EQ(parse_interference(to_string(m)), m);
  EXPECT_FALSE(parse_scheme("multihop").has_value());
}

TEST(Decibel, Conversions) {
  EXPECT_DOUBLE_EQ(db_to_linear(30.0), 1000.0);
  EXPECT_NEAR(linear_to_db(db_to_linear(44.1)), 44.1, 1e-12);
}
