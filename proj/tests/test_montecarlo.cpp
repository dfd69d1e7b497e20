#include <gtest/gtest.h>

#include <cmath>

#include "padicsym/montecarlo.hpp"

using namespace padicsym;

TEST(Sampling, IndependentOfThreadCount) {
  const TallyTable one = empirical_class_dist(3, 3, 4, 20'000, 5, 1, 1);
  const TallyTable four = empirical_class_dist(3, 3, 4, 20'000, 5, 1, 4);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.total, 20'000);
  EXPECT_NE(one, empirical_class_dist(3, 3, 4, 20'000, 6, 1, 1));
}

TEST(Sampling, PrecisionChecked) {
  EXPECT_THROW(empirical_class_dist(3, 3, 3, 10, 1, 1), PrecisionInsufficient);
  EXPECT_THROW(empirical_class_dist(2, 3, 4, -1, 1, 1), InvalidArgument);
}

TEST(Sampling, ExpectedMassesSumToOne) {
  const auto masses = expected_class_masses(2, 5, 2);
  BigRational total = 0;
  for (const auto& [label, w] : masses) total += w;
  EXPECT_EQ(total, 1);
  EXPECT_GT(masses.at(kTailLabel), 0);
}

TEST(ChiSquare, PerfectFitAndRejection) {
  std::map<std::string, BigRational> expected = {{"a", BigRational(1, 4)}, {"b", BigRational(3, 4)}};
  TallyTable t;
  t.add("a", 250);
  t.add("b", 750);
  GofReport r = gof_chisq(t, expected);
  EXPECT_EQ(r.statistic, 0);
  EXPECT_EQ(r.p_value, 1);
  EXPECT_EQ(r.df, 1);

  TallyTable bad;
  bad.add("a", 400);
  bad.add("b", 600);
  r = gof_chisq(bad, expected);
  // (150^2 / 250) + (150^2 / 750) = 120, survival of chi2_1 at 120 is tiny
  EXPECT_NEAR(r.statistic, 120, 1e-9);
  EXPECT_LT(r.p_value, 1e-20);

  TallyTable mid;
  mid.add("a", 275);
  mid.add("b", 725);
  r = gof_chisq(mid, expected);
  // statistic 10/3; P(chi2_1 > x) = erfc(sqrt(x/2))
  EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(10.0 / 6)), 1e-12);
}

TEST(ChiSquare, InputValidation) {
  TallyTable t;
  t.add("a", 3);
  t.add("b", 3);
  EXPECT_THROW(gof_chisq(t, {{"a", BigRational(1, 2)}, {"b", BigRational(1, 2)}}), ExpectedCountTooSmall);
  EXPECT_THROW(gof_chisq(t, {{"a", BigRational(1, 2)}, {"b", BigRational(1, 3)}}), InvalidArgument);
  EXPECT_THROW(gof_chisq(t, {{"a", BigRational(1)}}), InvalidArgument);
  t.add("c");
  EXPECT_THROW(gof_chisq(t, {{"a", BigRational(1, 2)}, {"b", BigRational(1, 2)}}), InvalidArgument);
}

TEST(ChiSquare, SampledClassesFit) {
  const TallyTable t = empirical_class_dist(2, 5, 4, 30'000, 77, 1, 2);
  const GofReport r = gof_chisq(t, expected_class_masses(2, 5, 1));
  EXPECT_GT(r.p_value, 1e-4);
  for (const auto& row : r.rows) EXPECT_LT(std::abs(row.z), 5) << row.label;
}

TEST(IsotropyFrequency, CloseToExact) {
  const IsotropyFrequency f = isotropy_frequency(3, 5, 20'000, 3, 4, 2);
  EXPECT_EQ(f.samples, 20'000);
  EXPECT_EQ(f.undecided, 0);
  EXPECT_LT(std::abs(f.z()), 5);
  const IsotropyFrequency g = isotropy_frequency(3, 5, 20'000, 3, 4, 1);
  EXPECT_EQ(f.isotropic, g.isotropic);
  EXPECT_EQ(isotropy_frequency(1, 3, 1000, 1).isotropic, 0);
}
