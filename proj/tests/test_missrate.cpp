#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rainfade/missrate.hpp"

using namespace rainfade;

namespace {

// Sum of p^k (1-p)^(i-k) over every length-i Bernoulli sequence with k = u ones.
double enumerate(int i, int u, double p) {
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << i); ++mask) {
    int ones = 0;
    double prob = 1.0;
    for (int b = 0; b < i; ++b) {
      const bool hit = (mask >> b) & 1u;
      ones += hit;
      prob *= hit ? p : 1.0 - p;
    }
    if (ones == u) total += prob;
  }
  return total;
}

}  // namespace

TEST(BinomialPmf, Examples) {
  EXPECT_EQ(binomial_pmf(0, 0, 0.0), 1.0);
  EXPECT_EQ(binomial_pmf(7, 0, 0.0), 1.0);
  EXPECT_NEAR(binomial_pmf(4, 2, 0.3), 0.2646, 1e-12);
  EXPECT_THROW(binomial_pmf(3, 4, 0.5), DomainError);
  EXPECT_THROW(binomial_pmf(3, 1, 1.5), DomainError);
}

TEST(BinomialPmf, MatchesExhaustiveEnumeration) {
  for (int i = 0; i <= 12; ++i) {
    for (int u = 0; u <= i; ++u) {
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        EXPECT_NEAR(binomial_pmf(i, u, p), enumerate(i, u, p), 1e-12) << i << ' ' << u << ' ' << p;
      }
    }
  }
}

TEST(BinomialPmf, Normalized) {
  for (long i = 0; i <= 64; ++i) {
    for (double p : {0.01, 0.3, 0.5, 0.77, 0.99}) {
      double sum = 0.0;
      for (long u = 0; u <= i; ++u) sum += binomial_pmf(i, u, p);
      EXPECT_NEAR(sum, 1.0, 1e-12) << i << ' ' << p;
    }
  }
}

TEST(BinomialPmf, LogSpaceBranchAgreesWithDirectRecurrence) {
  // Walk the ratio pmf(u+1)/pmf(u) = (i-u)/(u+1) * p/(1-p) from the u = 0 term.
  const long i = 80;
  const double p = 0.3;
  double direct = std::pow(1.0 - p, static_cast<double>(i));
  for (long u = 0; u <= i; ++u) {
    EXPECT_NEAR(binomial_pmf(i, u, p), direct, 1e-12 + 1e-10 * direct);
    direct *= static_cast<double>(i - u) / static_cast<double>(u + 1) * p / (1.0 - p);
  }
}

TEST(IntruderSuccessPmf, SymmetryAndExamples) {
  EXPECT_EQ(intruder_success_pmf(9, 9, 1.0), 1.0);
  EXPECT_NEAR(intruder_success_pmf(4, 2, 0.7), 0.2646, 1e-12);
  for (long i : {5L, 20L, 70L}) {
    for (long u = 0; u <= i; ++u) {
      EXPECT_NEAR(intruder_success_pmf(i, u, 0.35), binomial_pmf(i, i - u, 0.65), 1e-13);
    }
  }
}

TEST(PoissonPmf, Examples) {
  EXPECT_EQ(poisson_pmf(0, 0.0), 1.0);
  EXPECT_EQ(poisson_pmf(3, 0.0), 0.0);
  EXPECT_NEAR(poisson_pmf(2, 1.2), 0.21685983257678554, 1e-14);
  EXPECT_THROW(poisson_pmf(1, -1.0), DomainError);
}

TEST(PoissonPmf, Normalized) {
  for (double lambda : {0.1, 1.0, 5.5, 12.0, 20.0}) {
    double sum = 0.0;
    for (long u = 0; u <= 200; ++u) sum += poisson_pmf(u, lambda);
    EXPECT_NEAR(sum, 1.0, 1e-10) << lambda;
  }
}

TEST(PoissonPmf, ApproximatesBinomialForRareMisses) {
  const long i = 50;
  const double p = 0.04;
  double max_diff = 0.0, b_peak = 0.0, p_peak = 0.0;
  long mode = 0;
  for (long u = 0; u <= i; ++u) {
    const double b = binomial_pmf(i, u, p);
    max_diff = std::max(max_diff, std::abs(b - poisson_pmf(u, i * p)));
    if (b > b_peak) {
      b_peak = b;
      mode = u;
    }
  }
  p_peak = poisson_pmf(mode, i * p);
  EXPECT_LT(max_diff, 0.01);
  EXPECT_GE(b_peak, p_peak);
}

TEST(AnalyticMissrate, Examples) {
  EXPECT_DOUBLE_EQ(analytic_missrate({100, 10, 0}, AttackMode::HD).value, 0.10);
  EXPECT_DOUBLE_EQ(analytic_missrate({100, 10, 5}, AttackMode::FD).value, 0.15);
  EXPECT_EQ(analytic_missrate({100, 10, 0}, AttackMode::FD).value,
            analytic_missrate({100, 10, 0}, AttackMode::HD).value);
  const auto c = analytic_missrate({10, 7, 6}, AttackMode::FD);
  EXPECT_EQ(c.value, 1.0);
  EXPECT_TRUE(c.clamped);
  EXPECT_THROW(analytic_missrate({0, 0, 0}, AttackMode::HD), DomainError);
  EXPECT_THROW(analytic_missrate({10, 11, 0}, AttackMode::HD), DomainError);
}

TEST(AnalyticMissrate, HalfDuplexNeverAboveFullDuplex) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_int_distribution<int> x_dist(1, 1000);
  for (int k = 0; k < 10000; ++k) {
    const double x = x_dist(rng);
    const double m = std::min(x, std::floor(frac(rng) * (x + 1.0)));
    const double m1 = k % 10 == 0 ? 0.0 : std::min(x, std::floor(frac(rng) * (x + 1.0)));
    const MissRateParams params{x, m, m1};
    const double hd = analytic_missrate(params, AttackMode::HD).value;
    const auto fd = analytic_missrate(params, AttackMode::FD);
    EXPECT_LE(hd, fd.value);
    if (m1 == 0.0) {
      EXPECT_EQ(hd, fd.value);
    } else if (!fd.clamped && hd < 1.0) {
      EXPECT_LT(hd, fd.value);
    }
  }
}

TEST(Effectiveness, Reciprocal) {
  EXPECT_DOUBLE_EQ(*effectiveness(0.1), 10.0);
  EXPECT_DOUBLE_EQ(*effectiveness(1.0), 1.0);
  EXPECT_NEAR(*effectiveness(0.2646), 3.7792894935752086, 1e-12);
  EXPECT_FALSE(effectiveness(0.0).has_value());
  EXPECT_THROW(effectiveness(1.5), DomainError);
}

TEST(EmpiricalMissrate, Degenerate) {
  AttackConfig c;
  c.max_cycles = 1;
  c.p_downlink_success = 0.0;
  std::vector<AttackTrace> traces;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    c.seed = s;
    traces.push_back(run_rrc_attack(c));
  }
  EXPECT_EQ(empirical_missrate(traces), 1.0);
  c.p_downlink_success = 1.0;
  c.max_cycles = 5;
  traces.clear();
  for (std::uint64_t s = 1; s <= 20; ++s) {
    c.seed = s;
    traces.push_back(run_rrc_attack(c));
  }
  EXPECT_EQ(empirical_missrate(traces), 0.0);
  EXPECT_THROW(empirical_missrate(std::vector<AttackTrace>{}), DomainError);
}

TEST(EmpiricalMissrate, MonteCarloMatchesOneMinusDownlink) {
  constexpr int kRuns = 10000;
  AttackConfig c;
  c.mode = AttackMode::HD;
  c.p_downlink_success = 0.7;
  c.max_cycles = 1;
  std::vector<AttackTrace> traces;
  traces.reserve(kRuns);
  for (int s = 0; s < kRuns; ++s) {
    c.seed = 5000 + static_cast<std::uint64_t>(s);
    traces.push_back(run_rrc_attack(c));
  }
  EXPECT_NEAR(empirical_missrate(traces), 0.30, 3.0 * std::sqrt(0.21 / kRuns));
}
