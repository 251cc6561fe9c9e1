// Copyright 2026 The umpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Goodness-of-fit helpers shared by the unit and acceptance tests.

#ifndef UMPC_TESTS_STATS_HPP_
#define UMPC_TESTS_STATS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace umpc::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t dof = 0;
};

// Pearson chi-square of observed counts against expected counts. Cells with
// expectation below `min_expected` are pooled into one tail cell.
TestResult chi_square(const std::vector<double>& observed,
                      const std::vector<double>& expected,
                      double min_expected = 5.0);

// Counts integers against a pmf over a contiguous support [lo, hi]; values
// outside it and the remaining probability mass form one extra cell.
TestResult chi_square_integer(const std::vector<std::int64_t>& samples,
                              const std::function<double(std::int64_t)>& pmf,
                              std::int64_t lo, std::int64_t hi);

// Uniformity of values in [0, cells).
TestResult chi_square_uniform(const std::vector<std::uint64_t>& values,
                              std::size_t cells);

// P[K > x] for the Kolmogorov distribution.
double kolmogorov_sf(double x);

// One-sample KS against a continuous CDF (asymptotic p-value with the
// Stephens small-sample correction).
TestResult ks_one_sample(std::vector<double> samples,
                         const std::function<double(double)>& cdf);

// Two-sample KS. Ties are handled by stepping over equal values together.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Discrete one-sample KS statistic against an integer CDF. The continuous
// p-value is conservative for discrete distributions.
TestResult ks_discrete(const std::vector<std::int64_t>& samples,
                       const std::function<double(std::int64_t)>& cdf);

// Anderson-Darling against a fully specified N(mu, sigma^2).
TestResult anderson_darling_normal(std::vector<double> samples, double mu,
                                   double sigma);

double bonferroni(double alpha, std::size_t tests);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased

}  // namespace umpc::stats

#endif  // UMPC_TESTS_STATS_HPP_
