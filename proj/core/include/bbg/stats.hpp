#pragma once

#include <vector>

namespace bbg {

/// Upper-tail p-value of Pearson's chi-square statistic for observed counts
/// against expected counts (same length, positive expecteds).
double chi_square_p_value(const std::vector<long long>& observed,
                          const std::vector<double>& expected);

/// Goodness of fit against the uniform distribution over counts.size() cells.
double uniform_chi_square_p(const std::vector<long long>& counts);

/// Two-sample chi-square homogeneity test over matching cells.
double two_sample_chi_square_p(const std::vector<long long>& a,
                               const std::vector<long long>& b);

}  // namespace bbg
