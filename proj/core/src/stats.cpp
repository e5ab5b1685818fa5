#include "bbg/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <numeric>

#include "bbg/errors.hpp"

namespace bbg {

double chi_square_p_value(const std::vector<long long>& observed,
                          const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw DimensionMismatch("observed/expected length mismatch");
    double stat = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) throw DomainError("expected count must be positive");
        const double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    if (observed.size() == 1) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double uniform_chi_square_p(const std::vector<long long>& counts) {
    const long long total = std::accumulate(counts.begin(), counts.end(), 0LL);
    if (total <= 0) throw DomainError("no observations");
    std::vector<double> expected(counts.size(),
                                 static_cast<double>(total) / counts.size());
    return chi_square_p_value(counts, expected);
}

double two_sample_chi_square_p(const std::vector<long long>& a,
                               const std::vector<long long>& b) {
    if (a.size() != b.size() || a.empty())
        throw DimensionMismatch("sample length mismatch");
    const double na = std::accumulate(a.begin(), a.end(), 0.0);
    const double nb = std::accumulate(b.begin(), b.end(), 0.0);
    if (na <= 0 || nb <= 0) throw DomainError("empty sample");
    double stat = 0;
    int cells = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double rowsum = static_cast<double>(a[i] + b[i]);
        if (rowsum == 0) continue;  // empty cell contributes no degree of freedom
        ++cells;
        const double ea = rowsum * na / (na + nb);
        const double eb = rowsum * nb / (na + nb);
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    }
    if (cells <= 1) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(cells - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace bbg
