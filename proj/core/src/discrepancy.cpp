#include "bbg/discrepancy.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "bbg/concentration.hpp"
#include "bbg/errors.hpp"

namespace bbg {

DiscrepancyParams dp_params(const DegreeParams& p, double K, DpMode mode) {
    p.validate();
    DiscrepancyParams dp;
    dp.mode = mode;
    dp.K = K;
    const double e2 = std::exp(2.0);
    if (mode == DpMode::X) {
        if (p.m <= p.d1) throw DegenerateRegime("X mode needs m > d1");
        dp.delta = static_cast<double>(p.d1) / p.m;
        dp.gamma0 = static_cast<double>(p.d1) / (p.m - p.d1);
        dp.c0 = (1.0 - static_cast<double>(p.d1) / p.m) / 3.0;
        dp.kappa1 = e2 * (1 + dp.gamma0) * (1 + dp.gamma0);
        dp.kappa2 = (2.0 / dp.c0) * (1 + dp.gamma0) * (K + 4);
        dp.alpha0 = 48 + 32 * dp.kappa1 +
                    64 * dp.kappa2 * (1 + 1.0 / (dp.kappa1 * std::log(dp.kappa1)));
    } else {
        if (p.n <= 2 * p.d2) throw DegenerateRegime("M mode needs n > 2 d2");
        dp.delta = static_cast<double>(p.d1) * (p.d2 - 1) / (p.n - 1);
        dp.gamma0 = 2.0 * p.d2 / (p.n - 2 * p.d2);
        dp.c0 = (1.0 - 2.0 * p.d2 / p.n) / 6.0;
        dp.kappa1 = e2 * (1 + dp.gamma0) * (1 + dp.gamma0);
        dp.kappa2 = (8.0 * p.d2 / dp.c0) * (1 + dp.gamma0) * (K + 4);
        dp.alpha0 = 16 + 64 * (dp.kappa1 + 1) +
                    64 * dp.kappa2 * (1 + 2.0 / (dp.kappa1 * std::log(dp.kappa1)));
    }
    return dp;
}

namespace {

void check_subset(const std::vector<int>& s, int limit, const char* name) {
    if (s.empty()) throw EmptySubset(name);
    for (int i : s)
        if (i < 0 || i >= limit) throw IndexOutOfRange(std::string(name) + " element");
}

// Case split of the discrepancy property for one (|S|, |T|, e) triple.
// pop is m in X mode, n in M mode.
void dp_cases(const DiscrepancyParams& dp, long long s, long long t, long long e, int pop,
              bool* case1, bool* case2) {
    const double st = static_cast<double>(s) * t;
    *case1 = e <= dp.kappa1 * dp.delta * st;
    // e = 0 or e below the density level makes the log factor nonpositive.
    if (e == 0 || e <= dp.delta * st) {
        *case2 = true;
        return;
    }
    const long long big = std::max(s, t);
    *case2 = e * std::log(e / (dp.delta * st)) <=
             dp.kappa2 * big * std::log(std::exp(1.0) * pop / static_cast<double>(big));
}

struct EdgeCounter {
    // Row masks over the T-side universe so e(S,T) is a popcount sum.
    std::vector<std::uint64_t> rows;
    std::vector<int> weights_flat;  // M mode: dense codegree rows
    int cols = 0;
    bool weighted = false;

    long long count(const std::vector<int>& S, std::uint64_t t_mask,
                    const std::vector<int>& T) const {
        long long e = 0;
        if (!weighted) {
            for (int u : S) e += std::popcount(rows[u] & t_mask);
        } else {
            for (int u : S)
                for (int v : T) e += weights_flat[static_cast<std::size_t>(u) * cols + v];
        }
        return e;
    }
};

EdgeCounter make_counter(const BiregularGraph& g, DpMode mode) {
    EdgeCounter c;
    if (mode == DpMode::X) {
        c.cols = g.params().m;
        c.rows.assign(g.params().n, 0);
        for (int u = 0; u < g.params().n; ++u)
            for (int v : g.row_neighbors(u)) c.rows[u] |= 1ULL << v;
    } else {
        c.weighted = true;
        c.cols = g.params().n;
        CodegreeMatrix cd = codegree_matrix(g);
        c.weights_flat.assign(cd.entries.begin(), cd.entries.end());
        for (int i = 0; i < c.cols; ++i)
            c.weights_flat[static_cast<std::size_t>(i) * c.cols + i] = 0;
    }
    return c;
}

std::vector<int> mask_to_subset(std::uint64_t mask, int limit) {
    std::vector<int> out;
    for (int i = 0; i < limit; ++i)
        if ((mask >> i) & 1ULL) out.push_back(i);
    return out;
}

}  // namespace

long long edge_count(const BiregularGraph& g, const std::vector<int>& S,
                     const std::vector<int>& T, DpMode mode) {
    const int t_limit = mode == DpMode::X ? g.params().m : g.params().n;
    check_subset(S, g.params().n, "S");
    check_subset(T, t_limit, "T");
    EdgeCounter c = make_counter(g, mode);
    std::uint64_t t_mask = 0;
    for (int v : T) t_mask |= 1ULL << v;
    return c.count(S, t_mask, T);
}

DPResult dp_check_exhaustive(const BiregularGraph& g, const DiscrepancyParams& dp) {
    const int n = g.params().n;
    const int t_limit = dp.mode == DpMode::X ? g.params().m : n;
    const int pop = dp.mode == DpMode::X ? g.params().m : n;
    if (dp.mode == DpMode::X ? (n + t_limit > 24) : (n > 14))
        throw CapExceeded("exhaustive subset scan refused at this size");
    EdgeCounter counter = make_counter(g, dp.mode);
    DPResult result;
    for (std::uint64_t s_mask = 1; s_mask < (1ULL << n); ++s_mask) {
        const std::vector<int> S = mask_to_subset(s_mask, n);
        for (std::uint64_t t_mask = 1; t_mask < (1ULL << t_limit); ++t_mask) {
            const std::vector<int> T = mask_to_subset(t_mask, t_limit);
            const long long e = counter.count(S, t_mask, T);
            bool c1 = false, c2 = false;
            dp_cases(dp, static_cast<long long>(S.size()), static_cast<long long>(T.size()),
                     e, pop, &c1, &c2);
            ++result.pairs_checked;
            if (!c1 && !c2) {
                result.holds = false;
                result.witness = DPWitness{S, T, e, c1, c2};
                return result;
            }
        }
    }
    return result;
}

DPResult dp_check_sampled(const BiregularGraph& g, const DiscrepancyParams& dp,
                          long long trials, Rng& rng) {
    const int n = g.params().n;
    const int t_limit = dp.mode == DpMode::X ? g.params().m : n;
    const int pop = dp.mode == DpMode::X ? g.params().m : n;
    EdgeCounter counter = make_counter(g, dp.mode);
    std::uniform_int_distribution<int> coin(0, 1);
    DPResult result;
    auto draw_subset = [&](int limit) {
        std::vector<int> out;
        while (out.empty())
            for (int i = 0; i < limit; ++i)
                if (coin(rng)) out.push_back(i);
        return out;
    };
    for (long long trial = 0; trial < trials; ++trial) {
        const std::vector<int> S = draw_subset(n);
        const std::vector<int> T = draw_subset(t_limit);
        std::uint64_t t_mask = 0;
        for (int v : T) t_mask |= 1ULL << v;
        const long long e = counter.count(S, t_mask, T);
        bool c1 = false, c2 = false;
        dp_cases(dp, static_cast<long long>(S.size()), static_cast<long long>(T.size()), e,
                 pop, &c1, &c2);
        ++result.pairs_checked;
        if (!c1 && !c2) {
            result.holds = false;
            result.witness = DPWitness{S, T, e, c1, c2};
            return result;
        }
    }
    return result;
}

HeavySumResult heavy_sum(const BiregularGraph& g, const std::vector<double>& x,
                         const std::vector<double>* y, const DiscrepancyParams& dp) {
    const CoupleMode cm = dp.mode == DpMode::X ? CoupleMode::X : CoupleMode::M;
    CoupleClass cc = classify_couples(x, y, g.params(), cm);
    HeavySumResult r;
    if (dp.mode == DpMode::X) {
        for (auto [u, v] : cc.heavy)
            if (g.has_edge(u, v)) r.value += x[u] * (*y)[v];
        r.bound_ok = std::abs(r.value) <= dp.alpha0 * std::sqrt(static_cast<double>(g.params().d1));
    } else {
        CodegreeMatrix cd = codegree_matrix(g);
        for (auto [u, v] : cc.heavy)
            if (u != v) r.value += x[u] * x[v] * cd.at(u, v);
        r.bound_ok = std::abs(r.value) <=
                     dp.alpha0 * std::sqrt(static_cast<double>(g.params().d1) *
                                           (g.params().d2 - 1));
    }
    return r;
}

}  // namespace bbg
