#include "bbg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bbg/errors.hpp"

namespace bbg {

BiregularGraph initial_graph(const DegreeParams& params) {
    params.validate();
    std::vector<std::vector<int>> rows(params.n);
    for (int u = 0; u < params.n; ++u) {
        for (int k = 0; k < params.d1; ++k)
            rows[u].push_back((u * params.d1 + k) % params.m);
        std::sort(rows[u].begin(), rows[u].end());
    }
    return BiregularGraph(params, std::move(rows));
}

long long default_burn_in(const DegreeParams& params) {
    const double e = static_cast<double>(params.edge_count());
    return std::max<long long>(1, static_cast<long long>(std::ceil(20.0 * e * std::log(e))));
}

SwitchChain::SwitchChain(BiregularGraph g) : g_(std::move(g)) {}

bool SwitchChain::step(Rng& rng) {
    ++steps_;
    const auto& p = g_.params();
    std::uniform_int_distribution<long long> pick(0, p.edge_count() - 1);
    const long long e1 = pick(rng), e2 = pick(rng);
    const int u1 = static_cast<int>(e1 / p.d1), i1 = static_cast<int>(e1 % p.d1);
    const int u2 = static_cast<int>(e2 / p.d1), i2 = static_cast<int>(e2 % p.d1);
    const int v1 = g_.row_adj_[u1][i1];
    const int v2 = g_.row_adj_[u2][i2];
    if (u1 == u2 || v1 == v2) return false;  // lazy step
    if (g_.has_edge(u1, v2) || g_.has_edge(u2, v1)) return false;
    auto swap_in = [](std::vector<int>& list, int out, int in) {
        *std::find(list.begin(), list.end(), out) = in;
        std::sort(list.begin(), list.end());
    };
    swap_in(g_.row_adj_[u1], v1, v2);
    swap_in(g_.row_adj_[u2], v2, v1);
    swap_in(g_.col_adj_[v1], u1, u2);
    swap_in(g_.col_adj_[v2], u2, u1);
    ++accepted_;
    return true;
}

BiregularGraph switch_step(const BiregularGraph& g, Rng& rng) {
    SwitchChain chain(g);
    chain.step(rng);
    return chain.current();
}

BiregularGraph sample_uniform(const DegreeParams& params, const ChainConfig& cfg) {
    Rng rng = make_rng(cfg.rng_seed, cfg.rng_stream);
    SwitchChain chain(initial_graph(params));
    const long long burn =
        cfg.burn_in_steps > 0 ? cfg.burn_in_steps : default_burn_in(params);
    for (long long i = 0; i < burn; ++i) chain.step(rng);
    return chain.current();
}

BiregularGraph sample_rejection(const DegreeParams& params, Rng& rng,
                                long long max_attempts) {
    params.validate();
    if (params.d1 == params.m) return initial_graph(params);  // complete bipartite
    // Acceptance of the stub pairing decays like exp(-(d1-1)(d2-1)/2).
    if (static_cast<double>(params.d1 - 1) * (params.d2 - 1) / 2.0 > 10.0)
        throw RegimeRefused("rejection sampling impractical at this density");

    std::vector<int> right_stubs;
    right_stubs.reserve(static_cast<std::size_t>(params.edge_count()));
    for (int v = 0; v < params.m; ++v)
        for (int k = 0; k < params.d2; ++k) right_stubs.push_back(v);

    std::vector<int> row(params.d1);
    for (long long attempt = 0; attempt < max_attempts; ++attempt) {
        std::shuffle(right_stubs.begin(), right_stubs.end(), rng);
        std::vector<std::vector<int>> rows;
        rows.reserve(params.n);
        bool simple = true;
        for (int u = 0; u < params.n && simple; ++u) {
            std::copy_n(right_stubs.begin() + static_cast<std::size_t>(u) * params.d1,
                        params.d1, row.begin());
            std::sort(row.begin(), row.end());
            simple = std::adjacent_find(row.begin(), row.end()) == row.end();
            rows.push_back(row);
        }
        if (simple) return BiregularGraph(params, std::move(rows));
    }
    throw RejectionBudgetExceeded("no simple pairing in " + std::to_string(max_attempts) +
                                  " attempts");
}

}  // namespace bbg
