#pragma once

#include <cstdint>

#include "bbg/graph.hpp"
#include "bbg/rng.hpp"

namespace bbg {

struct ChainConfig {
    long long burn_in_steps = 0;  // 0 picks default_burn_in(params)
    std::uint64_t rng_seed = 0;
    std::uint64_t rng_stream = 0;
};

/// Deterministic circulant seed graph: left vertex u takes columns
/// {(u*d1 + k) mod m : 0 <= k < d1}.
BiregularGraph initial_graph(const DegreeParams& params);

/// 20 |E| ln |E| rounded up, the default switch-chain burn-in.
long long default_burn_in(const DegreeParams& params);

/// Lazy 2x2 rectangle switch chain held in place; every step picks two
/// uniform edges and swaps their right endpoints when admissible.
class SwitchChain {
public:
    explicit SwitchChain(BiregularGraph g);

    /// One lazy step; returns true when a swap was applied.
    bool step(Rng& rng);

    long long steps() const { return steps_; }
    long long accepted() const { return accepted_; }
    const BiregularGraph& current() const { return g_; }

private:
    BiregularGraph g_;
    long long steps_ = 0;
    long long accepted_ = 0;
};

/// One lazy chain step as a pure function.
BiregularGraph switch_step(const BiregularGraph& g, Rng& rng);

/// Circulant seed + burn-in switch steps; deterministic per (seed, stream).
BiregularGraph sample_uniform(const DegreeParams& params, const ChainConfig& cfg);

/// Configuration-model draw conditioned on simplicity: uniform stub pairing
/// retried until no column repeats within a row. Throws RegimeRefused when
/// the expected retry count is impractical, RejectionBudgetExceeded when
/// the attempt budget runs out.
BiregularGraph sample_rejection(const DegreeParams& params, Rng& rng,
                                long long max_attempts = 1'000'000);

}  // namespace bbg
