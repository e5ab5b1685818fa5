#pragma once

#include <optional>
#include <vector>

#include "bbg/graph.hpp"
#include "bbg/rng.hpp"

namespace bbg {

enum class DpMode { X, M };

/// Constants of the discrepancy property DP(delta, kappa1, kappa2) and of
/// the heavy-couple bound, per mode.
struct DiscrepancyParams {
    DpMode mode = DpMode::X;
    double K = 1;
    double delta = 0;
    double kappa1 = 0;
    double kappa2 = 0;
    double alpha0 = 0;
    double gamma0 = 0;
    double c0 = 0;
};

/// Closed-form parameter values for the given degree quadruple and
/// probability exponent K.
DiscrepancyParams dp_params(const DegreeParams& params, double K, DpMode mode);

/// e(S,T): sum of X_uv (X mode) or of codegrees M_uv (M mode, S,T subsets
/// of the left side) over the index rectangle. Throws EmptySubset.
long long edge_count(const BiregularGraph& g, const std::vector<int>& S,
                     const std::vector<int>& T, DpMode mode);

struct DPWitness {
    std::vector<int> S;
    std::vector<int> T;
    long long e_value = 0;
    bool case1_ok = false;
    bool case2_ok = false;
};

struct DPResult {
    bool holds = true;
    std::optional<DPWitness> witness;  // first failing pair in canonical order
    long long pairs_checked = 0;
};

/// Scans every nonempty subset pair. Throws CapExceeded beyond n+m <= 24
/// (X mode) or n <= 14 (M mode).
DPResult dp_check_exhaustive(const BiregularGraph& g, const DiscrepancyParams& dp);

/// Same check on uniformly drawn nonempty subset pairs.
DPResult dp_check_sampled(const BiregularGraph& g, const DiscrepancyParams& dp,
                          long long trials, Rng& rng);

struct HeavySumResult {
    double value = 0;
    bool bound_ok = false;  // |value| <= alpha0 sqrt(d1) resp. alpha0 sqrt(d1(d2-1))
};

/// Heavy-couple part of <x, Xy> (X mode) or <x, Mx> (M mode).
HeavySumResult heavy_sum(const BiregularGraph& g, const std::vector<double>& x,
                         const std::vector<double>* y, const DiscrepancyParams& dp);

}  // namespace bbg
