#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bbg/graph.hpp"
#include "bbg/rational.hpp"

namespace bbg {

/// Edge constraints for the constrained families: forced 1-entries and
/// forced 0-entries of the biadjacency matrix.
struct EdgeConstraint {
    std::vector<std::pair<int, int>> forced_ones;
    std::vector<std::pair<int, int>> forced_zeros;
};

struct EnumerateOptions {
    // Enumeration aborts with SizeLimitExceeded beyond this many members.
    long long member_cap = 5'000'000;
    // Optional column permutation for the permuted-order recomputation
    // cross-check; members come out in the same canonical order either way.
    std::optional<std::vector<int>> column_order;
    int threads = 0;  // 0 = worker_count()
};

/// The complete family of biadjacency matrices matching `params` and the
/// constraint, stored compactly as row bitmasks (requires m <= 32) in
/// canonical order: lexicographic on (row 0 mask, row 1 mask, ...).
class GraphFamily {
public:
    GraphFamily(DegreeParams params, int n_rows, std::vector<std::uint32_t> flat_rows);

    const DegreeParams& params() const { return params_; }
    long long size() const { return static_cast<long long>(flat_rows_.size()) / params_.n; }

    std::uint32_t row_mask(long long member, int row) const {
        return flat_rows_[static_cast<std::size_t>(member) * params_.n + row];
    }

    BiregularGraph member(long long index) const;

    /// Index of the member with the given row masks, or -1.
    long long find(const std::vector<std::uint32_t>& rows) const;

    bool contains_edge(long long member, int u, int v) const {
        return (row_mask(member, u) >> v) & 1u;
    }

private:
    void build_index() const;

    DegreeParams params_;
    std::vector<std::uint32_t> flat_rows_;
    mutable std::unordered_map<std::uint64_t, std::vector<long long>> index_;
};

/// Gale-Ryser feasibility for the (uniform) margins of `params`.
bool gale_ryser_feasible(const DegreeParams& params);

/// Exhaustive backtracking enumeration. Throws InfeasibleMargins when the
/// margins fail Gale-Ryser, SizeLimitExceeded past the member cap.
GraphFamily enumerate_family(const DegreeParams& params, const EdgeConstraint& constraint = {},
                             const EnumerateOptions& options = {});

/// |constrained| / |unconstrained| as an exact rational.
Rational family_ratio(const DegreeParams& params, const EdgeConstraint& constraint,
                      const EnumerateOptions& options = {});

/// Families dumped as concatenated BBG1 records separated by blank lines.
std::string dump_family(const GraphFamily& family);

}  // namespace bbg
