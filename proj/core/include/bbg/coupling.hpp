#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbg/enumerate.hpp"
#include "bbg/graph.hpp"
#include "bbg/rng.hpp"
#include "bbg/switching.hpp"

namespace bbg {

struct MetaGraphEdge {
    long long left = 0;   // index into left_family
    long long right = 0;  // index into right_family
    long long weight = 0;
    long long base_weight = 0;  // portion carried by the uncompleted graph
};

/// Weighted bipartite graph between the full family and the constrained
/// family, with one weighted edge per (source, switch-result) pair plus
/// identity edges, optionally completed to exact biregularity.
class MetaGraph {
public:
    MetaGraph(GraphFamily left, GraphFamily right, Anchor anchor, bool pair_mode,
              std::vector<MetaGraphEdge> edges, bool completed);

    const GraphFamily& left_family() const { return left_; }
    const GraphFamily& right_family() const { return right_; }
    const Anchor& anchor() const { return anchor_; }
    bool pair_mode() const { return pair_mode_; }
    bool completed() const { return completed_; }
    const std::vector<MetaGraphEdge>& edges() const { return edges_; }

    /// Exact per-side degrees that completion must reach.
    long long left_target_degree() const;
    long long right_target_degree() const;
    long long identity_weight() const;

    std::vector<long long> left_degrees() const;
    std::vector<long long> right_degrees() const;

    /// Audit dump, one `<left> <right> <weight>` line per edge.
    std::string dump() const;

    /// Edges leaving one left vertex (valid after build; kept sorted by left).
    std::pair<const MetaGraphEdge*, const MetaGraphEdge*> edges_from(long long left) const;

private:
    GraphFamily left_;
    GraphFamily right_;
    Anchor anchor_;
    bool pair_mode_;
    bool completed_;
    std::vector<MetaGraphEdge> edges_;          // sorted by (left, right)
    std::vector<std::size_t> left_offsets_;     // CSR offsets into edges_
};

/// Builds the uncompleted meta-graph over the exhaustively enumerated
/// families for `params` at `anchor`.
MetaGraph build_meta_graph(const DegreeParams& params, const Anchor& anchor, bool pair_mode,
                           const EnumerateOptions& options = {});

/// Deterministic completion: scan left vertices in canonical order and route
/// each deficit to the lowest-indexed right vertex with remaining capacity.
/// Throws CompletionImpossible if exact target degrees cannot be reached.
MetaGraph complete_meta_graph(const MetaGraph& g0);

struct CoupledStepOutcome {
    BiregularGraph source;
    BiregularGraph target;
    bool in_B = false;  // the step used an uncompleted-graph edge
    std::optional<SwitchingTuple> switching_used;
    double residual_mass = 0.0;  // weight fraction bypassed in scalable mode
};

/// One coupling step following the completed meta-graph exactly: from the
/// left vertex `source_index`, walk an edge with probability proportional
/// to its weight. Requires g.completed().
CoupledStepOutcome coupled_step(const MetaGraph& g, long long source_index, Rng& rng);

/// Scalable one-step coupling that only ever walks uncompleted-graph edges
/// (identity or one uniformly chosen valid switching); the bypassed
/// completion mass is reported in residual_mass, never simulated, so in_B
/// is always true. Throws NoValidSwitching when the anchor pattern is
/// unsatisfied and no switching exists.
CoupledStepOutcome coupled_step_scalable(const BiregularGraph& g, const Anchor& anchor,
                                         bool pair_mode, Rng& rng);

}  // namespace bbg
