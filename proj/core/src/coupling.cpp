#include "bbg/coupling.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "bbg/errors.hpp"

namespace bbg {

namespace {

long long ll(int x) { return x; }

long long left_target(const DegreeParams& p, bool pair_mode) {
    const long long d1 = ll(p.d1), d2 = ll(p.d2), n = ll(p.n);
    if (!pair_mode) return d1 * d1 * d2 * (n - d2);
    return d1 * d1 * d1 * d1 * d2 * (d2 - 1) * (n - d2) * (n - d2);
}

long long right_target(const DegreeParams& p, bool pair_mode) {
    const long long d1 = ll(p.d1), d2 = ll(p.d2), n = ll(p.n);
    if (!pair_mode) return d1 * d1 * n * (n - d2);
    return d1 * d1 * d1 * d1 * (n - d2) * (n - d2) * n * (n - 1);
}

std::vector<std::uint32_t> rows_of(const BiregularGraph& g) {
    std::vector<std::uint32_t> rows(g.params().n, 0);
    for (int u = 0; u < g.params().n; ++u)
        for (int v : g.row_neighbors(u)) rows[u] |= 1u << v;
    return rows;
}

// The switching kind a left member uses toward the constrained family,
// plus the per-edge weight, given its anchor pattern. Returns false for
// the identity case.
bool forward_case(const BiregularGraph& g, const Anchor& a, bool pair_mode, SwitchingKind* kind,
                  long long* weight) {
    const DegreeParams& p = g.params();
    const long long w12 = ll(p.d1) * p.d1 * p.d2 * (p.n - p.d2);
    if (!pair_mode) {
        if (g.has_edge(a.u1, a.v1)) return false;
        *kind = SwitchingKind::Forward;
        *weight = 1;
        return true;
    }
    const bool e1 = g.has_edge(a.u1, a.v1);
    const bool e2 = g.has_edge(a.u2, a.v1);
    if (e1 && e2) return false;
    if (e1 && !e2) {
        *kind = SwitchingKind::Type1Fwd;  // keeps u1v1, forces u2v1
        *weight = w12;
    } else if (!e1 && e2) {
        *kind = SwitchingKind::Type2Fwd;  // keeps u2v1, forces u1v1
        *weight = w12;
    } else {
        *kind = SwitchingKind::Type3Fwd;
        *weight = 1;
    }
    return true;
}

}  // namespace

MetaGraph::MetaGraph(GraphFamily left, GraphFamily right, Anchor anchor, bool pair_mode,
                     std::vector<MetaGraphEdge> edges, bool completed)
    : left_(std::move(left)),
      right_(std::move(right)),
      anchor_(anchor),
      pair_mode_(pair_mode),
      completed_(completed),
      edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(), [](const MetaGraphEdge& a, const MetaGraphEdge& b) {
        return std::tie(a.left, a.right) < std::tie(b.left, b.right);
    });
    left_offsets_.assign(static_cast<std::size_t>(left_.size()) + 1, 0);
    for (const auto& e : edges_) ++left_offsets_[static_cast<std::size_t>(e.left) + 1];
    for (std::size_t i = 1; i < left_offsets_.size(); ++i) left_offsets_[i] += left_offsets_[i - 1];
}

long long MetaGraph::left_target_degree() const { return left_target(left_.params(), pair_mode_); }

long long MetaGraph::right_target_degree() const {
    return right_target(left_.params(), pair_mode_);
}

long long MetaGraph::identity_weight() const {
    // Identity edges carry the full left target weight in both modes.
    return left_target_degree();
}

std::vector<long long> MetaGraph::left_degrees() const {
    std::vector<long long> deg(static_cast<std::size_t>(left_.size()), 0);
    for (const auto& e : edges_) deg[static_cast<std::size_t>(e.left)] += e.weight;
    return deg;
}

std::vector<long long> MetaGraph::right_degrees() const {
    std::vector<long long> deg(static_cast<std::size_t>(right_.size()), 0);
    for (const auto& e : edges_) deg[static_cast<std::size_t>(e.right)] += e.weight;
    return deg;
}

std::string MetaGraph::dump() const {
    std::string out;
    for (const auto& e : edges_)
        out += std::to_string(e.left) + " " + std::to_string(e.right) + " " +
               std::to_string(e.weight) + "\n";
    return out;
}

std::pair<const MetaGraphEdge*, const MetaGraphEdge*> MetaGraph::edges_from(
    long long left) const {
    if (left < 0 || left >= left_.size()) throw IndexOutOfRange("meta-graph left vertex");
    return {edges_.data() + left_offsets_[static_cast<std::size_t>(left)],
            edges_.data() + left_offsets_[static_cast<std::size_t>(left) + 1]};
}

MetaGraph build_meta_graph(const DegreeParams& params, const Anchor& anchor, bool pair_mode,
                           const EnumerateOptions& options) {
    params.validate();
    if (anchor.u1 < 0 || anchor.u1 >= params.n || anchor.v1 < 0 || anchor.v1 >= params.m)
        throw IndexOutOfRange("anchor out of range");
    EdgeConstraint constraint;
    constraint.forced_ones.emplace_back(anchor.u1, anchor.v1);
    if (pair_mode) {
        if (anchor.u2 < 0 || anchor.u2 >= params.n || anchor.u2 == anchor.u1)
            throw IndexOutOfRange("pair anchor needs distinct u2 in range");
        constraint.forced_ones.emplace_back(anchor.u2, anchor.v1);
    }
    GraphFamily left = enumerate_family(params, {}, options);
    GraphFamily right = enumerate_family(params, constraint, options);

    std::map<std::pair<long long, long long>, long long> acc;
    for (long long i = 0; i < left.size(); ++i) {
        BiregularGraph g = left.member(i);
        SwitchingKind kind{};
        long long weight = 0;
        if (!forward_case(g, anchor, pair_mode, &kind, &weight)) {
            long long j = right.find(rows_of(g));
            if (j < 0) throw CompletionImpossible("identity member missing from family");
            acc[{i, j}] += left_target(params, pair_mode);
            continue;
        }
        for (const SwitchingTuple& t : find_switchings(g, anchor, kind)) {
            // Tuples whose toggles alias one cell do not yield a member;
            // they are counted by the bracket lemmas but carry no edge.
            std::optional<BiregularGraph> result;
            try {
                result = apply_switching(g, t);
            } catch (const InvalidSwitching&) {
                continue;
            }
            long long j = right.find(rows_of(*result));
            if (j < 0) throw CompletionImpossible("switch result missing from family");
            acc[{i, j}] += weight;
        }
    }

    std::vector<MetaGraphEdge> edges;
    edges.reserve(acc.size());
    for (const auto& [key, w] : acc)
        edges.push_back(MetaGraphEdge{key.first, key.second, w, w});
    return MetaGraph(std::move(left), std::move(right), anchor, pair_mode, std::move(edges),
                     false);
}

MetaGraph complete_meta_graph(const MetaGraph& g0) {
    if (g0.completed()) throw CompletionImpossible("meta-graph already completed");
    const long long lt = g0.left_target_degree();
    const long long rt = g0.right_target_degree();
    if (g0.left_family().size() * lt != g0.right_family().size() * rt)
        throw CompletionImpossible("family sizes break the total-weight identity");

    std::vector<long long> ldef = g0.left_degrees();
    std::vector<long long> rdef = g0.right_degrees();
    for (auto& d : ldef) {
        if (d > lt) throw CompletionImpossible("left degree above target");
        d = lt - d;
    }
    for (auto& d : rdef) {
        if (d > rt) throw CompletionImpossible("right degree above target");
        d = rt - d;
    }

    std::map<std::pair<long long, long long>, MetaGraphEdge> merged;
    for (const auto& e : g0.edges()) merged[{e.left, e.right}] = e;
    long long next_right = 0;
    for (long long l = 0; l < g0.left_family().size(); ++l) {
        long long need = ldef[static_cast<std::size_t>(l)];
        while (need > 0) {
            while (next_right < g0.right_family().size() &&
                   rdef[static_cast<std::size_t>(next_right)] == 0)
                ++next_right;
            if (next_right >= g0.right_family().size())
                throw CompletionImpossible("right capacity exhausted");
            const long long add = std::min(need, rdef[static_cast<std::size_t>(next_right)]);
            auto& e = merged[{l, next_right}];
            e.left = l;
            e.right = next_right;
            e.weight += add;
            need -= add;
            rdef[static_cast<std::size_t>(next_right)] -= add;
        }
    }
    for (long long r = 0; r < g0.right_family().size(); ++r)
        if (rdef[static_cast<std::size_t>(r)] != 0)
            throw CompletionImpossible("right deficit left over");

    std::vector<MetaGraphEdge> edges;
    edges.reserve(merged.size());
    for (const auto& [key, e] : merged) edges.push_back(e);
    return MetaGraph(g0.left_family(), g0.right_family(), g0.anchor(), g0.pair_mode(),
                     std::move(edges), true);
}

CoupledStepOutcome coupled_step(const MetaGraph& g, long long source_index, Rng& rng) {
    if (!g.completed()) throw CompletionImpossible("coupled_step needs a completed meta-graph");
    auto [first, last] = g.edges_from(source_index);
    long long total = 0;
    for (const MetaGraphEdge* e = first; e != last; ++e) total += e->weight;
    if (total != g.left_target_degree())
        throw CompletionImpossible("completed left degree mismatch");
    std::uniform_int_distribution<long long> pick(0, total - 1);
    long long coord = pick(rng);
    const MetaGraphEdge* chosen = first;
    for (const MetaGraphEdge* e = first; e != last; ++e) {
        if (coord < e->weight) {
            chosen = e;
            break;
        }
        coord -= e->weight;
    }
    CoupledStepOutcome out{g.left_family().member(source_index),
                           g.right_family().member(chosen->right),
                           coord < chosen->base_weight,
                           std::nullopt,
                           0.0};
    return out;
}

CoupledStepOutcome coupled_step_scalable(const BiregularGraph& g, const Anchor& anchor,
                                         bool pair_mode, Rng& rng) {
    const long long target = left_target(g.params(), pair_mode);
    SwitchingKind kind{};
    long long weight = 0;
    if (!forward_case(g, anchor, pair_mode, &kind, &weight)) {
        // Anchor pattern already holds: the identity edge carries the whole
        // target weight, so nothing is bypassed.
        return CoupledStepOutcome{g, g, true, std::nullopt, 0.0};
    }
    std::vector<SwitchingTuple> tuples = find_switchings(g, anchor, kind);
    // Drop tuples whose rewrite aliases a cell (they produce no member).
    std::vector<std::pair<SwitchingTuple, BiregularGraph>> usable;
    usable.reserve(tuples.size());
    for (auto& t : tuples) {
        try {
            BiregularGraph result = apply_switching(g, t);
            usable.emplace_back(std::move(t), std::move(result));
        } catch (const InvalidSwitching&) {
        }
    }
    if (usable.empty())
        throw NoValidSwitching("no switching available at this anchor");
    const long long mass = weight * static_cast<long long>(usable.size());
    std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
    auto& [tuple, result] = usable[pick(rng)];
    return CoupledStepOutcome{g, std::move(result), true, std::move(tuple),
                              1.0 - static_cast<double>(mass) / static_cast<double>(target)};
}

}  // namespace bbg
