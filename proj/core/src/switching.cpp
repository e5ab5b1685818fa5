#include "bbg/switching.hpp"

#include <algorithm>
#include <array>

#include "bbg/errors.hpp"

namespace bbg {

const char* to_string(SwitchingKind kind) {
    switch (kind) {
        case SwitchingKind::Forward: return "Forward";
        case SwitchingKind::Backward: return "Backward";
        case SwitchingKind::Type1Fwd: return "Type1Fwd";
        case SwitchingKind::Type1Bwd: return "Type1Bwd";
        case SwitchingKind::Type2Fwd: return "Type2Fwd";
        case SwitchingKind::Type2Bwd: return "Type2Bwd";
        case SwitchingKind::Type3Fwd: return "Type3Fwd";
        case SwitchingKind::Type3Bwd: return "Type3Bwd";
    }
    return "?";
}

bool is_pair_kind(SwitchingKind kind) {
    return kind != SwitchingKind::Forward && kind != SwitchingKind::Backward;
}

namespace {

// Left vertices not adjacent to v, ascending.
std::vector<int> complement_left(const BiregularGraph& g, int v) {
    const auto& adj = g.col_neighbors(v);
    std::vector<int> out;
    out.reserve(g.params().n - adj.size());
    std::size_t k = 0;
    for (int u = 0; u < g.params().n; ++u) {
        if (k < adj.size() && adj[k] == u) {
            ++k;
        } else {
            out.push_back(u);
        }
    }
    return out;
}

void check_anchor(const BiregularGraph& g, const Anchor& a, SwitchingKind kind) {
    auto fail = [&](const char* need) {
        throw AnchorPatternMismatch(std::string(to_string(kind)) + " needs " + need);
    };
    if (is_pair_kind(kind)) {
        if (a.u1 == a.u2) fail("distinct u1, u2");
        const bool e1 = g.has_edge(a.u1, a.v1);
        const bool e2 = g.has_edge(a.u2, a.v1);
        switch (kind) {
            case SwitchingKind::Type1Fwd:
                if (!(e1 && !e2)) fail("X[u1,v1]=1, X[u2,v1]=0");
                break;
            case SwitchingKind::Type2Fwd:
                if (!(!e1 && e2)) fail("X[u1,v1]=0, X[u2,v1]=1");
                break;
            case SwitchingKind::Type3Fwd:
                if (e1 || e2) fail("X[u1,v1]=0, X[u2,v1]=0");
                break;
            default:  // all backward pair kinds
                if (!(e1 && e2)) fail("X[u1,v1]=1, X[u2,v1]=1");
                break;
        }
    } else {
        const bool e1 = g.has_edge(a.u1, a.v1);
        if (kind == SwitchingKind::Forward && e1) fail("X[u1,v1]=0");
        if (kind == SwitchingKind::Backward && !e1) fail("X[u1,v1]=1");
    }
}

// Enumerates every tuple in the constructive order of the counting lemmas;
// a candidate is valid iff the single residual predicate holds (plus the
// u3 != u1 / u3 != u2 / u5 != u3 exclusions built into the scan).
template <typename Fn>
void visit_switchings(const BiregularGraph& g, const Anchor& a, SwitchingKind kind, Fn&& fn) {
    check_anchor(g, a, kind);
    const int u1 = a.u1, u2 = a.u2, v1 = a.v1;

    switch (kind) {
        case SwitchingKind::Forward:
            for (int w2 : g.col_neighbors(v1))
                for (int x2 : g.row_neighbors(u1))
                    for (int w3 : complement_left(g, x2))
                        for (int x3 : g.row_neighbors(w3))
                            if (!g.has_edge(w2, x3))
                                fn(std::array{u1, w2, w3}, std::array{v1, x2, x3});
            break;
        case SwitchingKind::Backward:
            for (int w2 : complement_left(g, v1))
                for (int x3 : g.row_neighbors(w2))
                    for (int w3 : complement_left(g, x3))
                        for (int x2 : g.row_neighbors(w3))
                            if (!g.has_edge(u1, x2))
                                fn(std::array{u1, w2, w3}, std::array{v1, x2, x3});
            break;
        case SwitchingKind::Type1Fwd:
        case SwitchingKind::Type2Fwd: {
            // Type 2 swaps the roles of u1 and u2: the kept anchor edge is
            // u1v1 for Type 1, u2v1 for Type 2.
            const int kept = kind == SwitchingKind::Type1Fwd ? u1 : u2;
            const int moved = kind == SwitchingKind::Type1Fwd ? u2 : u1;
            for (int w3 : g.col_neighbors(v1)) {
                if (w3 == kept) continue;
                for (int x2 : g.row_neighbors(moved))
                    for (int w4 : complement_left(g, x2))
                        for (int x3 : g.row_neighbors(w4))
                            if (!g.has_edge(w3, x3))
                                fn(std::array{u1, u2, w3, w4}, std::array{v1, x2, x3});
            }
            break;
        }
        case SwitchingKind::Type1Bwd:
        case SwitchingKind::Type2Bwd: {
            const int moved = kind == SwitchingKind::Type1Bwd ? u2 : u1;
            for (int w3 : complement_left(g, v1))
                for (int x3 : g.row_neighbors(w3))
                    for (int w4 : complement_left(g, x3))
                        for (int x2 : g.row_neighbors(w4))
                            if (!g.has_edge(moved, x2))
                                fn(std::array{u1, u2, w3, w4}, std::array{v1, x2, x3});
            break;
        }
        case SwitchingKind::Type3Fwd:
            for (int w3 : g.col_neighbors(v1))
                for (int x2 : g.row_neighbors(u2))
                    for (int w4 : complement_left(g, x2))
                        for (int x3 : g.row_neighbors(w4)) {
                            if (g.has_edge(w3, x3)) continue;
                            for (int w5 : g.col_neighbors(v1)) {
                                if (w5 == w3) continue;
                                for (int x4 : g.row_neighbors(u1))
                                    for (int w6 : complement_left(g, x4))
                                        for (int x5 : g.row_neighbors(w6))
                                            if (!g.has_edge(w5, x5))
                                                fn(std::array{u1, u2, w3, w4, w5, w6},
                                                   std::array{v1, x2, x3, x4, x5});
                            }
                        }
            break;
        case SwitchingKind::Type3Bwd:
            for (int w3 : complement_left(g, v1))
                for (int x3 : g.row_neighbors(w3))
                    for (int w4 : complement_left(g, x3))
                        for (int x2 : g.row_neighbors(w4)) {
                            if (g.has_edge(u2, x2)) continue;
                            for (int w5 : complement_left(g, v1)) {
                                if (w5 == w3) continue;
                                for (int x5 : g.row_neighbors(w5))
                                    for (int w6 : complement_left(g, x5))
                                        for (int x4 : g.row_neighbors(w6))
                                            if (!g.has_edge(u1, x4))
                                                fn(std::array{u1, u2, w3, w4, w5, w6},
                                                   std::array{v1, x2, x3, x4, x5});
                            }
                        }
            break;
    }
}

struct ToggleSpec {
    // Cell references into (left, right) tuple slots; `removes` are edges
    // required present, `adds` are edges required absent, and applying the
    // switching toggles exactly removes + adds. `extra_ones`/`extra_zeros`
    // are pattern cells that are checked but not toggled (kept anchor edges).
    std::vector<std::pair<int, int>> removes;
    std::vector<std::pair<int, int>> adds;
    std::vector<std::pair<int, int>> extra_ones;
    std::vector<std::pair<int, int>> extra_zeros;
    std::vector<std::pair<int, int>> distinct_left;  // slot pairs that must differ
};

const ToggleSpec& toggle_spec(SwitchingKind kind) {
    // Slot numbering: left u1..u6 -> 0..5, right v1..v5 -> 0..4.
    static const ToggleSpec forward{
        {{0, 1}, {1, 0}, {2, 2}}, {{0, 0}, {1, 2}, {2, 1}}, {}, {}, {}};
    static const ToggleSpec backward{
        {{0, 0}, {1, 2}, {2, 1}}, {{0, 1}, {1, 0}, {2, 2}}, {}, {}, {}};
    static const ToggleSpec t1f{{{1, 1}, {2, 0}, {3, 2}},
                                {{1, 0}, {2, 2}, {3, 1}},
                                {{0, 0}},
                                {},
                                {{0, 1}, {2, 0}}};
    static const ToggleSpec t1b{{{1, 0}, {2, 2}, {3, 1}},
                                {{1, 1}, {2, 0}, {3, 2}},
                                {{0, 0}},
                                {},
                                {{0, 1}}};
    static const ToggleSpec t2f{{{0, 1}, {2, 0}, {3, 2}},
                                {{0, 0}, {2, 2}, {3, 1}},
                                {{1, 0}},
                                {},
                                {{0, 1}, {2, 1}}};
    static const ToggleSpec t2b{{{0, 0}, {2, 2}, {3, 1}},
                                {{0, 1}, {2, 0}, {3, 2}},
                                {{1, 0}},
                                {},
                                {{0, 1}}};
    static const ToggleSpec t3f{
        {{0, 3}, {1, 1}, {2, 0}, {3, 2}, {4, 0}, {5, 4}},
        {{0, 0}, {1, 0}, {2, 2}, {3, 1}, {4, 4}, {5, 3}},
        {},
        {},
        {{0, 1}, {2, 4}}};
    static const ToggleSpec t3b{
        {{0, 0}, {1, 0}, {2, 2}, {3, 1}, {4, 4}, {5, 3}},
        {{0, 3}, {1, 1}, {2, 0}, {3, 2}, {4, 0}, {5, 4}},
        {},
        {},
        {{0, 1}, {2, 4}}};
    switch (kind) {
        case SwitchingKind::Forward: return forward;
        case SwitchingKind::Backward: return backward;
        case SwitchingKind::Type1Fwd: return t1f;
        case SwitchingKind::Type1Bwd: return t1b;
        case SwitchingKind::Type2Fwd: return t2f;
        case SwitchingKind::Type2Bwd: return t2b;
        case SwitchingKind::Type3Fwd: return t3f;
        default: return t3b;
    }
}

long long clamp_lower(long long raw, bool* degenerate) {
    if (raw < 0) {
        *degenerate = true;
        return 0;
    }
    return raw;
}

}  // namespace

SwitchingCount switching_bounds(const DegreeParams& p, SwitchingKind kind) {
    const long long d1 = p.d1, d2 = p.d2, n = p.n;
    SwitchingCount c;
    long long lower = 0, upper = 0;
    switch (kind) {
        case SwitchingKind::Forward:
            lower = d1 * d1 * d2 * (n - 2 * d2);
            upper = d1 * d1 * d2 * (n - d2);
            break;
        case SwitchingKind::Backward:
            lower = d1 * d1 * (n - d2) * (n - 2 * d2);
            upper = d1 * d1 * (n - d2) * (n - d2);
            break;
        case SwitchingKind::Type1Fwd:
        case SwitchingKind::Type2Fwd:
            lower = d1 * d1 * (d2 - 1) * (n - 2 * d2);
            upper = d1 * d1 * (d2 - 1) * (n - d2);
            break;
        case SwitchingKind::Type1Bwd:
        case SwitchingKind::Type2Bwd:
            lower = d1 * d1 * (n - d2) * (n - 2 * d2);
            upper = d1 * d1 * (n - d2) * (n - d2);
            break;
        case SwitchingKind::Type3Fwd:
            lower = d1 * d1 * d1 * d1 * d2 * (d2 - 1) * (n - d2) * (n - 3 * d2);
            upper = d1 * d1 * d1 * d1 * d2 * (d2 - 1) * (n - d2) * (n - d2);
            break;
        case SwitchingKind::Type3Bwd:
            lower = d1 * d1 * d1 * d1 * (n - d2) * (n - d2) * (n - d2 - 1) * (n - 3 * d2);
            upper = d1 * d1 * d1 * d1 * (n - d2) * (n - d2) * (n - d2) * (n - d2 - 1);
            break;
    }
    c.lower_bound = clamp_lower(lower, &c.degenerate_lower);
    c.upper_bound = upper;
    return c;
}

std::vector<SwitchingTuple> find_switchings(const BiregularGraph& g, const Anchor& anchor,
                                            SwitchingKind kind) {
    std::vector<SwitchingTuple> out;
    visit_switchings(g, anchor, kind, [&](const auto& left, const auto& right) {
        out.push_back(SwitchingTuple{kind, std::vector<int>(left.begin(), left.end()),
                                     std::vector<int>(right.begin(), right.end())});
    });
    return out;
}

SwitchingCount count_switchings(const BiregularGraph& g, const Anchor& anchor,
                                SwitchingKind kind) {
    SwitchingCount c = switching_bounds(g.params(), kind);
    long long count = 0;
    visit_switchings(g, anchor, kind, [&](const auto&, const auto&) { ++count; });
    c.value = count;
    return c;
}

BiregularGraph apply_switching(const BiregularGraph& g, const SwitchingTuple& t) {
    const ToggleSpec& spec = toggle_spec(t.kind);
    auto cell = [&](std::pair<int, int> ref) {
        if (ref.first >= static_cast<int>(t.left.size()) ||
            ref.second >= static_cast<int>(t.right.size()))
            throw InvalidSwitching("tuple arity does not match kind");
        return std::pair{t.left[ref.first], t.right[ref.second]};
    };
    for (auto [a, b] : spec.distinct_left)
        if (t.left[a] == t.left[b])
            throw InvalidSwitching("required-distinct left vertices coincide");
    for (auto ref : spec.removes)
        if (auto [u, v] = cell(ref); !g.has_edge(u, v))
            throw InvalidSwitching("edge to remove is absent");
    for (auto ref : spec.adds)
        if (auto [u, v] = cell(ref); g.has_edge(u, v))
            throw InvalidSwitching("edge to add is present");
    for (auto ref : spec.extra_ones)
        if (auto [u, v] = cell(ref); !g.has_edge(u, v))
            throw InvalidSwitching("pattern edge is absent");
    for (auto ref : spec.extra_zeros)
        if (auto [u, v] = cell(ref); g.has_edge(u, v))
            throw InvalidSwitching("pattern non-edge is present");

    std::vector<std::pair<int, int>> removes, adds;
    for (auto ref : spec.removes) removes.push_back(cell(ref));
    for (auto ref : spec.adds) adds.push_back(cell(ref));
    // Coincidences among tuple slots can alias two toggles onto one cell;
    // such tuples do not produce a biregular rewrite.
    auto has_duplicate = [](std::vector<std::pair<int, int>> cells) {
        std::sort(cells.begin(), cells.end());
        return std::adjacent_find(cells.begin(), cells.end()) != cells.end();
    };
    if (has_duplicate(removes) || has_duplicate(adds))
        throw InvalidSwitching("tuple aliases two toggles onto one cell");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.params().edge_count());
    auto removed = [&](int u, int v) {
        return std::find(removes.begin(), removes.end(), std::pair{u, v}) != removes.end();
    };
    for (int u = 0; u < g.params().n; ++u)
        for (int v : g.row_neighbors(u))
            if (!removed(u, v)) edges.emplace_back(u, v);
    for (auto [u, v] : adds) edges.emplace_back(u, v);
    return BiregularGraph(g.params(), edges);
}

SwitchingTuple inverse_tuple(const SwitchingTuple& t) {
    SwitchingTuple inv = t;
    switch (t.kind) {
        case SwitchingKind::Forward: inv.kind = SwitchingKind::Backward; break;
        case SwitchingKind::Backward: inv.kind = SwitchingKind::Forward; break;
        case SwitchingKind::Type1Fwd: inv.kind = SwitchingKind::Type1Bwd; break;
        case SwitchingKind::Type1Bwd: inv.kind = SwitchingKind::Type1Fwd; break;
        case SwitchingKind::Type2Fwd: inv.kind = SwitchingKind::Type2Bwd; break;
        case SwitchingKind::Type2Bwd: inv.kind = SwitchingKind::Type2Fwd; break;
        case SwitchingKind::Type3Fwd: inv.kind = SwitchingKind::Type3Bwd; break;
        case SwitchingKind::Type3Bwd: inv.kind = SwitchingKind::Type3Fwd; break;
    }
    return inv;
}

}  // namespace bbg
