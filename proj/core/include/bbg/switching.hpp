#pragma once

#include <string>
#include <vector>

#include "bbg/graph.hpp"

namespace bbg {

/// The eight rewrite kinds: the 6-vertex forward/backward pair anchored at
/// one entry (u1,v1), and the Type 1/2/3 pairs anchored at (u1,u2,v1).
enum class SwitchingKind {
    Forward,
    Backward,
    Type1Fwd,
    Type1Bwd,
    Type2Fwd,
    Type2Bwd,
    Type3Fwd,
    Type3Bwd,
};

const char* to_string(SwitchingKind kind);
bool is_pair_kind(SwitchingKind kind);

/// Anchor for a switching search: (u1,v1), with u2 used by the pair kinds.
struct Anchor {
    int u1 = 0;
    int u2 = -1;  // ignored for Forward/Backward
    int v1 = 0;
};

/// An ordered vertex tuple naming one switching. left = (u1,u2,u3[,u4,u5,u6]),
/// right = (v1,v2,v3[,v4,v5]).
struct SwitchingTuple {
    SwitchingKind kind{};
    std::vector<int> left;
    std::vector<int> right;
};

struct SwitchingCount {
    long long value = 0;
    long long lower_bound = 0;  // clamped to 0 when the formula goes negative
    long long upper_bound = 0;
    bool degenerate_lower = false;  // true when the clamp fired
};

/// Formula brackets of the switching-count lemmas, before measuring anything.
SwitchingCount switching_bounds(const DegreeParams& params, SwitchingKind kind);

/// Exhaustive list of valid switchings of `kind` anchored at `anchor`.
/// Throws AnchorPatternMismatch when the anchor entries do not show the
/// edge pattern the kind requires.
std::vector<SwitchingTuple> find_switchings(const BiregularGraph& g, const Anchor& anchor,
                                            SwitchingKind kind);

/// |find_switchings| together with the formula bracket.
SwitchingCount count_switchings(const BiregularGraph& g, const Anchor& anchor,
                                SwitchingKind kind);

/// Applies one switching, returning a new graph with the same params.
/// Throws InvalidSwitching when the full edge pattern check fails.
BiregularGraph apply_switching(const BiregularGraph& g, const SwitchingTuple& t);

/// The tuple that undoes `t` from apply_switching(g, t).
SwitchingTuple inverse_tuple(const SwitchingTuple& t);

}  // namespace bbg
