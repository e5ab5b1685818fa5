#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bbg {

/// The quadruple (n, m, d1, d2). n left vertices of degree d1, m right
/// vertices of degree d2; validity forces n*d1 == m*d2.
struct DegreeParams {
    int n = 0;
    int m = 0;
    int d1 = 0;
    int d2 = 0;

    /// Throws ParamInconsistency unless n*d1 == m*d2, 1 <= d2 <= d1 <= m
    /// and d2 <= n.
    void validate() const;

    long long edge_count() const { return static_cast<long long>(n) * d1; }

    bool operator==(const DegreeParams&) const = default;
};

/// A bipartite biregular graph as a 0/1 biadjacency structure. Immutable
/// after construction; both the row index (left -> sorted right neighbors)
/// and the column index are kept because switchings query both sides.
class BiregularGraph {
public:
    /// build_graph: validates degrees, ranges and duplicates.
    BiregularGraph(DegreeParams params, const std::vector<std::pair<int, int>>& edges);

    /// Same validation, starting from per-row neighbor lists.
    BiregularGraph(DegreeParams params, std::vector<std::vector<int>> rows);

    const DegreeParams& params() const { return params_; }

    const std::vector<int>& row_neighbors(int u) const;
    const std::vector<int>& col_neighbors(int v) const;

    bool has_edge(int u, int v) const;

    /// |{v : X_uv = X_jv = 1}|; codegree(i,i) = d1.
    int codegree(int i, int j) const;

    /// Row bitmasks (requires m <= 64); canonical key for family indexing.
    std::vector<std::uint64_t> row_mask_key() const;

    bool operator==(const BiregularGraph& other) const {
        return params_ == other.params_ && row_adj_ == other.row_adj_;
    }

private:
    friend class SwitchChain;
    struct Unchecked {};
    // Fast path for callers that guarantee validity (sampler, switchings).
    BiregularGraph(Unchecked, DegreeParams params, std::vector<std::vector<int>> rows,
                   std::vector<std::vector<int>> cols);
    static BiregularGraph unchecked(DegreeParams params, std::vector<std::vector<int>> rows,
                                    std::vector<std::vector<int>> cols);

    DegreeParams params_;
    std::vector<std::vector<int>> row_adj_;
    std::vector<std::vector<int>> col_adj_;
};

/// M = X X^T - d1 I held as a dense symmetric n x n integer matrix with
/// zero diagonal. Row sums equal d1*(d2-1).
struct CodegreeMatrix {
    int n = 0;
    std::vector<int> entries;  // row-major n*n

    int at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

CodegreeMatrix codegree_matrix(const BiregularGraph& g);

/// BBG1 text format:
///   BBG1 <n> <m> <d1> <d2>
///   <u>: <v_1> ... <v_d1>      (sorted, 0-based, one line per left vertex)
/// LF endings, no trailing whitespace. serialize/deserialize round-trip
/// bit-exactly on canonical input.
std::string serialize(const BiregularGraph& g);
BiregularGraph deserialize(const std::string& text);

}  // namespace bbg
