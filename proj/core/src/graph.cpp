#include "bbg/graph.hpp"

#include <algorithm>

#include "bbg/errors.hpp"

namespace bbg {

void DegreeParams::validate() const {
    if (n < 1 || m < 1 || d1 < 1 || d2 < 1)
        throw ParamInconsistency("all of n, m, d1, d2 must be positive");
    if (static_cast<long long>(n) * d1 != static_cast<long long>(m) * d2)
        throw ParamInconsistency("n*d1 != m*d2 (" + std::to_string(n) + "*" + std::to_string(d1) +
                                 " != " + std::to_string(m) + "*" + std::to_string(d2) + ")");
    if (d2 > d1) throw ParamInconsistency("d2 > d1 not supported (convention d1 >= d2)");
    if (d1 > m) throw ParamInconsistency("d1 > m: a row cannot hold d1 distinct columns");
    if (d2 > n) throw ParamInconsistency("d2 > n: a column cannot hold d2 distinct rows");
}

BiregularGraph::BiregularGraph(DegreeParams params,
                               const std::vector<std::pair<int, int>>& edges)
    : params_(params) {
    params_.validate();
    row_adj_.assign(params_.n, {});
    col_adj_.assign(params_.m, {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= params_.n || v < 0 || v >= params_.m)
            throw IndexOutOfRange("edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        row_adj_[u].push_back(v);
        col_adj_[v].push_back(u);
    }
    for (int u = 0; u < params_.n; ++u) {
        auto& r = row_adj_[u];
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end())
            throw DuplicateEdge("row " + std::to_string(u));
        if (static_cast<int>(r.size()) != params_.d1)
            throw DegreeViolation("row " + std::to_string(u) + " has degree " +
                                  std::to_string(r.size()) + ", expected " +
                                  std::to_string(params_.d1));
    }
    for (int v = 0; v < params_.m; ++v) {
        auto& c = col_adj_[v];
        std::sort(c.begin(), c.end());
        if (static_cast<int>(c.size()) != params_.d2)
            throw DegreeViolation("column " + std::to_string(v) + " has degree " +
                                  std::to_string(c.size()) + ", expected " +
                                  std::to_string(params_.d2));
    }
}

BiregularGraph::BiregularGraph(DegreeParams params, std::vector<std::vector<int>> rows)
    : BiregularGraph(params, [&] {
          std::vector<std::pair<int, int>> edges;
          for (int u = 0; u < static_cast<int>(rows.size()); ++u)
              for (int v : rows[u]) edges.emplace_back(u, v);
          if (static_cast<int>(rows.size()) != params.n)
              throw DegreeViolation("expected " + std::to_string(params.n) + " rows, got " +
                                    std::to_string(rows.size()));
          return edges;
      }()) {}

BiregularGraph::BiregularGraph(Unchecked, DegreeParams params,
                               std::vector<std::vector<int>> rows,
                               std::vector<std::vector<int>> cols)
    : params_(params), row_adj_(std::move(rows)), col_adj_(std::move(cols)) {}

BiregularGraph BiregularGraph::unchecked(DegreeParams params, std::vector<std::vector<int>> rows,
                                         std::vector<std::vector<int>> cols) {
    return BiregularGraph(Unchecked{}, params, std::move(rows), std::move(cols));
}

const std::vector<int>& BiregularGraph::row_neighbors(int u) const {
    if (u < 0 || u >= params_.n) throw IndexOutOfRange("left vertex " + std::to_string(u));
    return row_adj_[u];
}

const std::vector<int>& BiregularGraph::col_neighbors(int v) const {
    if (v < 0 || v >= params_.m) throw IndexOutOfRange("right vertex " + std::to_string(v));
    return col_adj_[v];
}

bool BiregularGraph::has_edge(int u, int v) const {
    if (u < 0 || u >= params_.n || v < 0 || v >= params_.m)
        throw IndexOutOfRange("(" + std::to_string(u) + "," + std::to_string(v) + ")");
    const auto& r = row_adj_[u];
    return std::binary_search(r.begin(), r.end(), v);
}

int BiregularGraph::codegree(int i, int j) const {
    const auto& a = row_neighbors(i);
    const auto& b = row_neighbors(j);
    int count = 0;
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] == b[y]) {
            ++count, ++x, ++y;
        } else if (a[x] < b[y]) {
            ++x;
        } else {
            ++y;
        }
    }
    return count;
}

std::vector<std::uint64_t> BiregularGraph::row_mask_key() const {
    if (params_.m > 64) throw SizeLimitExceeded("row_mask_key requires m <= 64");
    std::vector<std::uint64_t> key(params_.n, 0);
    for (int u = 0; u < params_.n; ++u)
        for (int v : row_adj_[u]) key[u] |= (1ULL << v);
    return key;
}

CodegreeMatrix codegree_matrix(const BiregularGraph& g) {
    const int n = g.params().n;
    CodegreeMatrix M;
    M.n = n;
    M.entries.assign(static_cast<std::size_t>(n) * n, 0);
    // Accumulate column-wise: each right vertex contributes 1 to every
    // ordered pair of its d2 neighbors.
    for (int v = 0; v < g.params().m; ++v) {
        const auto& c = g.col_neighbors(v);
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) {
                M.entries[static_cast<std::size_t>(c[a]) * n + c[b]] += 1;
                M.entries[static_cast<std::size_t>(c[b]) * n + c[a]] += 1;
            }
    }
    return M;
}

std::string serialize(const BiregularGraph& g) {
    const auto& p = g.params();
    std::string out = "BBG1 " + std::to_string(p.n) + " " + std::to_string(p.m) + " " +
                      std::to_string(p.d1) + " " + std::to_string(p.d2) + "\n";
    for (int u = 0; u < p.n; ++u) {
        out += std::to_string(u) + ":";
        for (int v : g.row_neighbors(u)) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, col, what); }

    void expect(char c, const char* what) {
        if (done() || peek() != c) fail(what);
        advance();
    }
    int read_int() {
        if (done() || peek() < '0' || peek() > '9') fail("expected integer");
        long long value = 0;
        while (!done() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000'000LL) fail("integer too large");
            advance();
        }
        return static_cast<int>(value);
    }
};

}  // namespace

BiregularGraph deserialize(const std::string& text) {
    Cursor c{text};
    for (const char ch : {'B', 'B', 'G', '1'}) c.expect(ch, "expected BBG1 header");
    c.expect(' ', "expected space after BBG1");
    DegreeParams p;
    p.n = c.read_int();
    c.expect(' ', "expected space");
    p.m = c.read_int();
    c.expect(' ', "expected space");
    p.d1 = c.read_int();
    c.expect(' ', "expected space");
    p.d2 = c.read_int();
    c.expect('\n', "expected newline after header");
    try {
        p.validate();
    } catch (const Error&) {
        throw;  // ParamInconsistency surfaces as-is per the format contract
    }
    std::vector<std::vector<int>> rows(p.n);
    for (int u = 0; u < p.n; ++u) {
        if (c.read_int() != u) c.fail("rows must appear in order 0..n-1");
        c.expect(':', "expected ':' after row index");
        for (int k = 0; k < p.d1; ++k) {
            c.expect(' ', "expected space before neighbor");
            rows[u].push_back(c.read_int());
        }
        c.expect('\n', "expected newline at end of row (no trailing whitespace)");
        if (!std::is_sorted(rows[u].begin(), rows[u].end()))
            c.fail("neighbors must be sorted ascending");
    }
    if (!c.done()) c.fail("trailing content after last row");
    return BiregularGraph(p, std::move(rows));
}

}  // namespace bbg
