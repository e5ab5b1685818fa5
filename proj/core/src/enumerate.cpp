#include "bbg/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>

#include "bbg/errors.hpp"
#include "bbg/parallel.hpp"

namespace bbg {

GraphFamily::GraphFamily(DegreeParams params, int n_rows, std::vector<std::uint32_t> flat_rows)
    : params_(params), flat_rows_(std::move(flat_rows)) {
    (void)n_rows;
}

BiregularGraph GraphFamily::member(long long index) const {
    if (index < 0 || index >= size()) throw IndexOutOfRange("family member " + std::to_string(index));
    std::vector<std::vector<int>> rows(params_.n);
    for (int u = 0; u < params_.n; ++u) {
        std::uint32_t mask = row_mask(index, u);
        for (int v = 0; v < params_.m; ++v)
            if ((mask >> v) & 1u) rows[u].push_back(v);
    }
    return BiregularGraph(params_, std::move(rows));
}

namespace {

std::uint64_t hash_rows(const std::uint32_t* rows, int n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < n; ++i) {
        h ^= rows[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

void GraphFamily::build_index() const {
    if (!index_.empty() || size() == 0) return;
    index_.reserve(static_cast<std::size_t>(size()));
    for (long long i = 0; i < size(); ++i)
        index_[hash_rows(&flat_rows_[static_cast<std::size_t>(i) * params_.n], params_.n)]
            .push_back(i);
}

long long GraphFamily::find(const std::vector<std::uint32_t>& rows) const {
    build_index();
    auto it = index_.find(hash_rows(rows.data(), params_.n));
    if (it == index_.end()) return -1;
    for (long long i : it->second)
        if (std::equal(rows.begin(), rows.end(),
                       flat_rows_.begin() + static_cast<std::size_t>(i) * params_.n))
            return i;
    return -1;
}

bool gale_ryser_feasible(const DegreeParams& p) {
    if (static_cast<long long>(p.n) * p.d1 != static_cast<long long>(p.m) * p.d2) return false;
    if (p.d1 > p.m || p.d2 > p.n || p.d1 < 0 || p.d2 < 0) return false;
    // Uniform margins: need k*d1 <= sum_j min(d2, k) = m*min(d2, k) for all k.
    for (int k = 1; k <= p.n; ++k)
        if (static_cast<long long>(k) * p.d1 >
            static_cast<long long>(p.m) * std::min(p.d2, k))
            return false;
    return true;
}

namespace {

struct Search {
    DegreeParams p;
    std::vector<std::uint32_t> required;   // per row, forced-one mask
    std::vector<std::uint32_t> forbidden;  // per row, forced-zero mask
    long long cap = 0;
    std::atomic<long long>* total = nullptr;

    // DFS over rows; within a row, columns are scanned in increasing order
    // so members come out lexicographically sorted by row-mask vector.
    void enumerate_row(int row, std::vector<int>& col_used, std::vector<std::uint32_t>& stack,
                       std::vector<std::uint32_t>& out) {
        if (row == p.n) {
            if (total->fetch_add(1) + 1 > cap)
                throw SizeLimitExceeded("family exceeds member cap of " + std::to_string(cap));
            out.insert(out.end(), stack.begin(), stack.end());
            return;
        }
        choose(row, 0, 0, p.d1, col_used, stack, out);
    }

    void choose(int row, int from_col, std::uint32_t mask, int remaining,
                std::vector<int>& col_used, std::vector<std::uint32_t>& stack,
                std::vector<std::uint32_t>& out) {
        if (remaining == 0) {
            // No required column may remain unpicked.
            if ((required[row] & ~mask) != 0) return;
            if (!row_feasible(row, col_used)) return;
            stack.push_back(mask);
            enumerate_row(row + 1, col_used, stack, out);
            stack.pop_back();
            return;
        }
        if (p.m - from_col < remaining) return;
        for (int v = from_col; v <= p.m - remaining; ++v) {
            const bool is_required = (required[row] >> v) & 1u;
            const bool is_forbidden = (forbidden[row] >> v) & 1u;
            const bool has_capacity = col_used[v] < p.d2;
            if (is_required && (is_forbidden || !has_capacity)) return;
            if (!is_forbidden && has_capacity) {
                ++col_used[v];
                choose(row, v + 1, mask | (1u << v), remaining - 1, col_used, stack, out);
                --col_used[v];
            }
            if (is_required) return;  // skipping a required column is dead
        }
    }

    // Every column must still be fillable by the remaining rows.
    bool row_feasible(int row, const std::vector<int>& col_used) const {
        const int remaining_rows = p.n - row - 1;
        for (int v = 0; v < p.m; ++v)
            if (p.d2 - col_used[v] > remaining_rows) return false;
        return true;
    }
};

}  // namespace

GraphFamily enumerate_family(const DegreeParams& params, const EdgeConstraint& constraint,
                             const EnumerateOptions& options) {
    params.validate();
    if (params.m > 32) throw SizeLimitExceeded("enumeration requires m <= 32");
    if (!gale_ryser_feasible(params))
        throw InfeasibleMargins("margins of (" + std::to_string(params.n) + "," +
                                std::to_string(params.m) + "," + std::to_string(params.d1) + "," +
                                std::to_string(params.d2) + ") are not realizable");

    // Optional column relabeling; perm[v] = search-space column of real column v.
    std::vector<int> perm(params.m);
    std::iota(perm.begin(), perm.end(), 0);
    if (options.column_order) {
        if (static_cast<int>(options.column_order->size()) != params.m)
            throw IndexOutOfRange("column_order size mismatch");
        perm = *options.column_order;
    }

    Search search;
    search.p = params;
    search.cap = options.member_cap;
    search.required.assign(params.n, 0);
    search.forbidden.assign(params.n, 0);
    for (auto [u, v] : constraint.forced_ones) {
        if (u < 0 || u >= params.n || v < 0 || v >= params.m)
            throw IndexOutOfRange("forced one out of range");
        search.required[u] |= 1u << perm[v];
    }
    for (auto [u, v] : constraint.forced_zeros) {
        if (u < 0 || u >= params.n || v < 0 || v >= params.m)
            throw IndexOutOfRange("forced zero out of range");
        search.forbidden[u] |= 1u << perm[v];
    }
    for (int u = 0; u < params.n; ++u)
        if ((search.required[u] & search.forbidden[u]) != 0)
            throw InfeasibleMargins("an edge is both forced one and forced zero");

    std::atomic<long long> total{0};
    search.total = &total;

    // First-row candidates, then one parallel subtree per candidate; slots
    // are spliced in candidate order so the result stays canonical.
    std::vector<std::uint32_t> first_masks;
    {
        auto gen = [&](auto&& self, int from_col, std::uint32_t mask, int remaining) -> void {
            if (remaining == 0) {
                if ((search.required[0] & ~mask) == 0) first_masks.push_back(mask);
                return;
            }
            for (int v = from_col; v <= params.m - remaining; ++v) {
                const bool is_required = (search.required[0] >> v) & 1u;
                const bool is_forbidden = (search.forbidden[0] >> v) & 1u;
                if (is_required && is_forbidden) return;
                if (!is_forbidden) self(self, v + 1, mask | (1u << v), remaining - 1);
                if (is_required) return;
            }
        };
        gen(gen, 0, 0, params.d1);
    }

    std::vector<std::vector<std::uint32_t>> slots(first_masks.size());
    parallel_for(
        static_cast<long long>(first_masks.size()),
        [&](long long i) {
            Search local = search;
            std::vector<int> used(params.m, 0);
            std::uint32_t mask = first_masks[i];
            for (int v = 0; v < params.m; ++v)
                if ((mask >> v) & 1u) ++used[v];
            if (!local.row_feasible(0, used)) return;
            std::vector<std::uint32_t> stack{mask};
            local.enumerate_row(1, used, stack, slots[i]);
        },
        options.threads);

    std::vector<std::uint32_t> flat;
    flat.reserve(static_cast<std::size_t>(total.load()) * params.n);
    for (auto& slot : slots) flat.insert(flat.end(), slot.begin(), slot.end());

    if (options.column_order) {
        // Map back to real column labels.
        std::vector<int> inverse(params.m);
        for (int v = 0; v < params.m; ++v) inverse[perm[v]] = v;
        for (auto& mask : flat) {
            std::uint32_t mapped = 0;
            for (int v = 0; v < params.m; ++v)
                if ((mask >> v) & 1u) mapped |= 1u << inverse[v];
            mask = mapped;
        }
    }

    // The search emits rows by ascending column lists, which is not the
    // numeric mask order the canonical form promises; sort unconditionally
    // so permuted runs and the plain run agree member for member.
    {
        const long long count = static_cast<long long>(flat.size()) / params.n;
        std::vector<long long> order(count);
        std::iota(order.begin(), order.end(), 0);
        auto less = [&](long long a, long long b) {
            return std::lexicographical_compare(
                flat.begin() + a * params.n, flat.begin() + (a + 1) * params.n,
                flat.begin() + b * params.n, flat.begin() + (b + 1) * params.n);
        };
        std::sort(order.begin(), order.end(), less);
        std::vector<std::uint32_t> sorted;
        sorted.reserve(flat.size());
        for (long long i : order)
            sorted.insert(sorted.end(), flat.begin() + i * params.n,
                          flat.begin() + (i + 1) * params.n);
        flat = std::move(sorted);
    }

    return GraphFamily(params, params.n, std::move(flat));
}

Rational family_ratio(const DegreeParams& params, const EdgeConstraint& constraint,
                      const EnumerateOptions& options) {
    GraphFamily constrained = enumerate_family(params, constraint, options);
    GraphFamily full = enumerate_family(params, {}, options);
    return Rational(constrained.size(), full.size());
}

std::string dump_family(const GraphFamily& family) {
    std::string out;
    for (long long i = 0; i < family.size(); ++i) {
        if (i > 0) out += "\n";
        out += serialize(family.member(i));
    }
    return out;
}

}  // namespace bbg
