#include "doctest.h"

#include <algorithm>

#include "bbg/coupling.hpp"
#include "bbg/errors.hpp"
#include "bbg/stats.hpp"

using namespace bbg;

TEST_CASE("single-mode meta-graph degrees and weights") {
    MetaGraph g0 = build_meta_graph(DegreeParams{5, 5, 2, 2}, Anchor{0, -1, 0}, false);
    CHECK(g0.left_family().size() == 2040);
    CHECK(g0.right_family().size() == 816);  // 2040 * 2/5
    // Identity edges carry weight d1^2 d2 (n-d2) = 24; the anchored members
    // sit at exactly that degree, the rest within the forward bracket.
    for (long long d : g0.left_degrees()) {
        CHECK(d >= 8);
        CHECK(d <= 24);
    }
    for (long long d : g0.right_degrees()) {
        CHECK(d >= 36);  // d1^2 (n-d2)^2
        CHECK(d <= 60);  // d1^2 n (n-d2)
    }
}

TEST_CASE("identity edge weight example") {
    MetaGraph g0 = build_meta_graph(DegreeParams{3, 3, 2, 2}, Anchor{0, -1, 0}, false);
    CHECK(g0.identity_weight() == 8);  // 4 * 2 * 1
    bool saw_identity = false;
    for (const auto& e : g0.edges())
        if (e.weight == 8) saw_identity = true;
    CHECK(saw_identity);
}

TEST_CASE("completion reaches exact degrees") {
    MetaGraph g0 = build_meta_graph(DegreeParams{3, 3, 2, 2}, Anchor{0, -1, 0}, false);
    MetaGraph done = complete_meta_graph(g0);
    CHECK(done.completed());
    for (long long d : done.left_degrees()) CHECK(d == 8);
    for (long long d : done.right_degrees()) CHECK(d == 12);
    CHECK(6 * 8 == 4 * 12);  // |G| w_left == |G_00| w_right
    CHECK_THROWS_AS(complete_meta_graph(done), CompletionImpossible);
}

TEST_CASE("pair-mode degrees and completion cross-check") {
    MetaGraph g0 = build_meta_graph(DegreeParams{5, 5, 2, 2}, Anchor{0, 1, 0}, true);
    CHECK(g0.right_family().size() == 204);
    for (long long d : g0.left_degrees()) CHECK(d <= 288);
    for (long long d : g0.right_degrees()) {
        CHECK(d >= 576);
        CHECK(d <= 2880);
    }
    CHECK(2040 * g0.left_target_degree() == 204 * g0.right_target_degree());
    MetaGraph done = complete_meta_graph(g0);
    for (long long d : done.left_degrees()) CHECK(d == 288);
    for (long long d : done.right_degrees()) CHECK(d == 2880);
}

TEST_CASE("tiny coupled step is uniform on the constrained family") {
    MetaGraph done =
        complete_meta_graph(build_meta_graph(DegreeParams{3, 3, 2, 2}, Anchor{0, -1, 0}, false));
    Rng rng = make_rng(7);
    std::uniform_int_distribution<long long> src(0, done.left_family().size() - 1);
    const long long trials = 40000;
    std::vector<long long> counts(static_cast<std::size_t>(done.right_family().size()), 0);
    long long in_b = 0;
    for (long long i = 0; i < trials; ++i) {
        CoupledStepOutcome out = coupled_step(done, src(rng), rng);
        std::vector<std::uint32_t> rows(3, 0);
        for (int u = 0; u < 3; ++u)
            for (int v : out.target.row_neighbors(u)) rows[u] |= 1u << v;
        ++counts[static_cast<std::size_t>(done.right_family().find(rows))];
        if (out.in_B) ++in_b;
    }
    CHECK(uniform_chi_square_p(counts) > 0.001);
    // P(B) >= p = 1 - d1/m = 1/3 with slack
    CHECK(static_cast<double>(in_b) / trials > 1.0 / 3 - 0.02);
}

TEST_CASE("scalable step stays inside the switch graph") {
    MetaGraph g0 = build_meta_graph(DegreeParams{5, 5, 2, 2}, Anchor{0, -1, 0}, false);
    Rng rng = make_rng(11);
    for (long long i = 0; i < g0.left_family().size(); i += 101) {
        BiregularGraph g = g0.left_family().member(i);
        CoupledStepOutcome out = coupled_step_scalable(g, Anchor{0, -1, 0}, false, rng);
        CHECK(out.in_B);
        CHECK(out.residual_mass >= 0.0);
        // residual is the G-minus-G0 fraction, at most d1/m at any vertex
        // of the completed graph; the per-source bound is 1 - s/target.
        CHECK(out.residual_mass <= 1.0);
        if (g.has_edge(0, 0)) {
            CHECK(out.target == g);
            CHECK(out.residual_mass == 0.0);
        } else {
            CHECK(out.target.has_edge(0, 0));
            REQUIRE(out.switching_used.has_value());
            CHECK(apply_switching(g, *out.switching_used) == out.target);
        }
    }
}

TEST_CASE("meta-graph dump format") {
    MetaGraph g0 = build_meta_graph(DegreeParams{2, 2, 1, 1}, Anchor{0, -1, 0}, false);
    // Two members, one with the edge (identity), one connected by switching.
    std::string dump = g0.dump();
    CHECK(dump.find(' ') != std::string::npos);
    CHECK(std::count(dump.begin(), dump.end(), '\n') ==
          static_cast<long long>(g0.edges().size()));
}
