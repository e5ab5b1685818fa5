#include "doctest.h"

#include "bbg/errors.hpp"
#include "bbg/graph.hpp"

using namespace bbg;

namespace {

BiregularGraph cycle8() {
    // (4,4,2,2): left u joined to columns u and u+1 mod 4 -> an 8-cycle.
    return BiregularGraph(DegreeParams{4, 4, 2, 2},
                          std::vector<std::vector<int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

}  // namespace

TEST_CASE("degree params validation") {
    CHECK_NOTHROW((DegreeParams{3, 3, 2, 2}).validate());
    CHECK_NOTHROW((DegreeParams{6, 9, 3, 2}).validate());
    CHECK_THROWS_AS((DegreeParams{3, 3, 2, 1}).validate(), ParamInconsistency);  // 6 != 3
    CHECK_THROWS_AS((DegreeParams{9, 6, 2, 3}).validate(), ParamInconsistency);  // d2 > d1
    CHECK_THROWS_AS((DegreeParams{0, 0, 0, 0}).validate(), ParamInconsistency);
    CHECK((DegreeParams{6, 9, 3, 2}).edge_count() == 18);
}

TEST_CASE("graph construction validates edges") {
    DegreeParams p{3, 3, 2, 2};
    std::vector<std::pair<int, int>> edges{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}};
    BiregularGraph g(p, edges);
    CHECK(g.has_edge(0, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK((g.row_neighbors(1) == std::vector<int>{1, 2}));
    CHECK((g.col_neighbors(2) == std::vector<int>{1, 2}));

    auto bad = edges;
    bad[1] = {0, 0};
    CHECK_THROWS_AS(BiregularGraph(p, bad), DuplicateEdge);
    bad[1] = {0, 3};
    CHECK_THROWS_AS(BiregularGraph(p, bad), IndexOutOfRange);
    bad[1] = {1, 0};
    CHECK_THROWS_AS(BiregularGraph(p, bad), DegreeViolation);
}

TEST_CASE("codegree") {
    BiregularGraph g = cycle8();
    CHECK(g.codegree(0, 0) == 2);
    CHECK(g.codegree(0, 1) == 1);  // share column 1
    CHECK(g.codegree(0, 2) == 0);
    CodegreeMatrix cd = codegree_matrix(g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(cd.at(i, j) == g.codegree(i, j));
}

TEST_CASE("serialize round trip") {
    BiregularGraph g = cycle8();
    std::string text = serialize(g);
    CHECK(text == "BBG1 4 4 2 2\n0: 0 1\n1: 1 2\n2: 2 3\n3: 0 3\n");
    CHECK(deserialize(text) == g);
    CHECK(serialize(deserialize(text)) == text);
}

TEST_CASE("deserialize reports position") {
    CHECK_THROWS_AS(deserialize("BBG2 1 1 1 1\n"), ParseError);
    try {
        deserialize("BBG1 4 4 2 2\n0: 0 1\n1: 1  2\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    // unsorted neighbors rejected
    CHECK_THROWS_AS(deserialize("BBG1 4 4 2 2\n0: 1 0\n1: 1 2\n2: 2 3\n3: 0 3\n"), ParseError);
    // degree violations surface from graph validation, not the parser
    CHECK_THROWS_AS(deserialize("BBG1 3 3 2 1\n"), ParamInconsistency);
}
