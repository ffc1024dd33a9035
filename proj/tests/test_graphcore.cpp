#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "emlab/graphcore.hpp"

using namespace emlab;

TEST_CASE("basic graph operations") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 1, 2); // accumulates onto {1,2}
    CHECK(g.weight(0, 1) == 1);
    CHECK(g.weight(1, 0) == 1);
    CHECK(g.weight(1, 2) == 5);
    CHECK(g.weight(0, 3) == 0);
    CHECK(g.weighted_degree(1) == 6);
    CHECK(g.weighted_degree(3) == 0);
    CHECK(edge_unit_count(g) == 6);
    CHECK(max_degree(g) == 6);
    CHECK_FALSE(is_connected(g));
    g.add_edge(2, 3);
    CHECK(is_connected(g));
    CHECK_THROWS_AS(g.add_edge(0, 0), Error);
    CHECK_THROWS_AS(g.add_edge(0, 4), Error);
    CHECK_THROWS_AS(g.add_edge(0, 1, 0), Error);
}

TEST_CASE("serialization of K4 is frozen") {
    CHECK(serialize(complete_graph(4)) ==
          "graph v1 4\n0 1 1\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n2 3 1\n");
}

TEST_CASE("serialize and deserialize are mutually inverse") {
    for (const Graph& g : {petersen(), complete_graph(7), cycle_graph(9),
                           build_G_of_H(petersen(), 11)}) {
        std::string text = serialize(g);
        Graph back = deserialize(text);
        CHECK(back.n == g.n);
        CHECK(serialize(back) == text);
    }
    // weighted edges survive the round trip
    Graph g(3);
    g.add_edge(0, 1, 5);
    g.add_edge(1, 2, 2);
    CHECK(serialize(deserialize(serialize(g))) == serialize(g));
    CHECK(build_G_of_H(petersen(), 11).n == 640);
}

TEST_CASE("deserialize rejects malformed input with line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            deserialize(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("") == 1);
    CHECK(line_of("digraph v1 4\n") == 1);
    CHECK(line_of("graph v2 4\n") == 1);
    CHECK(line_of("graph v1\n") == 1);
    CHECK(line_of("graph v1 4 junk\n") == 1);
    CHECK(line_of("graph v1 x\n") == 1);
    CHECK(line_of("graph v1 -1\n") == 1);
    CHECK(line_of("graph v1 4\n0 1\n") == 2);
    CHECK(line_of("graph v1 4\n0 1 1 9\n") == 2);
    CHECK(line_of("graph v1 4\n0 4 1\n") == 2);
    CHECK(line_of("graph v1 4\n1 0 1\n") == 2);
    CHECK(line_of("graph v1 4\n1 1 1\n") == 2);
    CHECK(line_of("graph v1 4\n0 1 0\n") == 2);
    CHECK(line_of("graph v1 4\n0 1 1\n0 1 1\n") == 3);
    CHECK(line_of("graph v1 4\n0 2 1\n0 1 1\n") == 3);
    CHECK(line_of("graph v1 4\n0 1 1\n\n1 2 1\n") == 3);
    // final newline is optional
    CHECK(deserialize("graph v1 2\n0 1 1").weight(0, 1) == 1);
    CHECK(deserialize("graph v1 0\n").n == 0);
}

TEST_CASE("cayley graphs of small groups") {
    // Z4 with {1, 3} is the 4-cycle
    auto z4 = make_cyclic(4);
    auto c4 = cayley_graph(make_generating_set(z4, {GroupElement{{1}}, GroupElement{{3}}}));
    CHECK(serialize(c4) == serialize(cycle_graph(4)));
    CHECK(c4.labels.size() == 4);
    CHECK(c4.labels[0] == "(0)");

    // units(5) is cyclic of order 4 generated by 2; {2, 3} gives the 4-cycle
    auto u5 = make_units(5);
    auto cu = cayley_graph(make_generating_set(u5, {GroupElement{{2}}, GroupElement{{3}}}));
    CHECK(cu.n == 4);
    for (int64_t v = 0; v < 4; ++v) CHECK(cu.weighted_degree(v) == 2);
    CHECK(is_connected(cu));

    // an involution gives a single weight-1 edge
    auto z2 = make_cyclic(2);
    auto k2 = cayley_graph(make_generating_set(z2, {GroupElement{{1}}}));
    CHECK(k2.weight(0, 1) == 1);
    CHECK(edge_unit_count(k2) == 1);

    // multiset generators become parallel edges: degree equals |S|
    auto c4x2 = cayley_graph(make_generating_set(
        z4, {GroupElement{{1}}, GroupElement{{1}}, GroupElement{{3}}, GroupElement{{3}}}));
    CHECK(c4x2.weight(0, 1) == 2);
    for (int64_t v = 0; v < 4; ++v) CHECK(c4x2.weighted_degree(v) == 4);

    // a non-generating symmetric set gives a disconnected Cayley graph
    auto z6 = make_cyclic(6);
    auto two_triangles =
        cayley_graph(make_generating_set(z6, {GroupElement{{2}}, GroupElement{{4}}}));
    CHECK_FALSE(is_connected(two_triangles));
    CHECK(two_triangles.weighted_degree(0) == 2);

    // the full nonidentity set gives the complete graph
    auto z5 = make_cyclic(5);
    std::vector<GroupElement> all;
    for (int32_t k = 1; k < 5; ++k) all.push_back(GroupElement{{k}});
    CHECK(serialize(cayley_graph(make_generating_set(z5, all))) ==
          serialize(complete_graph(5)));
}

TEST_CASE("cayley graphs are vertex-regular of degree |S|") {
    auto sl2 = make_sl2(3);
    std::vector<GroupElement> gens = {GroupElement{{1, 1, 0, 1}}, GroupElement{{1, 2, 0, 1}},
                                      GroupElement{{1, 0, 1, 1}}, GroupElement{{1, 0, 2, 1}}};
    auto g = cayley_graph(make_generating_set(sl2, gens));
    CHECK(g.n == 24);
    for (int64_t v = 0; v < g.n; ++v) CHECK(g.weighted_degree(v) == 4);
    CHECK(is_connected(g));
}

TEST_CASE("overlay adds edge weights") {
    Graph a(3), b(3);
    a.add_edge(0, 1, 2);
    b.add_edge(0, 1, 1);
    b.add_edge(1, 2, 4);
    Graph c = overlay(a, b);
    CHECK(c.weight(0, 1) == 3);
    CHECK(c.weight(1, 2) == 4);
    CHECK_THROWS_AS(overlay(a, Graph(4)), SizeMismatchError);
}

TEST_CASE("subdividing every edge of C4 in 3 gives C12") {
    Graph c4 = cycle_graph(4);
    Graph out = subdivide(c4, all_edges(c4), 3);
    CHECK(out.n == 12);
    CHECK(is_connected(out));
    for (int64_t v = 0; v < out.n; ++v) CHECK(out.weighted_degree(v) == 2);
    CHECK(edge_unit_count(out) == 12);
}

TEST_CASE("subdivision with m=1 is the identity") {
    Graph g = petersen();
    CHECK(serialize(subdivide(g, all_edges(g), 1)) == serialize(g));
}

TEST_CASE("subdivision respects multiplicities") {
    Graph g(2);
    g.add_edge(0, 1, 3);
    // subdivide one of the three parallel edges into a 2-path
    Graph out = subdivide(g, {{{0, 1, 1}}}, 2);
    CHECK(out.n == 3);
    CHECK(out.weight(0, 1) == 2);
    CHECK(out.weight(0, 2) == 1);
    CHECK(out.weight(2, 1) == 1);
    CHECK(out.weighted_degree(0) == 3);
    CHECK(out.weighted_degree(1) == 3);

    // subdividing two copies appends path vertices copy by copy
    Graph out2 = subdivide(g, {{{0, 1, 2}}}, 3);
    CHECK(out2.n == 2 + 2 * 2);
    CHECK(out2.weight(0, 1) == 1);
    CHECK(out2.weight(0, 2) == 1);
    CHECK(out2.weight(2, 3) == 1);
    CHECK(out2.weight(3, 1) == 1);
    CHECK(out2.weight(0, 4) == 1);
    CHECK(out2.weight(4, 5) == 1);
    CHECK(out2.weight(5, 1) == 1);

    CHECK_THROWS_AS(subdivide(g, {{{0, 1, 4}}}, 2), InvalidSelectionError);
    CHECK_THROWS_AS(subdivide(g, {{{0, 1, 1}, {1, 0, 3}}}, 2), InvalidSelectionError);
    Graph h(3);
    h.add_edge(0, 1);
    CHECK_THROWS_AS(subdivide(h, {{{0, 2, 1}}}, 2), InvalidSelectionError);
    CHECK_THROWS_AS(subdivide(h, {{{0, 1, 0}}}, 2), InvalidSelectionError);
    CHECK_THROWS_AS(subdivide(h, {{{0, 1, 1}}}, 0), DomainError);
}

TEST_CASE("two-level construction over a 3-regular base") {
    // K4 is 3-regular on 4 vertices
    Graph g = build_G_of_H(complete_graph(4), 2);
    CHECK(g.n == (6 * 2 - 2) * 4);
    CHECK(is_connected(g));
    std::map<int64_t, int64_t> degree_hist;
    for (int64_t v = 0; v < g.n; ++v) degree_hist[g.weighted_degree(v)]++;
    CHECK(degree_hist[6] == 16);
    CHECK(degree_hist[2] == 24);
    CHECK(degree_hist.size() == 2);

    // petersen, longer paths
    Graph gp = build_G_of_H(petersen(), 5);
    CHECK(gp.n == (6 * 5 - 2) * 10);
    CHECK(is_connected(gp));
    std::map<int64_t, int64_t> hist2;
    for (int64_t v = 0; v < gp.n; ++v) hist2[gp.weighted_degree(v)]++;
    CHECK(hist2[6] == 40);
    CHECK(hist2[2] == 240);

    // the first 4N vertices keep their K4-block structure
    for (int64_t v = 0; v < 10; ++v)
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                CHECK(gp.weight(4 * v + i, 4 * v + j) == 1);

    CHECK_THROWS_AS(build_G_of_H(cycle_graph(5), 3), NotRegularError);
    CHECK_THROWS_AS(build_G_of_H(complete_graph(4), 1), TooSmallError);
}

TEST_CASE("named small graphs") {
    Graph p = petersen();
    CHECK(p.n == 10);
    CHECK(edge_unit_count(p) == 15);
    for (int64_t v = 0; v < 10; ++v) CHECK(p.weighted_degree(v) == 3);
    CHECK(is_connected(p));
    // girth 5: no edge between inner neighbors of adjacent outer vertices
    CHECK(p.weight(5, 6) == 0);
    CHECK(p.weight(5, 7) == 1);

    CHECK(complete_graph(1).n == 1);
    CHECK(edge_unit_count(complete_graph(6)) == 15);
    CHECK(cycle_graph(3).n == 3);
    CHECK_THROWS_AS(cycle_graph(2), DomainError);
}
