#include <catch_amalgamated.hpp>

#include <set>

#include "rgd/augmented.hpp"
#include "rgd/decompose.hpp"
#include "rgd/sample.hpp"

using namespace rgd;

namespace {

LabeledGraph k4() { return LabeledGraph({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

LabeledGraph cycle(std::vector<Label> vs) {
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vs.size(); ++i) es.emplace_back(vs[i], vs[(i + 1) % vs.size()]);
    return LabeledGraph(vs, es);
}

LabeledGraph worked_core() {
    // K4 on 1..4 with 1-2 through 9,5; 1-3 through 8,10,7; 2-3 through 6,11
    return LabeledGraph({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, {{1, 9}, {9, 5}, {5, 2}, {1, 8}, {8, 10}, {10, 7}, {7, 3},
                                                              {1, 4}, {2, 6}, {6, 11}, {11, 3}, {2, 4}, {3, 4}});
}

// Independent core: delete one low-degree vertex at a time until none is left.
std::set<Label> naive_core(const LabeledGraph& g) {
    std::set<Label> alive(g.vertices().begin(), g.vertices().end());
    for (bool changed = true; changed;) {
        changed = false;
        for (Label v : alive) {
            long deg = 0;
            for (Label w : g.neighbours(v)) deg += alive.count(w);
            if (deg <= 1) {
                alive.erase(v);
                changed = true;
                break;
            }
        }
    }
    return alive;
}

LabeledGraph splice(const std::vector<Edge>& fixed, const std::vector<MutableEdge>& mut, std::vector<Label> extra = {}) {
    std::vector<Edge> es = fixed;
    std::vector<Label> vs = std::move(extra);
    for (auto& m : mut) {
        Label prev = m.edge.u;
        for (Label x : m.internal) {
            es.emplace_back(prev, x);
            prev = x;
        }
        es.emplace_back(prev, m.edge.v);
    }
    for (auto& e : es) {
        vs.push_back(e.u);
        vs.push_back(e.v);
    }
    return LabeledGraph(vs, es);
}

template <class F>
void for_small_graphs(long max_n, long max_sum, F&& f) {
    for_each_degree_sequence(max_n, max_sum, [&](const DegreeSequence& d) {
        for_each_graph(d, GraphClass::all, [&](const LabeledGraph& g) { f(g); });
    });
}

}  // namespace

TEST_CASE("core examples") {
    LabeledGraph tree({1, 2, 3, 4}, {{1, 2}, {2, 3}, {2, 4}});
    CHECK(core(tree).empty());
    CHECK(core(cycle({1, 2, 3, 4, 5})) == cycle({1, 2, 3, 4, 5}));
    CHECK(core(worked_core()) == worked_core());
}

TEST_CASE("kernel of the worked core") {
    auto k = kernel(worked_core());
    REQUIRE(k.paths.size() == 6);
    std::vector<std::size_t> sizes;
    for (auto& p : k.paths) sizes.push_back(p.internal.size());
    CHECK(sizes == std::vector<std::size_t>{2, 3, 0, 2, 0, 0});
    CHECK(k.graph.vertices() == std::vector<Label>{1, 2, 3, 4});
    CHECK(k.paths[0].internal == std::vector<Label>{9, 5});
    CHECK(k.paths[1].internal == std::vector<Label>{8, 10, 7});
}

TEST_CASE("kernel special cases") {
    CHECK(kernel(cycle({1, 2, 3, 4})).paths.empty());
    // cycle 2-3-4 with leaves 1 (at 3) and 5 (at 4): loop at α(1) = 3
    LabeledGraph g({1, 2, 3, 4, 5}, {{2, 3}, {3, 4}, {2, 4}, {1, 3}, {4, 5}});
    auto k = kernel(g);
    REQUIRE(k.paths.size() == 1);
    CHECK(k.paths[0].lo == 3);
    CHECK(k.paths[0].hi == 3);
    CHECK(k.paths[0].internal == std::vector<Label>{2, 4});
}

TEST_CASE("attached forest examples") {
    auto f = attached_forest(LabeledGraph({1, 2, 3}, {{1, 3}, {3, 2}}));
    CHECK(f.roots() == std::vector<Label>{3});
    CHECK(f.children(3) == std::vector<Label>{2});
    CHECK(f.height() == 1);
    CHECK(attached_forest(cycle({1, 2, 3})).empty());
    auto g = attached_forest(LabeledGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}}));
    CHECK(g.vertices() == std::vector<Label>{4});
    CHECK(g.height() == 0);
    auto e = decompose_core(LabeledGraph({5, 9}, {{5, 9}}));
    CHECK(e.removed_leaves == std::vector<Label>{5});
    CHECK(e.forest.roots() == std::vector<Label>{9});
}

TEST_CASE("simple kernel examples") {
    auto ks = simple_kernel(k4());
    CHECK(ks.graph == k4());
    CHECK(ks.num_mutable() == 6);
    for (long len : ks.path_lengths()) CHECK(len == 0);

    // loop at 1 through 2,3 plus a pendant 4 at 1
    LabeledGraph loop({1, 2, 3, 4}, {{1, 2}, {2, 3}, {1, 3}, {1, 4}});
    auto kl = simple_kernel(loop);
    CHECK(kl.graph == LabeledGraph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}));
    REQUIRE(kl.num_mutable() == 1);
    CHECK(kl.mutable_edges[0].edge == Edge(2, 3));

    // theta graph: 1-2 direct, 1-2 via 3,4, 1-2 via 5
    LabeledGraph theta({1, 2, 3, 4, 5}, {{1, 2}, {1, 3}, {3, 4}, {4, 2}, {1, 5}, {5, 2}});
    auto kt = simple_kernel(theta);
    CHECK(kt.graph.has_edge(1, 2));
    CHECK_FALSE(kt.is_mutable(1, 2));
    CHECK(kt.is_mutable(1, 4));
    CHECK_FALSE(kt.is_mutable(4, 2));
    CHECK(kt.is_mutable(1, 5));
    CHECK_FALSE(kt.is_mutable(2, 5));
    REQUIRE(kt.num_mutable() == 2);
    CHECK(kt.mutable_edges[0].internal == std::vector<Label>{3});
}

TEST_CASE("simple homeomorphic reduction examples") {
    auto h = simple_homeo_reduction(LabeledGraph({1, 2, 3}, {{1, 3}, {3, 2}}));
    CHECK(h.graph == LabeledGraph({1, 2}, {{1, 2}}));
    REQUIRE(h.num_mutable() == 1);
    CHECK(h.path_lengths() == std::vector<long>{1});
    auto hk = simple_homeo_reduction(k4());
    CHECK(hk.graph == k4());
    CHECK(hk.num_mutable() == 6);
    LabeledGraph mix({1, 2, 3, 4, 5, 6, 7}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {5, 6}, {6, 7}});
    auto hm = simple_homeo_reduction(mix);
    CHECK(hm.graph == LabeledGraph({5, 7}, {{5, 7}}));
    CHECK(hm.suppressed == std::vector<Label>{1, 2, 3, 4, 6});
}

TEST_CASE("cycle vertex counts") {
    LabeledGraph two({1, 2, 3, 4, 5, 6, 7}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {5, 6}, {6, 7}, {5, 7}});
    CHECK(cycle_vertex_count(two) == 7);
    CHECK(cycle_vertex_count(LabeledGraph({1, 2, 3}, {{1, 2}, {2, 3}})) == 0);
    CHECK(cycle_vertex_count(LabeledGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}})) == 0);
}

TEST_CASE("diameter bound parts examples") {
    auto p = diameter_bound_parts(k4());
    REQUIRE(p);
    CHECK(p->forest_empty);
    CHECK(p->core_diameter == 1);
    CHECK(p->kernel_diameter == 1);
    CHECK(p->max_path == 1);
    auto q = diameter_bound_parts(LabeledGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}}));
    REQUIRE(q);
    CHECK(q->forest_height == 0);
    CHECK(q->core_diameter == 1);
    CHECK(q->first_bound() >= 2);
    CHECK_FALSE(diameter_bound_parts(cycle({1, 2, 3, 4, 5, 6})));
    CHECK_THROWS_AS(diameter_bound_parts(LabeledGraph({1, 2, 3, 4}, {{1, 2}, {3, 4}})), InvalidInput);
}

TEST_CASE("decomposition invariants on every small graph") {
    long graphs = 0;
    for_small_graphs(7, 14, [&](const LabeledGraph& g) {
        ++graphs;
        INFO(format_degrees(g.degrees()));
        auto c = core(g);
        auto naive = naive_core(g);
        CHECK(std::vector<Label>(naive.begin(), naive.end()) == c.vertices());
        CHECK(core(c) == c);

        auto dec = decompose_core(g);
        for (Label v : dec.forest.vertices()) CHECK(dec.forest.child_count(v) == static_cast<long>(g.degree(v)) - 1);

        auto k = kernel(g);
        bool all_rich = true;
        for (auto& comp : components(g)) {
            long e = static_cast<long>(detail::edges_within(g, comp));
            if (1 + e - static_cast<long>(comp.size()) < 2) all_rich = false;
        }
        if (all_rich) CHECK(kernel(c).paths == k.paths);

        auto ks = simple_kernel(g);
        // splicing K* back gives the core without its cycle components
        auto cyc = detail::cycle_mask(g);
        std::vector<Label> keep;
        for (Label v : c.vertices())
            if (!cyc[g.index(v)]) keep.push_back(v);
        CHECK(splice(ks.immutable_edges(), ks.mutable_edges) == c.induced(keep));
        CHECK(2 * ks.num_mutable() >= k.paths.size());
        CHECK(ks.num_mutable() <= k.paths.size());
        CHECK(3 * ks.num_mutable() >= ks.graph.num_edges());
        CHECK(diameter(k.graph) <= diameter(ks.graph));
        CHECK(diameter(ks.graph) <= 2 * diameter(k.graph) + 2);

        auto h = simple_homeo_reduction(g, ks);
        std::vector<Edge> fixed;
        for (auto& e : h.graph.edges()) {
            auto ms = h.mutable_set();
            if (!std::binary_search(ms.begin(), ms.end(), e)) fixed.push_back(e);
        }
        for (auto& e : g.induced(h.suppressed).edges())
            if (cyc[g.index(e.u)]) fixed.push_back(e);
        auto back = splice(fixed, h.mutable_edges, h.graph.vertices());
        CHECK(back == g.induced(back.vertices()));
        CHECK(back.num_vertices() == g.num_vertices());
        CHECK(3 * h.num_mutable() >= h.graph.num_edges());

        if (is_connected(g)) {
            if (auto p = diameter_bound_parts(g)) {
                CHECK(diameter(g) <= p->first_bound());
                CHECK(p->core_diameter <= (p->kernel_diameter + 2) * p->max_path);
            } else {
                CHECK(kernel(g).paths.empty());
            }
        }
    });
    CHECK(graphs > 10000);
}

TEST_CASE("diameter bound holds on connected graphs with eight or nine vertices") {
    long checked = 0;
    // non-increasing degrees only; the bound does not depend on labels
    for_each_degree_sequence(9, 18, [&](const DegreeSequence& d) {
        if (d.n() < 8) return;
        for (Label v = 2; v <= d.n(); ++v)
            if (d.at(v) > d.at(v - 1)) return;
        for_each_graph(d, GraphClass::connected, [&](const LabeledGraph& g) {
            if (auto p = diameter_bound_parts(g)) {
                CHECK(diameter(g) <= p->first_bound());
                CHECK(p->core_diameter <= (p->kernel_diameter + 2) * p->max_path);
                ++checked;
            }
        });
    });
    CHECK(checked > 0);
}
