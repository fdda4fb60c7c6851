#include <catch_amalgamated.hpp>

#include <set>

#include "rgd/encode.hpp"
#include "rgd/sample.hpp"
#include "rgd/verify.hpp"

using namespace rgd;

namespace {

LabeledGraph k4() { return LabeledGraph({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

// triangle 1,2,3 with a pendant 4 at 3
LabeledGraph lollipop() { return LabeledGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 1}, {3, 4}}); }

}  // namespace

TEST_CASE("K4 kernel code is forced", "[encode]") {
    auto g = k4();
    auto ks = simple_kernel(g);
    auto code = encode_given_kernel(g, ks);
    CHECK(code.forest.vertices() == std::vector<Label>{1, 2, 3, 4});
    CHECK(code.forest.roots() == std::vector<Label>{1, 2, 3, 4});
    CHECK(code.tree.vertices() == std::vector<Label>{0});
    CHECK(code.composition.parts == std::vector<long>(6, 0));
    CHECK(decode_given_kernel(code, ks) == g);

    auto d = DegreeSequence::of({3, 3, 3, 3});
    auto codes = kernel_codes(d, ks);
    REQUIRE(codes.size() == 1);
    CHECK(codes.front() == code);
    CHECK(enumerate(d, GraphClass::connected).size() == 1);
}

TEST_CASE("kernel code child sequence", "[encode]") {
    auto g = lollipop();
    auto ks = simple_kernel(g);
    auto c = kernel_child_sequence(g.degrees(), ks);
    CHECK(c.at(0) == 0);
    CHECK(c.at(1) == 0);
    CHECK(c.at(2) == 0);
    CHECK(c.at(3) == 1);
    CHECK(c.at(4) == 0);
}

TEST_CASE("unicyclic kernel keeps the minimum leaf under the apex", "[encode]") {
    auto g = lollipop();
    auto ks = simple_kernel(g);
    REQUIRE(detail::s_one(ks));
    CHECK(detail::triangle_apex(ks) == 3);
    CHECK(ks.mutable_set() == std::vector<Edge>{Edge(1, 2)});
    auto code = encode_given_kernel(g, ks);
    CHECK(code.forest.parent(4) == Label{3});
    CHECK(decode_given_kernel(code, ks) == g);

    // hanging the leaf from 1 gives a graph with another kernel
    KernelCodeTriple moved{RootedForest({1, 2, 3, 4}, {{4, 1}}), code.tree, code.composition};
    CHECK_THROWS_AS(decode_given_kernel(moved, ks), InvalidInput);

    // a cycle has an empty kernel, so a leafless unicyclic input never reaches the code
    auto c4 = LabeledGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK(simple_kernel(c4).graph.num_vertices() == 0);
    CHECK_THROWS_AS(encode_given_kernel(c4, simple_kernel(c4)), InvalidInput);
}

TEST_CASE("kernel decode input checks", "[encode]") {
    auto g = k4();
    auto ks = simple_kernel(g);
    auto code = encode_given_kernel(g, ks);

    auto short_comp = code;
    short_comp.composition.parts.pop_back();
    CHECK_THROWS_AS(decode_given_kernel(short_comp, ks), InvalidInput);

    auto heavy = code;
    heavy.composition.parts[0] = 1;
    CHECK_THROWS_AS(decode_given_kernel(heavy, ks), InvalidInput);

    auto roots = code;
    roots.forest = RootedForest({1, 2, 3, 4}, {{4, 1}});
    CHECK_THROWS_AS(decode_given_kernel(roots, ks), InvalidInput);

    auto other = lollipop();
    CHECK_THROWS_AS(encode_given_kernel(other, ks), InvalidInput);
    CHECK_THROWS_AS(encode_given_kernel(LabeledGraph({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}), simple_kernel(other)),
                    InvalidInput);
}

TEST_CASE("subdivided kernel roundtrip", "[encode]") {
    // K4 with 1-2 through 9,5 and a tree hanging off 9
    LabeledGraph g({1, 2, 3, 4, 5, 6, 9}, {{1, 9}, {9, 5}, {5, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {9, 6}});
    auto ks = simple_kernel(g);
    auto code = encode_given_kernel(g, ks);
    CHECK(code.composition.total() == 2);
    CHECK(code.tree.height(0) == 2);
    CHECK(code.tree.contains(6));
    CHECK(decode_given_kernel(code, ks) == g);
}

TEST_CASE("path 1-3-2 homeomorphic code", "[encode]") {
    LabeledGraph g({1, 2, 3}, {{1, 3}, {3, 2}});
    auto h = simple_homeo_reduction(g);
    CHECK(h.graph == LabeledGraph({1, 2}, {{1, 2}}));
    CHECK(h.mutable_set() == std::vector<Edge>{Edge(1, 2)});
    auto code = encode_given_H(g, h);
    CHECK(code.cycles.num_vertices() == 0);
    CHECK(code.placement == std::vector<Label>{3});
    CHECK(code.composition.parts == std::vector<long>{1});
    CHECK(decode_given_H(code, h) == g);
    CHECK(homeo_codes(h).size() == 1);
}

TEST_CASE("triangle homeomorphic code", "[encode]") {
    LabeledGraph g({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
    auto h = simple_homeo_reduction(g);
    CHECK(h.graph.num_vertices() == 0);
    CHECK(h.num_mutable() == 0);
    auto code = encode_given_H(g, h);
    CHECK(code.cycles == g);
    CHECK(code.placement.empty());
    CHECK(code.composition.parts.empty());
    CHECK(decode_given_H(code, h) == g);

    // m = 0 leaves nowhere to put a suppressed vertex outside the cycles
    HomeoCodeTriple bad{LabeledGraph(), {1, 2, 3}, Composition{}};
    CHECK_THROWS_AS(decode_given_H(bad, h), InvalidInput);
}

TEST_CASE("two-regular counts", "[encode]") {
    const std::vector<long> known = {1, 0, 0, 1, 3, 12, 70};
    for (long k = 0; k < static_cast<long>(known.size()); ++k) CHECK(two_regular_count(k) == known[k]);

    for (long k = 1; k <= 8; ++k) {
        auto d = DegreeSequence::of(std::vector<long>(k, 2));
        std::size_t brute = 0;
        for_each_graph(d, GraphClass::all, [&](const LabeledGraph&) { ++brute; });
        std::vector<Label> labels;
        for (long i = 1; i <= k; ++i) labels.push_back(i);
        std::set<std::vector<Edge>> listed;
        for_each_two_regular(labels, [&](const std::vector<Edge>& es) {
            auto s = es;
            for (auto& e : s) e = Edge(e.u, e.v);
            std::sort(s.begin(), s.end());
            listed.insert(s);
        });
        INFO("k=" << k);
        CHECK(two_regular_count(k) == BigInt(brute));
        CHECK(listed.size() == brute);
    }

    Rational ratio(two_regular_count(51), two_regular_count(50));
    CHECK(ratio >= Rational(95 * 51, 100));
    CHECK(ratio <= Rational(105 * 51, 100));
    CHECK_THROWS_AS(two_regular_count(-1), InvalidInput);
}

TEST_CASE("K4 port maps", "[encode]") {
    auto d = DegreeSequence::of({3, 3, 3, 3});
    std::size_t total = 0;
    for_each_augmented_core(d, [&](const AugmentedCore& a) {
        ++total;
        CHECK(build_core(a) == k4());
        auto sigma = core_to_port_maps(a);
        CHECK(sigma.size() == 4);
        CHECK(port_maps_to_core(d, k4(), sigma) == a);
    });
    CHECK(total == 1296);
}

TEST_CASE("port maps reject non-bijections", "[encode]") {
    auto d = DegreeSequence::of({3, 3, 3, 3});
    std::map<Label, std::vector<Label>> sigma = {{1, {2, 3, 4}}, {2, {1, 3, 4}}, {3, {1, 2, 4}}, {4, {1, 2, 2}}};
    CHECK_THROWS_AS(port_maps_to_core(d, k4(), sigma), InvalidInput);
}

TEST_CASE("short loop core is rejected", "[encode]") {
    auto d = DegreeSequence::of({4, 2});
    CHECK_THROWS_AS(AugmentedCore(d, {{{1, 1}, {1, 2}, {2}}, {{1, 3}, {1, 4}, {}}}), InvalidAugmentedCore);
    auto [a, rule] = AugmentedCore::make(d, {{{1, 1}, {1, 2}, {2}}, {{1, 3}, {1, 4}, {}}});
    CHECK(!a);
    CHECK(rule == CoreRule::short_loop);
}

TEST_CASE("augmented cores on small sequences", "[encode]") {
    auto ds = small_core_sequences(5, 10, 2e5);
    REQUIRE(ds.size() > 5);
    auto r = port_map_suite(ds);
    INFO(r.counterexample);
    CHECK(r.passed);
}

TEST_CASE("bijections on small degree sequences", "[encode]") {
    auto r = bijection_suite(6, 12);
    INFO(r.counterexample);
    CHECK(r.passed);
    CHECK(r.counts["degree sequences"] > 0);
}

TEST_CASE("loop-rule fault breaks the roundtrip", "[encode]") {
    auto r = bijection_suite(6, 12, simple_kernel_loop_fault);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.counterexample.empty());
}
