#include <catch_amalgamated.hpp>

#include <set>

#include "rgd/degseq.hpp"
#include "rgd/random.hpp"
#include "rgd/sample.hpp"
#include "rgd/stats.hpp"

using namespace rgd;

TEST_CASE("surplus of small sequences") {
    CHECK(surplus(DegreeSequence::of({1, 1})) == 0);
    CHECK(surplus(DegreeSequence::of({2, 2, 2})) == 1);
    CHECK(surplus(DegreeSequence::of({3, 3, 3, 3})) == 3);
    CHECK(surplus(DegreeSequence::of({1, 1, 1, 1})) == -1);
}

TEST_CASE("surplus ignores the order of entries") {
    Rng rng = make_stream(7);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<long> d;
        long n = 1 + uniform_index(8, rng);
        for (long i = 0; i < n; ++i) d.push_back(1 + uniform_index(5, rng));
        if (std::accumulate(d.begin(), d.end(), 0L) % 2) d[0] += 1;
        long s = surplus(DegreeSequence::of(d));
        std::shuffle(d.begin(), d.end(), rng);
        CHECK(surplus(DegreeSequence::of(d)) == s);
    }
}

TEST_CASE("count_degree") {
    CHECK(count_degree(DegreeSequence::of({3, 2, 2, 1}), 2) == 2);
    CHECK(count_degree(DegreeSequence::of({3, 3, 2}), 2) == 1);
    CHECK(count_degree(DegreeSequence::of({1, 1, 1, 1}), 1) == 4);
}

TEST_CASE("degree sequence validation") {
    CHECK_THROWS_AS(DegreeSequence::of({1, 2}), InvalidInput);
    CHECK_THROWS_AS(DegreeSequence::of({0, 2}), InvalidInput);
    CHECK_THROWS_AS(DegreeSequence({{0, 1}, {1, 1}}), InvalidInput);
    CHECK_NOTHROW(DegreeSequence({{5, 1}, {9, 1}}));
}

TEST_CASE("Erdos-Gallai") {
    CHECK(is_graphical(DegreeSequence::of({3, 3, 3, 3})));
    CHECK_FALSE(is_graphical(DegreeSequence::of({3, 1})));
    CHECK(is_graphical(DegreeSequence::of({2, 2, 1, 1})));
    CHECK_FALSE(is_graphical(DegreeSequence::of({3, 3, 1, 1})));
}

TEST_CASE("graphical iff the enumerator finds a realisation") {
    // every d with n <= 6, entries <= 5, even sum <= 18
    std::vector<long> d;
    long checked = 0;
    std::function<void(long)> rec = [&](long left) {
        if (!d.empty()) {
            long sum = std::accumulate(d.begin(), d.end(), 0L);
            if (sum % 2 == 0 && sum <= kEnumerateGuard) {
                auto ds = DegreeSequence::of(d);
                bool found = false;
                for_each_graph(ds, GraphClass::all, [&](const LabeledGraph&) { found = true; });
                INFO(format_degrees(ds));
                CHECK(found == is_graphical(ds));
                ++checked;
            }
        }
        if (left == 0) return;
        for (long k = 1; k <= 5; ++k) {
            d.push_back(k);
            rec(left - 1);
            d.pop_back();
        }
    };
    rec(6);
    CHECK(checked > 5000);
}

TEST_CASE("composition counts") {
    CHECK(count_compositions(2, 2) == 3);
    CHECK(count_compositions(1, 5) == 1);
    CHECK(count_compositions(3, 2) == 6);
    CHECK(count_compositions(0, 0) == 1);
    CHECK(count_compositions(0, 3) == 0);
    auto all = all_compositions(2, 2);
    REQUIRE(all.size() == 3);
    CHECK(all[0].parts == std::vector<long>{0, 2});
    CHECK(all[1].parts == std::vector<long>{1, 1});
    CHECK(all[2].parts == std::vector<long>{2, 0});
}

TEST_CASE("composition enumerator is exhaustive and duplicate-free") {
    for (long m = 1; m <= 12; ++m)
        for (long h = 0; h <= 10 && m * h <= 10000; ++h) {
            std::set<std::vector<long>> seen;
            std::vector<long> prev;
            bool ordered = true;
            for_each_composition(m, h, [&](const Composition& p) {
                CHECK(p.total() == h);
                CHECK(static_cast<long>(p.size()) == m);
                if (!prev.empty() && !(prev < p.parts)) ordered = false;
                prev = p.parts;
                seen.insert(p.parts);
            });
            CHECK(ordered);
            CHECK(BigInt(seen.size()) == count_compositions(m, h));
        }
}

TEST_CASE("random compositions are uniform") {
    Rng rng = make_stream(11);
    std::map<std::vector<long>, long> counts;
    const long samples = 60000;
    for (long i = 0; i < samples; ++i) {
        auto p = random_composition(3, 4, rng);
        REQUIRE(p.total() == 4);
        ++counts[p.parts];
    }
    CHECK(counts.size() == 15);
    auto r = chi_square_uniform(counts, 15);
    CHECK(r.p_value > 1e-3);
}

TEST_CASE("degree text format") {
    auto d = parse_degrees("3^2,1^2,2");
    CHECK(d.n() == 5);
    CHECK(d.at(1) == 3);
    CHECK(d.at(5) == 2);
    auto e = parse_degrees("4:2, 9:2, 12:2");
    CHECK(e.labels() == std::vector<Label>{4, 9, 12});
    CHECK(parse_degrees(format_degrees(e)) == e);
    CHECK_THROWS_AS(parse_degrees("3,x"), InvalidInput);
}

TEST_CASE("child sequence predicates") {
    auto c = ChildSequence::of({0, 2, 2, 0, 0});
    CHECK(c.is_tree_sequence());
    CHECK(c.one_free());
    CHECK(c.binary());
    CHECK(c.sub_binary());
    CHECK(c.multinomial() == 6);
    auto e = c.extended(3);
    CHECK(e.size() == 7);
    CHECK(e.count(1) == 2);
    CHECK(e.is_tree_sequence());
}
