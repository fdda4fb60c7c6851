#include <catch_amalgamated.hpp>

#include <set>

#include "rgd/linebreak.hpp"
#include "rgd/stats.hpp"

using namespace rgd;

namespace {

// Every child sequence on labels 0..k whose entries sum to k (a tree sequence).
template <class F>
void for_each_tree_sequence(long max_total, F&& f) {
    for (long k = 1; k <= max_total; ++k) {
        std::vector<long> c(k + 1, 0);
        std::function<void(long, long)> rec = [&](long i, long left) {
            if (i == k) {
                c[k] = left;
                f(ChildSequence::of(c));
                return;
            }
            for (long x = 0; x <= left; ++x) {
                c[i] = x;
                rec(i + 1, left - x);
            }
        };
        rec(0, k);
    }
}

// Brute force: every parent function on the labels of c that yields a forest
// with exactly these child counts and `roots` roots.
std::set<std::map<Label, Label>> brute_forests(const ChildSequence& c, long roots) {
    auto labels = c.labels();
    const std::size_t n = labels.size();
    std::set<std::map<Label, Label>> out;
    std::vector<std::size_t> choice(n, 0);  // 0 = root, j+1 = parent labels[j]
    while (true) {
        std::map<Label, Label> parent;
        std::vector<long> kids(n, 0);
        long r = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (choice[i] == 0) {
                ++r;
            } else if (choice[i] - 1 == i) {
                ok = false;
            } else {
                parent[labels[i]] = labels[choice[i] - 1];
                ++kids[choice[i] - 1];
            }
        }
        for (std::size_t i = 0; i < n && ok; ++i) ok = kids[i] == c.entries()[i].second;
        if (ok && r == roots) {
            try {
                RootedForest f(labels, parent);
                out.insert(parent);
            } catch (const InvalidInput&) {
            }
        }
        std::size_t i = 0;
        while (i < n && ++choice[i] == n + 1) choice[i++] = 0;
        if (i == n) break;
    }
    return out;
}

}  // namespace

TEST_CASE("line-breaking examples") {
    auto c = ChildSequence::of({0, 2, 0});
    RootedForest t({0, 1, 2}, {{0, 1}, {2, 1}});
    CHECK(tree_to_sequence(t) == Sequence{1, 1});
    CHECK(sequence_to_tree({1, 1}, c) == t);
    auto star = ChildSequence::of({0, 0, 0, 3});
    CHECK(sequence_to_tree({3, 3, 3}, star).children(3) == std::vector<Label>{0, 1, 2});
    CHECK(tree_to_sequence(sequence_to_tree({3, 3, 3}, star)) == Sequence{3, 3, 3});
    CHECK_THROWS_AS(sequence_to_tree({1, 2}, c), InvalidInput);
}

TEST_CASE("first repetition and final singleton") {
    CHECK(first_repetition({1, 1}) == 2u);
    CHECK(first_repetition({1, 2, 1, 2}) == 3u);
    CHECK_FALSE(first_repetition({1, 2, 3}));
    CHECK(final_singleton({1, 2, 1, 3, 3}) == 2u);
    CHECK_FALSE(final_singleton({1, 1}));
}

TEST_CASE("first-repetition tail count examples") {
    auto c = ChildSequence::of({0, 2, 2, 0, 0});
    CHECK(count_first_rep_above(c, 2) == 4);
    CHECK(count_first_rep_above(c, 1) == 6);
    CHECK(count_first_rep_above(c, 0) == c.multinomial());
}

TEST_CASE("tree counts agree with brute force for small child sequences") {
    long checked = 0;
    for_each_tree_sequence(5, [&](const ChildSequence& c) {
        auto brute = brute_forests(c, 1);
        std::set<std::map<Label, Label>> via;
        for_each_tree(c, [&](const RootedForest& t) { via.insert(t.parent_map()); });
        CHECK(via == brute);
        CHECK(BigInt(brute.size()) == c.multinomial());
        ++checked;
    });
    CHECK(checked > 100);
}

TEST_CASE("first-repetition counts are non-increasing and vanish past n/2 when 1-free") {
    for_each_tree_sequence(7, [&](const ChildSequence& c) {
        auto t = first_rep_tail_counts(c);
        for (std::size_t h = 1; h < t.size(); ++h) CHECK(t[h] <= t[h - 1]);
        if (c.one_free())
            for (long h = c.total() / 2 + 1; h <= c.total(); ++h) CHECK(t[h] == 0);
    });
}

TEST_CASE("r(V+) >= f(V+) exactly for sequences of starred trees") {
    for_each_tree_sequence(6, [&](const ChildSequence& c) {
        if (!c.one_free() || c.at(0) != 0) return;
        for (long m = 1; c.total() + m - 1 <= 8; ++m) {
            auto cp = c.extended(m);
            if (cp.count(1) == 0) continue;
            for_each_sequence(cp, [&](const Sequence& v) {
                auto t = sequence_to_tree(v, cp);
                auto path = t.path_from_root(0);
                std::set<Label> on(path.begin(), path.end());
                bool starred = true;
                for (Label x : t.vertices())
                    if (t.child_count(x) == 1 && !on.count(x)) starred = false;
                CHECK((*first_repetition(v) >= *final_singleton(v)) == starred);
            });
        }
    });
}

TEST_CASE("star reduction is (m-1)!-to-one with the height shift") {
    for_each_tree_sequence(6, [&](const ChildSequence& c) {
        if (!c.one_free() || c.at(0) != 0) return;
        for (long m = 1; m <= 3; ++m) {
            auto cp = c.extended(m);
            std::map<std::pair<std::map<Label, Label>, std::vector<long>>, long> pre;
            for_each_tree(cp, [&](const RootedForest& ts) {
                StarReduction r;
                try {
                    r = star_tree_reduction(ts);
                } catch (const InvalidInput&) {
                    return;
                }
                CHECK(r.tree.height(0) == ts.height(0) - (m - 1));
                CHECK(r.composition.size() == static_cast<std::size_t>(m));
                CHECK(r.composition.total() == r.tree.height(0));
                CHECK(r.tree.child_sequence() == c);
                ++pre[{r.tree.parent_map(), r.composition.parts}];
            });
            // every (T, P) is hit, each (m-1)! times
            BigInt pairs = 0;
            for_each_tree(c, [&](const RootedForest& t) { pairs += count_compositions(m, t.height(0)); });
            CHECK(BigInt(pre.size()) == pairs);
            for (auto& [k, v] : pre) CHECK(BigInt(v) == factorial(m - 1));
        }
    });
}

TEST_CASE("star reduction with m = 1 is the identity") {
    auto c = ChildSequence::of({0, 2, 2, 0, 0});
    for_each_tree(c, [&](const RootedForest& t) {
        auto r = star_tree_reduction(t);
        CHECK(r.tree == t);
        CHECK(r.composition.parts == std::vector<long>{t.height(0)});
    });
}

TEST_CASE("uniform sequences give uniform trees") {
    auto c = ChildSequence::of({0, 3, 0, 1, 2, 0, 0});
    std::map<std::map<Label, Label>, long> counts;
    Rng rng = make_stream(21);
    for (int i = 0; i < 100000; ++i) ++counts[random_tree(c, rng).parent_map()];
    std::size_t cells = static_cast<std::size_t>(c.multinomial());
    CHECK(counts.size() == cells);
    CHECK(chi_square_uniform(counts, cells).p_value > 1e-3);
}

TEST_CASE("random forests are uniform") {
    // 6 vertices, child total 4: two roots
    auto c = ChildSequence::of({2, 0, 2, 0, 0, 0});
    auto all = brute_forests(c, 2);
    std::map<std::map<Label, Label>, long> counts;
    Rng rng = make_stream(22);
    for (int i = 0; i < 100000; ++i) {
        auto f = random_forest(c, rng);
        REQUIRE(f.child_sequence() == c);
        ++counts[f.parent_map()];
    }
    CHECK(counts.size() == all.size());
    CHECK(chi_square_uniform(counts, all.size()).p_value > 1e-3);
}

TEST_CASE("sequence text round trip") {
    Sequence v{4, 1, 4, 2};
    CHECK(parse_sequence(format_sequence(v)) == v);
}
