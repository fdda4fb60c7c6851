#include <catch_amalgamated.hpp>

#include "rgd/forest.hpp"

using namespace rgd;

TEST_CASE("heights and child counts") {
    RootedForest f({1, 2, 3, 4, 5}, {{2, 1}, {3, 1}, {4, 3}});
    CHECK(f.roots() == std::vector<Label>{1, 5});
    CHECK(f.height(4) == 2);
    CHECK(f.height(5) == 0);
    CHECK(f.height() == 2);
    CHECK(f.child_count(1) == 2);
    CHECK(f.child_count(4) == 0);
    CHECK(f.root_of(4) == 1);
    CHECK(f.path_from_root(4) == std::vector<Label>{1, 3, 4});
    CHECK(f.children(1) == std::vector<Label>{2, 3});
}

TEST_CASE("cycles and unknown parents are rejected") {
    CHECK_THROWS_AS(RootedForest({1, 2}, {{1, 2}, {2, 1}}), InvalidInput);
    CHECK_THROWS_AS(RootedForest({1, 2}, {{1, 9}}), InvalidInput);
}

TEST_CASE("forest text round trip") {
    RootedForest f({0, 1, 2, 6}, {{0, 1}, {2, 1}});
    auto text = format_forest(f);
    CHECK(parse_forest(text) == f);
    RootedForest t({1, 2, 3}, {{2, 1}, {3, 1}});
    CHECK(format_forest(t).rfind("root 1", 0) == 0);
    CHECK(parse_forest(format_forest(t)) == t);
}
