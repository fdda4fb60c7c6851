#include <catch_amalgamated.hpp>

#include <set>

#include "rgd/sample.hpp"
#include "rgd/verify.hpp"

using namespace rgd;

namespace {

LabeledGraph k4() { return LabeledGraph({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

BigInt prufer_count(const DegreeSequence& d) {
    BigInt r = factorial(d.n() - 2);
    for (auto& [v, k] : d.entries()) r /= factorial(k - 1);
    return r;
}

}  // namespace

TEST_CASE("enumerate small sequences", "[sample]") {
    auto d = DegreeSequence::of({3, 3, 3, 3});
    for (auto c : {GraphClass::all, GraphClass::connected, GraphClass::no_cycle_components}) {
        auto gs = enumerate(d, c);
        REQUIRE(gs.size() == 1);
        CHECK(gs.front() == k4());
    }

    auto c4 = DegreeSequence::of({2, 2, 2, 2});
    CHECK(enumerate(c4, GraphClass::all).size() == 3);
    CHECK(enumerate(c4, GraphClass::connected).size() == 3);
    CHECK(enumerate(c4, GraphClass::no_cycle_components).empty());

    auto p = DegreeSequence::of({1, 2, 2, 1});
    auto paths = enumerate(p, GraphClass::all);
    CHECK(paths.size() == 2);
    for (auto& g : paths) CHECK(is_connected(g));
    CHECK(BigInt(paths.size()) == prufer_count(p));

    CHECK_THROWS_AS(enumerate(DegreeSequence::of(std::vector<long>(10, 2)), GraphClass::all), InvalidInput);
    CHECK(enumerate(DegreeSequence::of({3, 1}), GraphClass::all).empty());
}

TEST_CASE("enumerate is duplicate free and exact", "[sample]") {
    for_each_degree_sequence(5, 10, [&](const DegreeSequence& d) {
        auto all = enumerate(d, GraphClass::all);
        std::set<LabeledGraph> seen(all.begin(), all.end());
        INFO("d=" << format_degrees(d));
        CHECK(seen.size() == all.size());
        for (auto& g : all) CHECK(g.degrees() == d);
        // brute force over edge subsets of K_n
        std::vector<Edge> slots;
        auto ls = d.labels();
        for (std::size_t i = 0; i < ls.size(); ++i)
            for (std::size_t j = i + 1; j < ls.size(); ++j) slots.emplace_back(ls[i], ls[j]);
        std::size_t brute = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
            std::map<Label, long> deg;
            for (std::size_t k = 0; k < slots.size(); ++k)
                if (mask >> k & 1) {
                    ++deg[slots[k].u];
                    ++deg[slots[k].v];
                }
            bool ok = true;
            for (Label v : ls) ok = ok && deg[v] == d.at(v);
            brute += ok;
        }
        CHECK(all.size() == brute);
        std::size_t conn = 0, nocyc = 0;
        for (auto& g : all) {
            conn += is_connected(g);
            nocyc += cycle_vertex_count(g) == 0;
        }
        CHECK(enumerate(d, GraphClass::connected).size() == conn);
        CHECK(enumerate(d, GraphClass::no_cycle_components).size() == nocyc);
    });
}

TEST_CASE("Prufer sampler on fixed trees", "[sample]") {
    auto rng = make_stream(1, 0);
    CHECK(sample_tree_prufer(DegreeSequence::of({1, 1, 2}), rng) == LabeledGraph({1, 2, 3}, {{1, 3}, {3, 2}}));
    CHECK(sample_tree_prufer(DegreeSequence::of({1, 1, 1, 3}), rng) == LabeledGraph({1, 2, 3, 4}, {{1, 4}, {2, 4}, {3, 4}}));
    CHECK(sample_tree_prufer(DegreeSequence::of({1, 1}), rng) == LabeledGraph({1, 2}, {{1, 2}}));
    CHECK_THROWS_AS(sample_tree_prufer(DegreeSequence::of({2, 2, 2}), rng), InvalidInput);
}

TEST_CASE("Prufer sampler sees every tree", "[sample]") {
    auto rng = make_stream(2, 0);
    for (long n = 2; n <= 7; ++n)
        for_each_degree_sequence(n, 2 * n - 2, [&](const DegreeSequence& d) {
            if (d.n() != n || d.total() != 2 * n - 2) return;
            auto want = prufer_count(d);
            auto target = enumerate(d, GraphClass::connected);
            REQUIRE(BigInt(target.size()) == want);
            std::set<LabeledGraph> seen;
            const std::size_t draws = 40 * target.size() + 40;
            for (std::size_t i = 0; i < draws; ++i) {
                auto g = sample_tree_prufer(d, rng);
                CHECK(g.degrees() == d);
                seen.insert(g);
            }
            INFO("d=" << format_degrees(d));
            CHECK(BigInt(seen.size()) == want);
        });
}

TEST_CASE("rejection sampler input checks", "[sample]") {
    auto rng = make_stream(3, 0);
    CHECK_THROWS_AS(sample_configuration_rejection(DegreeSequence::of({3, 1}), GraphClass::all, rng), InvalidInput);
    CHECK_THROWS_AS(sample_configuration_rejection(DegreeSequence::of({1, 1, 1, 1}), GraphClass::connected, rng, 1000),
                    std::runtime_error);
    auto g = sample_configuration_rejection(DegreeSequence::of({3, 3, 3, 3}), GraphClass::all, rng);
    CHECK(g == k4());
}

TEST_CASE("K4 proposal acceptance", "[sample]") {
    auto rng = make_stream(4, 0);
    auto d = DegreeSequence::of({3, 3, 3, 3});
    const int trials = 100000;
    int ok = 0;
    for (int i = 0; i < trials; ++i) ok += propose_configuration(d, rng).has_value();
    // 12 stubs, 10395 matchings, 6^4 = 1296 of them give K4
    const double p = 1296.0 / 10395.0, se = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(ok / double(trials) - p) < 3 * se);
}

TEST_CASE("samplers are uniform on small classes", "[sample]") {
    std::vector<ChiSquareCase> cases;
    auto r = sampler_suite(20, 20000, 1e-3, &cases);
    INFO(r.counterexample);
    CHECK(r.passed);
    CHECK(cases.size() == 15);
}

TEST_CASE("rejection sweep at reduced scale", "[sample]") {
    auto r = rejection_sweep_suite(21, 10, 5000);
    INFO(r.counterexample);
    CHECK(r.passed);
    CHECK(r.counts["chi-square tests"] > 40);
}

TEST_CASE("cubic graphs are usually connected", "[sample]") {
    auto rng = make_stream(5, 0);
    auto d = DegreeSequence::of(std::vector<long>(100, 3));
    int conn = 0;
    const int runs = 200;
    for (int i = 0; i < runs; ++i) conn += is_connected(sample_configuration_rejection(d, GraphClass::all, rng));
    CHECK(conn >= 0.95 * runs);
}

TEST_CASE("swap chain keeps degrees", "[sample]") {
    auto rng = make_stream(6, 0);
    auto d = DegreeSequence::of({4, 3, 3, 3, 2, 2, 2, 1, 1, 1});
    auto g = sample_configuration_rejection(d, GraphClass::all, rng);
    SwapChainStats st;
    for (int i = 0; i < 200; ++i) {
        g = mcmc_double_swap(g, 1, rng, &st);
        CHECK(g.degrees() == d);
    }
    CHECK(st.proposals == 200);
    CHECK(st.accepted > 0);
}

TEST_CASE("swap chain leaves a blocked proposal alone", "[sample]") {
    // on K4 every swap repeats an edge or makes a loop
    auto rng = make_stream(7, 0);
    SwapChainStats st;
    auto g = mcmc_double_swap(k4(), 500, rng, &st);
    CHECK(g == k4());
    CHECK(st.accepted == 0);
}

TEST_CASE("swap chain mixes over four-cycles", "[sample]") {
    auto d = DegreeSequence::of({2, 2, 2, 2});
    auto target = enumerate(d, GraphClass::all);
    auto start = target.front();
    auto rng = make_stream(8, 0);
    const std::size_t burn = default_burnin(start);
    auto c = uniformity_case("mcmc", "2,2,2,2", target, 30000, [&] { return mcmc_double_swap(start, burn, rng); });
    CHECK(c.test.p_value > 1e-3);
}

TEST_CASE("sampler reruns reproduce", "[sample]") {
    auto d = DegreeSequence::of({3, 3, 2, 2, 2, 2, 1, 1});
    auto a = make_stream(9, 3), b = make_stream(9, 3), other = make_stream(9, 4);
    std::vector<LabeledGraph> x, y, z;
    for (int i = 0; i < 20; ++i) {
        x.push_back(sample_configuration_rejection(d, GraphClass::connected, a));
        y.push_back(sample_configuration_rejection(d, GraphClass::connected, b));
        z.push_back(sample_configuration_rejection(d, GraphClass::connected, other));
    }
    CHECK(x == y);
    CHECK(x != z);
    auto t = DegreeSequence::of({1, 1, 1, 2, 2, 3});
    auto p = make_stream(10, 0), q = make_stream(10, 0);
    CHECK(sample_tree_prufer(t, p) == sample_tree_prufer(t, q));
    auto g = sample_configuration_rejection(d, GraphClass::all, a);
    auto r1 = make_stream(11, 0), r2 = make_stream(11, 0);
    CHECK(mcmc_double_swap(g, 100, r1) == mcmc_double_swap(g, 100, r2));
}

TEST_CASE("class names parse", "[sample]") {
    CHECK(parse_graph_class("all") == GraphClass::all);
    CHECK(parse_graph_class("connected") == GraphClass::connected);
    CHECK(parse_graph_class("nocycle") == GraphClass::no_cycle_components);
    CHECK_THROWS_AS(parse_graph_class("trees"), InvalidInput);
    SamplerConfig cfg;
    cfg.mcmc_thin = 0;
    CHECK_THROWS_AS(cfg.check(), InvalidInput);
}

TEST_CASE("family-wise verdict on many tests", "[sample]") {
    const double alpha = 1e-3;
    for (std::size_t n : {1, 10, 248, 5000}) {
        // smallest k with P(Binomial(n, alpha) > k) <= alpha, summed directly
        double pk = std::pow(1 - alpha, double(n)), below = pk;
        std::size_t k = 0;
        while (1 - below > alpha * (1 + 1e-9)) {
            pk *= double(n - k) / double(k + 1) * alpha / (1 - alpha);
            below += pk;
            ++k;
        }
        std::vector<double> ps(n, 0.5);
        auto v = family_wise(ps, alpha);
        INFO("n=" << n);
        CHECK(v.allowed_hits == k);
        CHECK(v.passed);
        CHECK(v.per_test_level == Catch::Approx(alpha / n));
        ps[0] = 0.9 * alpha / n;
        CHECK_FALSE(family_wise(ps, alpha).passed);
        ps[0] = 0.5;
        for (std::size_t i = 0; i <= k && i < n; ++i) ps[i] = alpha;
        if (k + 1 <= n) {
            auto w = family_wise(ps, alpha);
            CHECK(w.raw_hits == k + 1);
            CHECK_FALSE(w.passed);
        }
    }
    CHECK(family_wise({}, alpha).passed);
}
