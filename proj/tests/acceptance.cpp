// One line per acceptance criterion; exit status 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "rgd/rgd.hpp"

using namespace rgd;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome from_suite(const SuiteResult& r) {
    std::ostringstream os;
    for (auto& [k, v] : r.counts) os << k << "=" << v << " ";
    if (!r.passed) os << "counterexample: " << r.counterexample;
    return {r.passed, os.str()};
}

Outcome both(Outcome a, const Outcome& b) {
    a.pass = a.pass && b.pass;
    a.detail += "| " + b.detail;
    return a;
}

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& run) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        o.pass = false;
        o.detail += " over time limit";
    }
    failures += !o.pass;
    std::printf("criterion %2d %s  %s  (%.1fs)  %s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

int main() {
    const std::uint64_t seed = 20241015;

    criterion(1, "bijections n<=7 |d|<=16", 300, [] { return from_suite(bijection_suite(7, 16)); });

    criterion(2, "line-breaking n<=8", 120, [] { return from_suite(line_breaking_suite(8)); });

    criterion(3, "height pmf exact", 0, [] { return from_suite(pmf_suite()); });

    criterion(4, "height dominance n<=8 m<=4", 0, [] { return from_suite(dominance_suite(8, 4)); });

    criterion(5, "conditional dominance grids", 0, [] { return from_suite(conditional_suite()); });

    criterion(6, "biased tree tail n=4096", 600, [&] {
        Outcome o;
        for (auto& r : biased_tail(4096, {1, 4}, {2, 3, 4}, 100000, seed)) {
            o.pass = o.pass && r.within();
            o.detail += "m=" + std::to_string(r.m) + ",x=" + fmt(r.x) + ":" + fmt(r.empirical) + "<=" + fmt(r.bound) + " ";
        }
        return o;
    });

    criterion(7, "forest height tail |S|=4096", 0, [&] {
        ExperimentSpec s;
        s.sizes = {4096};
        s.samples = 5000;
        s.seed = seed;
        Outcome o;
        for (auto& r : forest_tail(s, {4, 8})) {
            o.pass = o.pass && r.within();
            o.detail += "x=" + fmt(r.x) + ":" + fmt(r.empirical) + "<=" + fmt(r.bound) + " ";
        }
        return o;
    });

    criterion(8, "logarithmic diameter, min degree 3", 900, [&] {
        Outcome o;
        double worst = 0;
        for (std::string fam : {"all3", "mixed34"}) {
            ExperimentSpec s;
            s.family = fam;
            s.sizes = {200, 1000};
            s.samples = 200;
            s.seed = seed;
            for (auto& r : kernel_diam(s)) {
                o.pass = o.pass && r.exceed_graph == 0 && r.exceed_kernel == 0 &&
                         r.kernel_max_diam < kernel_threshold(r.kernel_m);
                worst = std::max(worst, r.max_ratio_ln_n);
                o.detail += fam + " n=" + std::to_string(r.n) + ": exceed " + std::to_string(r.exceed_graph) + "/" +
                            std::to_string(r.exceed_kernel) + " connected " + std::to_string(r.connected) + " ";
            }
        }
        o.pass = o.pass && worst <= 6;
        o.detail += "max diam+/ln n " + fmt(worst);
        return o;
    });

    criterion(9, "sqrt(n) diameter of sub-binary trees", 600, [&] {
        ExperimentSpec s;
        s.family = "subbinary";
        s.params = {{"k", 1}};
        s.sizes = {16, 64, 256, 1024};
        s.samples = 500;
        s.seed = seed;
        s.sampler = SamplerKind::prufer;
        s.graph_class = GraphClass::connected;
        auto rows = diam_scaling(s);
        std::vector<double> n, mean, top;
        for (auto& r : rows) {
            n.push_back(double(r.n));
            mean.push_back(r.diam.mean);
        }
        for (std::size_t i = 1; i < rows.size(); ++i) top.push_back(rows[i].ratio_sqrt_n);
        double slope = log_log_slope(n, mean);
        double spread = *std::max_element(top.begin(), top.end()) / *std::min_element(top.begin(), top.end()) - 1;
        Outcome o;
        o.pass = slope >= 0.4 && slope <= 0.6 && spread <= 0.25;
        o.detail = "slope " + fmt(slope) + " spread " + fmt(spread);
        return o;
    });

    criterion(10, "2-regular counts", 0, [] { return from_suite(two_regular_suite()); });

    criterion(11, "sampler uniformity 1e5", 0, [&] {
        return both(from_suite(sampler_suite(seed, 100000)), from_suite(rejection_sweep_suite(seed, 14, 100000)));
    });

    criterion(12, "augmented cores and pushforward", 0, [&] {
        std::vector<ChiSquareCase> cases;
        sampler_suite(seed + 1, 100000, 1e-3, &cases);
        Outcome push;
        for (auto& c : cases)
            if (c.sampler == "augmented-core") {
                push.pass = push.pass && c.test.p_value > 1e-3;
                push.detail += c.instance + " p=" + fmt(c.test.p_value) + " ";
            }
        return both(from_suite(port_map_suite(small_core_sequences())), push);
    });

    return failures ? 1 : 0;
}
