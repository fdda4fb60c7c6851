#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgd/verify.hpp"

namespace rgd {

inline nlohmann::json to_json(const SuiteResult& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["seconds"] = r.seconds;
    j["counts"] = r.counts;
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    j["notes"] = r.notes;
    return j;
}

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 100000;  // per chi-square instance
    bool quick = false;            // smaller guard bounds, for smoke runs
};

/// Every exhaustive oracle plus the sampler checks, in a fixed order. The
/// loop-rule mutation entry passes when the injected fault is caught.
inline std::vector<SuiteResult> run_verify_suite(const VerifyOptions& o,
                                                 const std::function<void(const SuiteResult&)>& progress = nullptr) {
    std::vector<SuiteResult> out;
    auto add = [&](SuiteResult r) {
        if (progress) progress(r);
        out.push_back(std::move(r));
    };
    const bool q = o.quick;
    const std::size_t samples = q ? std::min<std::size_t>(o.samples, 20000) : o.samples;

    add(bijection_suite(q ? 6 : 7, q ? 12 : 16));
    {
        auto fault = bijection_suite(q ? 5 : 6, q ? 10 : 12, simple_kernel_loop_fault);
        SuiteResult r;
        r.name = "loop-rule mutation";
        r.seconds = fault.seconds;
        r.counts = fault.counts;
        r.passed = !fault.passed;
        r.notes.push_back(fault.passed ? "fault went unnoticed" : "caught: " + fault.counterexample);
        if (fault.passed) r.counterexample = "injected loop-rule fault passed every roundtrip";
        add(r);
    }
    add(line_breaking_suite(q ? 6 : 8));
    add(pmf_suite());
    add(dominance_suite(q ? 6 : 8, 4));
    add(conditional_suite(q ? 5 : 7, q ? 5 : 7, 4));
    add(two_regular_suite());
    auto cores = q ? small_core_sequences(5, 10, 2e5) : small_core_sequences();
    add(port_map_suite(cores));
    {
        std::vector<DegreeSequence> larger;
        if (!q)
            for (auto& dv : std::vector<std::vector<long>>{std::vector<long>(12, 3), {3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2},
                                                           {4, 4, 4, 4, 3, 3, 3, 3, 2, 2, 2, 2}})
                larger.push_back(DegreeSequence::of(dv));
        add(switching_suite(cores, larger, q ? 0 : 200, o.seed));
    }
    add(loop_switching_suite(cores));
    add(sampler_suite(o.seed, samples));
    add(rejection_sweep_suite(o.seed, q ? 10 : 14, samples));
    return out;
}

inline nlohmann::json verify_report(const std::vector<SuiteResult>& rs, const VerifyOptions& o) {
    nlohmann::json j;
    j["seed"] = o.seed;
    j["samples"] = o.samples;
    j["quick"] = o.quick;
    bool all = true;
    double secs = 0;
    for (auto& r : rs) {
        j["suites"].push_back(to_json(r));
        all = all && r.passed;
        secs += r.seconds;
    }
    j["passed"] = all;
    j["seconds"] = secs;
    return j;
}

}  // namespace rgd
