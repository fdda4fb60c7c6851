#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rgd/augmented.hpp"
#include "rgd/biased.hpp"
#include "rgd/decompose.hpp"
#include "rgd/encode.hpp"
#include "rgd/explore.hpp"
#include "rgd/linebreak.hpp"
#include "rgd/sample.hpp"
#include "rgd/stats.hpp"

namespace rgd {

/// Outcome of one exhaustive or Monte Carlo check.
struct SuiteResult {
    std::string name;
    bool passed = true;
    std::map<std::string, std::size_t> counts;  // instance counts by kind
    std::string counterexample;                  // first failure only
    std::vector<std::string> notes;
    double seconds = 0;

    void fail(const std::string& what) {
        if (passed) counterexample = what;
        passed = false;
    }
};

using KernelFn = std::function<SimpleKernel(const LabeledGraph&)>;

namespace detail {

inline std::string edges_text(const LabeledGraph& g) {
    std::ostringstream out;
    out << "V=";
    for (std::size_t i = 0; i < g.num_vertices(); ++i) out << (i ? "," : "") << g.label(i);
    out << " E=";
    bool first = true;
    for (auto& e : g.edges()) {
        out << (first ? "" : ",") << e.u << '-' << e.v;
        first = false;
    }
    return out.str();
}

inline std::string kernel_key(const SimpleKernel& ks) {
    std::string s = edges_text(ks.graph) + " M=";
    for (auto& m : ks.mutable_edges) s += std::to_string(m.edge.u) + "-" + std::to_string(m.edge.v) + ",";
    return s;
}

inline std::string homeo_key(const HomeoReduction& h) {
    std::string s = edges_text(h.graph) + " M=";
    for (auto& m : h.mutable_edges) s += std::to_string(m.edge.u) + "-" + std::to_string(m.edge.v) + ",";
    s += " S=";
    for (Label v : h.suppressed) s += std::to_string(v) + ",";
    return s;
}

inline ChildSequence restrict_to(const ChildSequence& c, const std::vector<Label>& keep) {
    std::vector<ChildSequence::Entry> e;
    for (Label v : keep) e.emplace_back(v, c.at(v));
    return ChildSequence(std::move(e));
}

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1-free child sequences on [0, n] with c_0 = 0.
inline void for_each_one_free(long n, const std::function<void(const ChildSequence&)>& f) {
    std::vector<long> c(n + 1, 0);
    std::function<void(long, long)> rec = [&](long i, long left) {
        if (i > n) {
            if (left == 0) f(ChildSequence::of(c));
            return;
        }
        c[i] = 0;
        rec(i + 1, left);
        for (long x = 2; x <= left; ++x) {
            c[i] = x;
            rec(i + 1, left - x);
        }
        c[i] = 0;
    };
    rec(1, n);
}

// Every child sequence on [0, n] summing to n.
inline void for_each_tree_sequence(long n, const std::function<void(const ChildSequence&)>& f) {
    std::vector<long> c(n + 1, 0);
    std::function<void(long, long)> rec = [&](long i, long left) {
        if (i == n) {
            c[n] = left;
            f(ChildSequence::of(c));
            return;
        }
        for (long x = 0; x <= left; ++x) {
            c[i] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, n);
}

inline DiscreteDistribution enumerated_height_law(const ChildSequence& c, long m) {
    std::map<long, BigInt> w;
    for_each_tree(c, [&](const RootedForest& t) {
        long h = t.height(0);
        w[h] += count_compositions(m, h);
    });
    return DiscreteDistribution::from_weights(w);
}

inline DiscreteDistribution enumerated_first_repetition(const ChildSequence& c) {
    std::map<long, long> w;
    for_each_sequence(c, [&](const Sequence& v) {
        auto r = first_repetition(v);
        ++w[r ? static_cast<long>(*r) : static_cast<long>(v.size()) + 1];
    });
    return DiscreteDistribution::from_weights(w);
}

inline DiscreteDistribution enumerated_subset_max(long j, long k) {
    std::map<long, long> w;
    std::vector<char> pick(k, 0);
    std::fill(pick.end() - j, pick.end(), 1);
    do {
        long mx = 0;
        for (long i = 0; i < k; ++i)
            if (pick[i]) mx = i + 1;
        ++w[mx];
    } while (std::next_permutation(pick.begin(), pick.end()));
    return DiscreteDistribution::from_weights(w);
}

}  // namespace detail

/// K*(G) with the loop rule broken on purpose: the mutable edge of a loop is moved
/// onto the first loop edge. Only for exercising the roundtrip suite.
inline SimpleKernel simple_kernel_loop_fault(const LabeledGraph& g) {
    SimpleKernel ks = simple_kernel(g);
    for (auto& p : ks.kernel.paths) {
        if (!p.is_loop()) continue;
        const auto& in = p.internal;
        Edge bad(in.front(), in.back());
        for (auto& m : ks.mutable_edges)
            if (m.edge == bad) {
                std::vector<Label> rest(in.begin() + 1, in.end());
                if (p.lo > in.front()) std::reverse(rest.begin(), rest.end());
                m = MutableEdge{Edge(p.lo, in.front()), rest};
            }
    }
    std::sort(ks.mutable_edges.begin(), ks.mutable_edges.end(),
              [](const MutableEdge& a, const MutableEdge& b) { return a.edge < b.edge; });
    return ks;
}

/// X_d(K*) listed directly from its definition.
inline std::vector<KernelCodeTriple> kernel_codes(const DegreeSequence& d, const SimpleKernel& ks) {
    std::vector<KernelCodeTriple> out;
    const ChildSequence c = kernel_child_sequence(d, ks);
    const std::vector<Label> kv = ks.graph.vertices();
    const long m = static_cast<long>(ks.num_mutable());
    std::vector<Label> others;
    for (Label v : d.labels())
        if (!ks.graph.has_vertex(v)) others.push_back(v);
    const bool s1 = detail::s_one(ks);
    std::optional<Label> leaf;
    if (s1) {
        for (auto& [v, k] : d.entries())
            if (k == 1) {
                leaf = v;
                break;
            }
        if (!leaf) return out;
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
        std::vector<Label> a = kv, b{0};
        for (std::size_t i = 0; i < others.size(); ++i) (mask >> i & 1 ? a : b).push_back(others[i]);
        std::sort(a.begin(), a.end());
        if (s1 && !std::binary_search(a.begin(), a.end(), *leaf)) continue;
        long sa = 0, sb = 0;
        for (Label v : a) sa += c.at(v);
        for (Label v : b) sb += c.at(v);
        if (sa != static_cast<long>(a.size() - kv.size()) || sb != static_cast<long>(b.size()) - 1) continue;
        auto ca = detail::restrict_to(c, a), cb = detail::restrict_to(c, b);
        std::vector<RootedForest> forests, trees;
        for_each_forest(ca, [&](const RootedForest& f) {
            if (f.roots() != kv) return;
            if (s1 && f.root_of(*leaf) != detail::triangle_apex(ks)) return;
            forests.push_back(f);
        });
        if (forests.empty()) continue;
        for_each_tree(cb, [&](const RootedForest& t) { trees.push_back(t); });
        for (auto& t : trees) {
            auto comps = all_compositions(m, t.height(0));
            for (auto& f : forests)
                for (auto& p : comps) out.push_back(KernelCodeTriple{f, t, p});
        }
    }
    return out;
}

/// X_d(H): cycles on V, an ordering of the other suppressed labels, a composition.
inline std::vector<HomeoCodeTriple> homeo_codes(const HomeoReduction& h) {
    std::vector<HomeoCodeTriple> out;
    const auto& s = h.suppressed;
    const long m = static_cast<long>(h.num_mutable());
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
        std::vector<Label> on, rest;
        for (std::size_t i = 0; i < s.size(); ++i) (mask >> i & 1 ? on : rest).push_back(s[i]);
        if (m == 0 && !rest.empty()) continue;
        for_each_two_regular(on, [&](const std::vector<Edge>& es) {
            LabeledGraph cyc(on, es);
            auto perm = rest;
            do {
                for_each_composition(m, static_cast<long>(perm.size()),
                                     [&](const Composition& p) { out.push_back(HomeoCodeTriple{cyc, perm, p}); });
            } while (std::next_permutation(perm.begin(), perm.end()));
        });
    }
    return out;
}

/// Both encodings checked against enumeration on every d with n ≤ max_n and
/// |d|_1 ≤ max_sum: class sizes, all four roundtrips, and the two multiset laws.
inline SuiteResult bijection_suite(long max_n = 7, long max_sum = 16, KernelFn kfn = nullptr) {
    if (!kfn) kfn = [](const LabeledGraph& g) { return simple_kernel(g); };
    SuiteResult res;
    res.name = "bijections";
    res.seconds = detail::timed([&] {
        for_each_degree_sequence(max_n, max_sum, [&](const DegreeSequence& d) {
            if (!is_graphical(d)) return;
            ++res.counts["degree sequences"];
            const std::string dtxt = "d=" + format_degrees(d);
            std::map<std::string, std::pair<SimpleKernel, std::vector<LabeledGraph>>> by_kernel;
            std::map<std::string, std::pair<HomeoReduction, std::vector<LabeledGraph>>> by_h;
            for_each_graph(d, GraphClass::all, [&](const LabeledGraph& g) {
                ++res.counts["graphs"];
                SimpleKernel ks = kfn(g);
                HomeoReduction h = simple_homeo_reduction(g, ks);
                auto& slot = by_h[detail::homeo_key(h)];
                if (slot.second.empty()) slot.first = h;
                slot.second.push_back(g);
                if (!is_connected(g) || ks.graph.num_vertices() == 0) return;
                auto& ks_slot = by_kernel[detail::kernel_key(ks)];
                if (ks_slot.second.empty()) ks_slot.first = ks;
                ks_slot.second.push_back(g);
            });

            for (auto& [key, group] : by_kernel) {
                const auto& [ks, graphs] = group;
                if (detail::s_one(ks) && d.count(1) == 0) {
                    ++res.counts["kernel classes excluded (unicyclic, no leaf)"];
                    continue;
                }
                ++res.counts["kernel classes"];
                auto codes = kernel_codes(d, ks);
                if (codes.size() != graphs.size()) {
                    res.fail(dtxt + " K*: " + key + " |C_d(K*)|=" + std::to_string(graphs.size()) +
                             " |X_d(K*)|=" + std::to_string(codes.size()));
                    continue;
                }
                std::map<std::vector<long>, long> law_g, law_x;
                for (auto& g : graphs) {
                    try {
                        SimpleKernel own = kfn(g);
                        auto code = encode_given_kernel(g, ks, own);
                        ++law_g[own.path_lengths()];
                        if (decode_given_kernel(code, ks) != g) res.fail(dtxt + " decode(encode(G)) != G for " + detail::edges_text(g));
                    } catch (const std::exception& e) {
                        res.fail(dtxt + " kernel encode failed on " + detail::edges_text(g) + ": " + e.what());
                    }
                }
                for (auto& x : codes) {
                    try {
                        auto g = decode_given_kernel(x, ks);
                        ++law_x[x.composition.parts];
                        if (encode_given_kernel(g, ks, kfn(g)) != x)
                            res.fail(dtxt + " encode(decode(x)) != x, x.forest=" + format_forest(x.forest) +
                                     " x.tree=" + format_forest(x.tree));
                    } catch (const std::exception& e) {
                        res.fail(dtxt + " kernel decode failed: " + e.what() + " forest=" + format_forest(x.forest) +
                                 " tree=" + format_forest(x.tree));
                    }
                }
                res.counts["kernel codes"] += codes.size();
                if (law_g != law_x) res.fail(dtxt + " path-length law differs for K*: " + key);
            }

            for (auto& [key, group] : by_h) {
                const auto& [h, graphs] = group;
                ++res.counts["H classes"];
                auto codes = homeo_codes(h);
                if (codes.size() != graphs.size()) {
                    res.fail(dtxt + " H: " + key + " |G_d(H)|=" + std::to_string(graphs.size()) +
                             " |X_d(H)|=" + std::to_string(codes.size()));
                    continue;
                }
                std::map<std::vector<long>, long> law_g, law_x;
                for (auto& g : graphs) {
                    try {
                        HomeoReduction own = simple_homeo_reduction(g, kfn(g));
                        auto code = encode_given_H(g, h, own);
                        auto row = own.path_lengths();
                        row.insert(row.begin(), cycle_vertex_count(g));
                        ++law_g[row];
                        if (decode_given_H(code, h) != g) res.fail(dtxt + " decode_H(encode_H(G)) != G for " + detail::edges_text(g));
                    } catch (const std::exception& e) {
                        res.fail(dtxt + " H encode failed on " + detail::edges_text(g) + ": " + e.what());
                    }
                }
                for (auto& x : codes) {
                    try {
                        auto g = decode_given_H(x, h);
                        auto row = x.composition.parts;
                        row.insert(row.begin(), static_cast<long>(x.cycles.num_vertices()));
                        ++law_x[row];
                        if (encode_given_H(g, h, simple_homeo_reduction(g, kfn(g))) != x)
                            res.fail(dtxt + " encode_H(decode_H(x)) != x for H: " + key);
                    } catch (const std::exception& e) {
                        res.fail(dtxt + " H decode failed: " + e.what() + " H: " + key);
                    }
                }
                res.counts["H codes"] += codes.size();
                if (law_g != law_x) res.fail(dtxt + " (cyc, path-length) law differs for H: " + key);
            }
        });
    });
    return res;
}

/// Line-breaking on every child sequence over [0, n], n ≤ max_n.
inline SuiteResult line_breaking_suite(long max_n = 8) {
    SuiteResult res;
    res.name = "line-breaking";
    res.seconds = detail::timed([&] {
        for (long n = 1; n <= max_n; ++n)
            detail::for_each_tree_sequence(n, [&](const ChildSequence& c) {
                ++res.counts["child sequences"];
                const std::string ctxt = "c=" + format_child_sequence(c);
                Label leaf = -1;
                for (auto& [v, k] : c.entries())
                    if (k == 0) {
                        leaf = v;
                        break;
                    }
                std::vector<BigInt> above(n + 2, BigInt(0));
                BigInt count = 0;
                for_each_sequence(c, [&](const Sequence& v) {
                    ++count;
                    auto t = sequence_to_tree(v, c);
                    auto r = first_repetition(v);
                    long rv = r ? static_cast<long>(*r) : n + 1;
                    for (long h = 0; h < rv && h <= n + 1; ++h) ++above[h];
                    if (t.roots().size() != 1 || t.child_sequence() != c) res.fail(ctxt + " tree has the wrong child sequence");
                    if (tree_to_sequence(t) != v) res.fail(ctxt + " not inverted at " + format_sequence(v));
                    if (t.height(leaf) != rv - 1) res.fail(ctxt + " ht(l1) != r(V)-1 at " + format_sequence(v));
                });
                res.counts["sequences"] += static_cast<std::size_t>(count);
                if (count != c.multinomial()) res.fail(ctxt + " |V_c| differs from n!/prod c_v!");
                for (long h = 0; h <= n; ++h)
                    if (above[h] != count_first_rep_above(c, h))
                        res.fail(ctxt + " first-repetition count formula fails at h=" + std::to_string(h));
            });
    });
    return res;
}

/// Exact height pmf of the biased binary tree against (T, P) enumeration.
inline SuiteResult pmf_suite() {
    SuiteResult res;
    res.name = "height pmf";
    res.seconds = detail::timed([&] {
        auto p41 = binary_height_pmf(4, 1), p42 = binary_height_pmf(4, 2);
        if (p41 != DiscreteDistribution::from_weights(std::map<long, long>{{1, 1}, {2, 2}}))
            res.fail("binary_height_pmf(4,1) = " + p41.str());
        if (p42 != DiscreteDistribution::from_weights(std::map<long, long>{{1, 1}, {2, 3}}))
            res.fail("binary_height_pmf(4,2) = " + p42.str());
        for (long n = 2; n <= 8; n += 2)
            for (long m = 1; m <= 4; ++m) {
                ++res.counts["(n, m) pairs"];
                auto exact = binary_height_pmf(n, m);
                auto en = detail::enumerated_height_law(binary_child_sequence(n), m);
                if (exact != en)
                    res.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + " pmf " + exact.str() + " vs enumeration " + en.str());
            }
    });
    return res;
}

/// Height of 0 under every 1-free c (n ≤ max_n, m ≤ max_m) against the binary law on n+ε.
inline SuiteResult dominance_suite(long max_n = 8, long max_m = 4) {
    SuiteResult res;
    res.name = "height dominance";
    res.seconds = detail::timed([&] {
        for (long n = 2; n <= max_n; ++n) {
            const long eps = n % 2;
            for (long m = 1; m <= max_m; ++m) {
                auto s = detail::enumerated_height_law(binary_child_sequence(n + eps), m);
                detail::for_each_one_free(n, [&](const ChildSequence& c) {
                    ++res.counts["(c, m) instances"];
                    auto t = detail::enumerated_height_law(c, m);
                    if (!check_stochastic_dominance(t, s))
                        res.fail("c=" + format_child_sequence(c) + " m=" + std::to_string(m) + ": " + t.str() + " vs " + s.str());
                });
            }
        }
    });
    return res;
}

/// Conditional dominance: the subset-max grid, first repetition vs binary, the
/// monotone conditioning facts, and the combined statement on the laws in play.
inline SuiteResult conditional_suite(long max_k = 7, long max_n = 7, long max_m = 4) {
    SuiteResult res;
    res.name = "conditional dominance";
    res.seconds = detail::timed([&] {
        for (long l = 1; l <= max_k; ++l)
            for (long k = 1; k <= l; ++k)
                for (long j = 1; j <= k; ++j) {
                    ++res.counts["(j, k, l) triples"];
                    auto a = max_subset_law(j, k), b = max_subset_law(j, l);
                    if (a != detail::enumerated_subset_max(j, k)) res.fail("max law wrong for j,k=" + std::to_string(j) + "," + std::to_string(k));
                    for (long x = j; x <= l + 1; ++x)
                        if (!stochastically_le(a.given_at_most(x), b.given_at_most(x)))
                            res.fail("subset max j,k,l=" + std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) +
                                     " x=" + std::to_string(x));
                }
        for (long n = 2; n <= max_n; ++n) {
            const long eps = n % 2;
            auto bw = binary_child_sequence(n + eps);
            auto w = detail::enumerated_first_repetition(bw);
            detail::for_each_one_free(n, [&](const ChildSequence& c) {
                ++res.counts["1-free sequences"];
                const std::string ctxt = "c=" + format_child_sequence(c);
                auto v = detail::enumerated_first_repetition(c);
                if (v != first_repetition_law(c)) res.fail(ctxt + " first repetition law differs from enumeration");
                for (long y = 1; y <= v.max(); ++y)
                    if (!stochastically_le(v.given_at_least(y), w.given_at_least(y)))
                        res.fail(ctxt + " conditioned first repetition y=" + std::to_string(y));
                for (long a = v.min(); a <= v.max(); ++a)
                    for (long b = a; b <= v.max(); ++b) {
                        if (v.at_least(b) > 0 && !stochastically_le(v.given_at_least(a), v.given_at_least(b)))
                            res.fail(ctxt + " (X|X>=a) vs (X|X>=b) a,b=" + std::to_string(a) + "," + std::to_string(b));
                        if (v.cdf(a) > 0 && !stochastically_le(v.given_at_most(a), v.given_at_most(b)))
                            res.fail(ctxt + " (X|X<=a) vs (X|X<=b) a,b=" + std::to_string(a) + "," + std::to_string(b));
                    }
                for (long m = 1; m <= max_m; ++m) {
                    ++res.counts["combined instances"];
                    auto r = check_conditional_dominance(index_threshold_law(n + m - 1, m), v,
                                                         index_threshold_law(n + eps + m - 1, m), w);
                    if (!r.x_hypothesis || !r.y_hypothesis || !r.conclusion)
                        res.fail(ctxt + " m=" + std::to_string(m) + " combined statement: x=" + std::to_string(r.x_hypothesis) +
                                 " y=" + std::to_string(r.y_hypothesis) + " conclusion=" + std::to_string(r.conclusion));
                }
            });
        }
    });
    return res;
}

/// c_k against a direct enumeration of 2-regular graphs, and the growth ratio.
inline SuiteResult two_regular_suite(long max_k = 8) {
    SuiteResult res;
    res.name = "2-regular counts";
    res.seconds = detail::timed([&] {
        const long pinned[] = {1, 0, 0, 1, 3, 12, 70};
        for (long k = 0; k <= 6; ++k)
            if (two_regular_count(k) != pinned[k]) res.fail("c_" + std::to_string(k) + " = " + two_regular_count(k).str());
        for (long k = 1; k <= max_k; ++k) {
            ++res.counts["k values"];
            std::size_t brute = enumerate(DegreeSequence::of(std::vector<long>(k, 2)), GraphClass::all).size();
            std::vector<Label> labels;
            for (long i = 1; i <= k; ++i) labels.push_back(i);
            std::size_t listed = 0;
            for_each_two_regular(labels, [&](const std::vector<Edge>&) { ++listed; });
            if (two_regular_count(k) != brute || listed != brute)
                res.fail("c_" + std::to_string(k) + ": recurrence " + two_regular_count(k).str() + ", enumeration " +
                         std::to_string(brute) + ", lister " + std::to_string(listed));
        }
        double ratio = to_double(Rational(two_regular_count(51), two_regular_count(50)));
        res.notes.push_back("c_51/c_50 = " + std::to_string(ratio));
        if (ratio < 0.95 * 51 || ratio > 1.05 * 51) res.fail("c_51/c_50 = " + std::to_string(ratio));
    });
    return res;
}

/// Core-form degree sequences with at most max_n vertices: kernel degrees in
/// [3, 5], kernel half-edges ≤ max_half, and at most max_proposals raw proposals.
inline std::vector<DegreeSequence> small_core_sequences(long max_n = 6, long max_half = 12, double max_proposals = 2e6) {
    std::vector<DegreeSequence> out;
    std::vector<long> ker;
    std::function<void(long, long)> rec = [&](long lo, long sum) {
        if (!ker.empty() && sum % 2 == 0)
            for (long t = 0; static_cast<long>(ker.size()) + t <= max_n; ++t) {
                auto d = ker;
                d.insert(d.end(), t, 2);
                auto ds = DegreeSequence::of(d);
                if (to_double(Rational(count_core_proposals(ds))) <= max_proposals) out.push_back(ds);
            }
        if (static_cast<long>(ker.size()) == max_n) return;
        for (long k = lo; k <= 5 && sum + k <= max_half; ++k) {
            ker.push_back(k);
            rec(k, sum + k);
            ker.pop_back();
        }
    };
    rec(3, 0);
    return out;
}

/// |A_d(C)| = ∏ d_u! for every core C, the image of A_d is all of G_d⁻, and
/// the port-map encoding inverts.
inline SuiteResult port_map_suite(const std::vector<DegreeSequence>& ds) {
    SuiteResult res;
    res.name = "augmented cores";
    res.seconds = detail::timed([&] {
        for (auto& d : ds) {
            ++res.counts["degree sequences"];
            const std::string dtxt = "d=" + format_degrees(d);
            BigInt expect = 1;
            for (auto& [v, k] : d.entries())
                if (k >= 3) expect *= factorial(k);
            std::map<LabeledGraph, BigInt> per_core;
            for_each_augmented_core(d, [&](const AugmentedCore& a) {
                ++res.counts["augmented cores"];
                auto c = build_core(a);
                per_core[c] += 1;
                try {
                    if (port_maps_to_core(d, c, core_to_port_maps(a)) != a)
                        res.fail(dtxt + " port maps do not invert:\n" + format_augmented_core(a));
                } catch (const std::exception& e) {
                    res.fail(dtxt + " port maps failed: " + e.what());
                }
            });
            std::set<LabeledGraph> image;
            for (auto& [c, cnt] : per_core) {
                image.insert(c);
                if (cnt != expect) res.fail(dtxt + " |A_d(C)| = " + cnt.str() + " for " + detail::edges_text(c));
            }
            auto all = enumerate(d, GraphClass::no_cycle_components);
            res.counts["cores"] += all.size();
            if (std::set<LabeledGraph>(all.begin(), all.end()) != image) res.fail(dtxt + " image of A_d is not G_d^-");
        }
    });
    return res;
}

namespace detail {

inline std::vector<OrientedEdge> oriented_edges(const AugmentedCore& a) {
    std::vector<OrientedEdge> out;
    for (auto& r : a.records()) {
        out.push_back({r.a, r.b});
        out.push_back({r.b, r.a});
    }
    return out;
}

// unsubdivided records between distinct vertices, by sorted endpoint pair
inline std::set<std::pair<Label, Label>> bare_pairs(const AugmentedCore& a) {
    std::set<std::pair<Label, Label>> out;
    for (auto& r : a.records())
        if (r.internal.empty() && r.a.vertex != r.b.vertex)
            out.emplace(std::min(r.a.vertex, r.b.vertex), std::max(r.a.vertex, r.b.vertex));
    return out;
}

inline bool adjacent(const AugmentedCore& a, Label x, Label y) {
    for (auto& r : a.records())
        if ((r.a.vertex == x && r.b.vertex == y) || (r.a.vertex == y && r.b.vertex == x)) return true;
    return false;
}

inline bool bare_joined(const std::set<std::pair<Label, Label>>& bare, Label z, Label w) {
    return z != w && bare.count({std::min(z, w), std::max(z, w)});
}

// some endpoint of g joined to both endpoints of h by unsubdivided edges
inline bool hub(const std::set<std::pair<Label, Label>>& bare, const CoreRecord& g, const CoreRecord& h) {
    for (Label z : {g.a.vertex, g.b.vertex})
        if (bare_joined(bare, z, h.a.vertex) && bare_joined(bare, z, h.b.vertex)) return true;
    return false;
}

// the obstruction as usually stated: e' unsubdivided with an endpoint joined to both ends of f'
inline bool literal_obstruction(const std::set<std::pair<Label, Label>>& bare, const CoreRecord& e, const CoreRecord& f) {
    return (e.internal.empty() && hub(bare, e, f)) || (f.internal.empty() && hub(bare, f, e));
}

// what actually blocks both (e, f) and (e, reverse f) for disjoint e, f
inline bool disjoint_obstruction(const std::set<std::pair<Label, Label>>& bare, const CoreRecord& e, const CoreRecord& f) {
    bool eb = e.internal.empty(), fb = f.internal.empty();
    return ((eb || fb) && hub(bare, e, f)) || (eb && hub(bare, f, e));
}

// endpoint of g adjacent to neither endpoint of h
inline bool has_free_endpoint(const AugmentedCore& a, const CoreRecord& g, const CoreRecord& h) {
    for (Label z : {g.a.vertex, g.b.vertex})
        if (!adjacent(a, z, h.a.vertex) && !adjacent(a, z, h.b.vertex)) return true;
    return false;
}

inline std::vector<Label> internal_labels(const AugmentedCore& a) {
    std::vector<Label> out;
    for (auto& r : a.records()) out.insert(out.end(), r.internal.begin(), r.internal.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<HalfEdge> half_edges(const AugmentedCore& a) {
    std::vector<HalfEdge> out;
    for (auto& r : a.records()) {
        out.push_back(r.a);
        out.push_back(r.b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

namespace detail {

inline void check_switches(const AugmentedCore& a, SuiteResult& res) {
    ++res.counts["augmented cores"];
    const auto oes = oriented_edges(a);
    const auto bare = bare_pairs(a);
    const auto degs = build_core(a).degrees();
    const auto labels = internal_labels(a);
    const auto halves = half_edges(a);
    auto dump = [&](OrientedEdge e, OrientedEdge f) {
        std::ostringstream s;
        s << "d=" << format_degrees(a.degrees()) << "\n"
          << format_augmented_core(a) << "e=(" << e.tail.vertex << ':' << e.tail.port << ',' << e.head.vertex << ':'
          << e.head.port << ") f=(" << f.tail.vertex << ':' << f.tail.port << ',' << f.head.vertex << ':' << f.head.port << ')';
        return s.str();
    };
    for (auto e : oes)
        for (auto f : oes) {
            if (a.record_of(e.tail) == a.record_of(f.tail)) {
                if (try_switch(a, e, f)) res.fail(dump(e, f) + " same record accepted");
                continue;
            }
            ++res.counts["oriented pairs"];
            auto r = try_switch(a, e, f);
            auto eq = try_switch(a, reversed(f), reversed(e));
            if (bool(r) != bool(eq) || (r && *r.core != *eq.core)) res.fail(dump(e, f) + " equivalent pair differs");
            Label u = e.tail.vertex, v = e.head.vertex, x = f.tail.vertex, y = f.head.vertex;
            bool shared = u == x || u == y || v == x || v == y;
            bool near = shared;
            for (Label p : {u, v})
                for (Label q : {x, y}) near = near || adjacent(a, p, q);
            if (!near) {
                ++res.counts["far pairs"];
                if (!r) res.fail(dump(e, f) + " far pair rejected");
            }
            if (r) {
                ++res.counts["valid switchings"];
                const AugmentedCore& b = *r.core;
                if (build_core(b).degrees() != degs || internal_labels(b) != labels || half_edges(b) != halves)
                    res.fail(dump(e, f) + " switch changed the degrees");
                auto [e2, f2] = reversal_pair(e, f);
                auto back = try_switch(b, e2, f2);
                if (!back || *back.core != a) res.fail(dump(e, f) + " reversal does not restore A");
            } else if (!try_switch(a, e, reversed(f))) {
                const auto& re = a.records()[a.record_of(e.tail)];
                const auto& rf = a.records()[a.record_of(f.tail)];
                if (shared) {
                    ++res.counts["doubly invalid pairs, shared endpoint"];
                    continue;
                }
                ++res.counts["doubly invalid pairs, disjoint"];
                if (!disjoint_obstruction(bare, re, rf)) res.fail(dump(e, f) + " both orientations invalid without an obstruction");
                if (!literal_obstruction(bare, re, rf) && res.counts["disjoint pairs without the literal obstruction"]++ == 0)
                    res.notes.push_back("first disjoint pair without the literal obstruction:\n" + dump(e, f));
                if (!re.internal.empty() && (!rf.internal.empty() || has_free_endpoint(a, rf, re)))
                    res.fail(dump(e, f) + " subdivided e and free f, yet both orientations invalid");
            }
        }
}

}  // namespace detail

/// Every oriented pair on every augmented core of each d, plus `sampled` uniform
/// cores of each larger d: reversal, equivalent pairs, degree preservation, the
/// far-apart sufficient condition, and the obstruction behind two invalid
/// orientations of vertex-disjoint edges.
inline SuiteResult switching_suite(const std::vector<DegreeSequence>& ds, const std::vector<DegreeSequence>& larger = {},
                                   std::size_t sampled = 0, std::uint64_t seed = 1) {
    SuiteResult res;
    res.name = "switching";
    res.seconds = detail::timed([&] {
        for (auto& d : ds) {
            ++res.counts["degree sequences"];
            for_each_augmented_core(d, [&](const AugmentedCore& a) { detail::check_switches(a, res); });
        }
        std::uint64_t stream = 0;
        for (auto& d : larger) {
            ++res.counts["sampled degree sequences"];
            auto rng = make_stream(seed, stream++);
            for (std::size_t i = 0; i < sampled; ++i) detail::check_switches(sample_uniform_augmented_core(d, rng), res);
        }
    });
    return res;
}

namespace detail {

struct LoopClassKey {
    Label start;
    std::size_t t;
    std::vector<std::pair<HalfEdge, HalfEdge>> explored;
    std::vector<HalfEdge> queue;
    friend auto operator<=>(const LoopClassKey&, const LoopClassKey&) = default;
};

inline LoopClassKey loop_class_key(const AugmentedCore& a, const ExplorationState& s) {
    LoopClassKey k{s.start, s.t, {}, s.queue_half_edges()};
    for (std::size_t r : s.explored) k.explored.emplace_back(a.records()[r].a, a.records()[r].b);
    std::sort(k.explored.begin(), k.explored.end());
    return k;
}

inline ExplorationState state_at(const AugmentedCore& a, Label v, std::size_t t) {
    auto s = start_exploration(a, v);
    while (s.t < t && advance(a, s)) {
    }
    return s;
}

// the record e_{t+1} and whether it is a loop
inline std::pair<std::size_t, bool> next_record(const AugmentedCore& a, const ExplorationState& s) {
    HalfEdge h = s.queue.begin()->second;
    return {a.record_of(h), a.partner(h).vertex == h.vertex};
}

}  // namespace detail

/// The switching relation behind the loop bound, built on every class
/// C = {A : K_t(A,v) = K_t, Q_t(A,v) = Q_t}: each A with a loop next has at
/// least 2|E(A)| switchings into the non-loop side, each B on that side has at
/// most 4|Q_t| switchings back, and both directions count the same relation.
inline SuiteResult loop_switching_suite(const std::vector<DegreeSequence>& ds) {
    SuiteResult res;
    res.name = "loop switching";
    res.seconds = detail::timed([&] {
        for (auto& d : ds) {
            ++res.counts["degree sequences"];
            std::vector<AugmentedCore> all;
            for_each_augmented_core(d, [&](const AugmentedCore& a) { all.push_back(a); });
            const std::size_t m = all.empty() ? 0 : all.front().num_records();
            std::map<detail::LoopClassKey, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> classes;
            for (std::size_t i = 0; i < all.size(); ++i)
                for (Label v : all[i].kernel_vertices()) {
                    auto s = start_exploration(all[i], v);
                    while (!s.finished()) {
                        auto [rec, loop] = detail::next_record(all[i], s);
                        auto& cls = classes[detail::loop_class_key(all[i], s)];
                        (loop ? cls.first : cls.second).push_back(i);
                        advance(all[i], s);
                    }
                }
            auto side = [&](const AugmentedCore& b, const detail::LoopClassKey& key) -> int {
                auto s = detail::state_at(b, key.start, key.t);
                if (s.finished() || detail::loop_class_key(b, s) != key) return -1;
                return detail::next_record(b, s).second ? 0 : 1;
            };
            for (auto& [key, cls] : classes) {
                auto& [loops, others] = cls;
                if (loops.empty()) continue;
                ++res.counts["classes with a loop"];
                const std::string ktxt = "d=" + format_degrees(d) + " start=" + std::to_string(key.start) + " t=" + std::to_string(key.t);
                std::set<Label> kt;
                kt.insert(key.start);
                for (auto& [p, q] : key.explored) {
                    kt.insert(p.vertex);
                    kt.insert(q.vertex);
                }
                const std::size_t qsize = key.queue.size();
                std::size_t forward = 0, backward = 0, min_a = SIZE_MAX, max_b = 0;
                for (std::size_t i : loops) {
                    const AugmentedCore& a = all[i];
                    auto s = detail::state_at(a, key.start, key.t);
                    const auto& er = a.records()[detail::next_record(a, s).first];
                    // E(A): away from K_t, and subdivided or with an endpoint off N(K_t)
                    std::size_t edges = 0, count = 0;
                    for (std::size_t r = 0; r < a.num_records(); ++r) {
                        const auto& fr = a.records()[r];
                        Label x = fr.a.vertex, y = fr.b.vertex;
                        if (kt.count(x) || kt.count(y)) continue;
                        auto near = [&](Label z) {
                            for (Label w : kt)
                                if (detail::adjacent(a, z, w)) return true;
                            return false;
                        };
                        if (fr.internal.empty() && near(x) && near(y)) continue;
                        ++edges;
                        for (OrientedEdge e : {OrientedEdge{er.a, er.b}, OrientedEdge{er.b, er.a}}) {
                            bool any = false;
                            for (OrientedEdge f : {OrientedEdge{fr.a, fr.b}, OrientedEdge{fr.b, fr.a}}) {
                                auto sw = try_switch(a, e, f);
                                if (!sw) continue;
                                any = true;
                                if (side(*sw.core, key) != 1) res.fail(ktxt + " switching from a loop core leaves the class");
                                else ++count;
                            }
                            if (!any) res.fail(ktxt + " neither orientation of an E edge is valid:\n" + format_augmented_core(a));
                        }
                    }
                    if (count < 2 * edges) res.fail(ktxt + " fewer than 2|E| switchings");
                    forward += count;
                    min_a = std::min(min_a, count);
                    if (2 * edges >= m) ++res.counts["cores meeting |E| >= m/2"];
                }
                std::set<HalfEdge> q(key.queue.begin(), key.queue.end());
                for (std::size_t i : others) {
                    const AugmentedCore& b = all[i];
                    auto s = detail::state_at(b, key.start, key.t);
                    const auto er = detail::next_record(b, s).first;
                    std::size_t count = 0;
                    for (auto e : detail::oriented_edges(b))
                        for (auto f : detail::oriented_edges(b)) {
                            if (b.record_of(e.tail) == b.record_of(f.tail)) continue;
                            auto sw = try_switch(b, e, f);
                            if (!sw || side(*sw.core, key) != 0) continue;
                            // counted once per equivalence class: the member whose e is e_{t+1}
                            if (b.record_of(e.tail) == er) {
                                ++count;
                                if (!q.count(f.tail) && !q.count(f.head)) res.fail(ktxt + " switch into the loop side misses Q_t");
                            } else if (b.record_of(f.tail) != er) {
                                res.fail(ktxt + " switch into the loop side avoids e_{t+1}");
                            }
                        }
                    if (count > 4 * qsize) res.fail(ktxt + " more than 4|Q_t| switchings back");
                    backward += count;
                    max_b = std::max(max_b, count);
                }
                if (forward > backward) res.fail(ktxt + " forward switchings exceed the reverse relation");
                if (min_a * loops.size() > max_b * others.size())
                    res.fail(ktxt + " a|A| > b|B| with a=" + std::to_string(min_a) + " b=" + std::to_string(max_b));
                if (key.t + qsize + qsize * (qsize - 1) / 2 <= m / 2) {
                    ++res.counts["classes meeting the size condition"];
                    if (m * loops.size() > 4 * qsize * others.size()) res.fail(ktxt + " m|A| > 4|Q_t||B|");
                }
            }
        }
    });
    return res;
}

struct ChiSquareCase {
    std::string sampler, instance;
    ChiSquare test;
    std::size_t cells = 0, samples = 0;
};

/// Chi-square of a sampler's output against a uniform target given as a list.
template <class Draw>
ChiSquareCase uniformity_case(const std::string& sampler, const std::string& instance, const std::vector<LabeledGraph>& target,
                              std::size_t samples, Draw&& draw) {
    std::map<LabeledGraph, long> counts;
    std::set<LabeledGraph> support(target.begin(), target.end());
    std::size_t outside = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        auto g = draw();
        if (!support.count(g)) ++outside;
        ++counts[g];
    }
    ChiSquareCase c{sampler, instance, {}, support.size(), samples};
    if (outside) c.test = ChiSquare{INFINITY, 0, 0.0};
    else c.test = chi_square_uniform(counts, support.size());
    return c;
}

/// Exact samplers against enumeration: configuration rejection, Prüfer, and the
/// pushforward C(A) of uniform augmented cores.
inline SuiteResult sampler_suite(std::uint64_t seed, std::size_t samples = 100000, double alpha = 1e-3,
                                 std::vector<ChiSquareCase>* cases = nullptr) {
    SuiteResult res;
    res.name = "sampler uniformity";
    std::vector<ChiSquareCase> local;
    auto& out = cases ? *cases : local;
    res.seconds = detail::timed([&] {
        std::uint64_t stream = 0;
        struct Inst {
            std::vector<long> d;
            GraphClass cls;
        };
        const std::vector<Inst> reject = {{{2, 2, 2, 2}, GraphClass::all},
                                          {{1, 2, 2, 1}, GraphClass::all},
                                          {{1, 1, 2, 2, 2}, GraphClass::all},
                                          {{1, 1, 2, 2, 2, 2}, GraphClass::connected},
                                          {{2, 2, 2, 2, 2, 2}, GraphClass::all},
                                          {{3, 3, 2, 2, 2, 2}, GraphClass::no_cycle_components},
                                          {{3, 3, 3, 3, 2, 2}, GraphClass::all},
                                          {{1, 1, 1, 1, 2, 2}, GraphClass::all},
                                          {{3, 2, 2, 1, 1, 1}, GraphClass::connected}};
        for (auto& [dv, cls] : reject) {
            auto d = DegreeSequence::of(dv);
            auto rng = make_stream(seed, stream++);
            out.push_back(uniformity_case("reject", format_degrees(d) + " class=" + class_name(cls), enumerate(d, cls), samples,
                                          [&] { return sample_configuration_rejection(d, cls, rng); }));
        }
        const std::vector<std::vector<long>> trees = {{1, 2, 2, 1}, {1, 1, 2, 2, 2, 2}, {1, 1, 1, 1, 3, 3}, {3, 1, 2, 1, 2, 1, 2}};
        for (auto& dv : trees) {
            auto d = DegreeSequence::of(dv);
            auto rng = make_stream(seed, stream++);
            out.push_back(uniformity_case("prufer", format_degrees(d), enumerate(d, GraphClass::connected), samples,
                                          [&] { return sample_tree_prufer(d, rng); }));
        }
        for (auto& dv : std::vector<std::vector<long>>{{3, 3, 3, 3, 2, 2}, {3, 3, 2, 2, 2}}) {
            auto d = DegreeSequence::of(dv);
            auto rng = make_stream(seed, stream++);
            out.push_back(uniformity_case("augmented-core", format_degrees(d), enumerate(d, GraphClass::no_cycle_components), samples,
                                          [&] { return build_core(sample_uniform_augmented_core(d, rng)); }));
        }
        for (auto& c : out) {
            ++res.counts["chi-square tests"];
            res.notes.push_back(c.sampler + " " + c.instance + " cells=" + std::to_string(c.cells) +
                                " p=" + std::to_string(c.test.p_value));
            if (c.test.p_value <= alpha) res.fail(c.sampler + " " + c.instance + " p=" + std::to_string(c.test.p_value));
        }
    });
    return res;
}

/// Configuration rejection against enumerate on every non-increasing d with
/// |d|_1 ≤ max_sum, in every class with at least two members and at most
/// samples/5 of them. The tests are judged together at level alpha.
inline SuiteResult rejection_sweep_suite(std::uint64_t seed, long max_sum = 14, std::size_t samples = 100000, double alpha = 1e-3) {
    SuiteResult res;
    res.name = "rejection sweep";
    std::vector<double> ps;
    std::vector<std::string> names;
    res.seconds = detail::timed([&] {
        std::uint64_t stream = 0;
        std::vector<long> d;
        std::function<void(long, long)> rec = [&](long hi, long sum) {
            if (!d.empty() && sum % 2 == 0) {
                auto ds = DegreeSequence::of(d);
                ++res.counts["degree sequences"];
                for (GraphClass c : {GraphClass::all, GraphClass::connected, GraphClass::no_cycle_components}) {
                    auto target = enumerate(ds, c);
                    auto rng = make_stream(seed, stream++);
                    const std::string what = format_degrees(ds) + " class=" + class_name(c);
                    if (target.empty()) {
                        ++res.counts["empty classes"];
                        continue;
                    }
                    if (target.size() == 1) {
                        ++res.counts["single-member classes"];
                        if (sample_configuration_rejection(ds, c, rng) != target.front()) res.fail(what + " sampled outside the class");
                        continue;
                    }
                    if (target.size() * 5 > samples) {
                        ++res.counts["classes too large for the sample size"];
                        continue;
                    }
                    auto t = uniformity_case("reject", what, target, samples, [&] { return sample_configuration_rejection(ds, c, rng); });
                    ++res.counts["chi-square tests"];
                    ps.push_back(t.test.p_value);
                    names.push_back(what);
                }
            }
            for (long k = std::min(hi, max_sum - sum); k >= 1; --k) {
                d.push_back(k);
                rec(k, sum + k);
                d.pop_back();
            }
        };
        rec(max_sum, 0);
        auto v = family_wise(ps, alpha);
        res.counts["raw p <= alpha"] = v.raw_hits;
        std::size_t worst = std::min_element(ps.begin(), ps.end()) - ps.begin();
        if (!ps.empty())
            res.notes.push_back("min p " + std::to_string(v.min_p) + " at " + names[worst] + "; per-test level " +
                                std::to_string(v.per_test_level) + "; raw hits " + std::to_string(v.raw_hits) + " of at most " +
                                std::to_string(v.allowed_hits));
        if (!v.passed)
            res.fail(v.min_p <= v.per_test_level ? names[worst] + " p=" + std::to_string(v.min_p)
                                                 : std::to_string(v.raw_hits) + " raw rejections, chance allows " +
                                                       std::to_string(v.allowed_hits));
    });
    return res;
}

}  // namespace rgd
