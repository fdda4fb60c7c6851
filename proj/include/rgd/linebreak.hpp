#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "rgd/forest.hpp"
#include "rgd/random.hpp"

namespace rgd {

using Sequence = std::vector<Label>;

/// Line-breaking: leaves in increasing label order, each contributing the path
/// from the already-listed part of the tree down to the leaf's parent.
inline Sequence tree_to_sequence(const RootedForest& t) {
    if (t.roots().size() != 1) throw InvalidInput("line-breaking needs a single tree");
    const std::size_t n = t.num_vertices();
    std::vector<char> marked(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (t.parent_at(i) == kNoVertex) marked[i] = 1;
    Sequence out;
    out.reserve(n ? n - 1 : 0);
    std::vector<std::size_t> up;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        if (t.child_count_at(leaf) != 0 || t.parent_at(leaf) == kNoVertex) continue;
        up.clear();
        std::size_t cur = t.parent_at(leaf);
        while (!marked[cur]) {
            up.push_back(cur);
            marked[cur] = 1;
            cur = t.parent_at(cur);
        }
        up.push_back(cur);
        for (auto it = up.rbegin(); it != up.rend(); ++it) out.push_back(t.label(*it));
    }
    return out;
}

/// Inverse of tree_to_sequence for sequences with multiplicities c.
inline RootedForest sequence_to_tree(const Sequence& seq, const ChildSequence& c) {
    if (!c.is_tree_sequence()) throw InvalidInput("child sequence does not sum to (vertices - 1)");
    if (static_cast<long>(seq.size()) != c.total()) throw InvalidInput("sequence length differs from the child count total");
    std::vector<Label> labels = c.labels();
    detail::LabelIndex index(labels);
    const std::size_t n = labels.size();
    std::vector<std::size_t> parent(n, kNoVertex);
    if (seq.empty()) return RootedForest::from_indices(std::move(labels), std::move(parent));

    std::vector<long> left(n);
    std::vector<std::size_t> leaves;
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = c.entries()[i].second;
        if (left[i] == 0) leaves.push_back(i);
    }
    std::vector<std::size_t> idx(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        idx[i] = index.index(seq[i]);
        if (idx[i] == kNoVertex || left[idx[i]]-- <= 0) throw InvalidInput("sequence multiplicities differ from the child sequence");
    }
    std::vector<char> seen(n, 0);
    std::size_t prev = idx[0], k = 0;
    seen[prev] = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        std::size_t x = idx[i];
        if (seen[x]) {
            parent[leaves[k++]] = prev;
        } else {
            parent[x] = prev;
            seen[x] = 1;
        }
        prev = x;
    }
    parent[leaves[k++]] = prev;
    if (k != leaves.size()) throw InvalidInput("sequence does not encode a tree");
    return RootedForest::from_indices(std::move(labels), std::move(parent));
}

/// r(V), 1-based; nullopt when no entry repeats.
inline std::optional<std::size_t> first_repetition(const Sequence& v) {
    if (v.size() <= 64) {
        for (std::size_t i = 1; i < v.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (v[j] == v[i]) return i + 1;
        return std::nullopt;
    }
    std::unordered_set<Label> seen;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!seen.insert(v[i]).second) return i + 1;
    return std::nullopt;
}

/// f(V), 1-based: last position holding a symbol that occurs exactly once.
inline std::optional<std::size_t> final_singleton(const Sequence& v) {
    for (std::size_t i = v.size(); i-- > 0;)
        if (std::count(v.begin(), v.end(), v[i]) == 1) return i + 1;
    return std::nullopt;
}

namespace detail {
// e_0..e_upto of the given values.
inline std::vector<BigInt> elementary_symmetric(const std::vector<long>& values, long upto) {
    std::vector<BigInt> e(upto + 1, BigInt(0));
    e[0] = 1;
    long seen = 0;
    for (long v : values) {
        ++seen;
        for (long k = std::min(seen, upto); k >= 1; --k) e[k] += e[k - 1] * v;
    }
    return e;
}

inline std::vector<long> nonzero_counts(const ChildSequence& c) {
    std::vector<long> out;
    for (auto& e : c.entries())
        if (e.second > 0) out.push_back(e.second);
    return out;
}
}  // namespace detail

/// |{V ∈ V_c : r(V) > h}| via the elementary symmetric sum over nonzero entries.
inline BigInt count_first_rep_above(const ChildSequence& c, long h) {
    const long n = c.total();
    if (h < 0) throw InvalidInput("negative height");
    if (h > n) return 0;
    auto e = detail::elementary_symmetric(detail::nonzero_counts(c), h);
    BigInt r = factorial(h) * factorial(n - h) * e[h];
    for (auto& x : c.entries()) r /= factorial(x.second);
    return r;
}

/// All of the above for h = 0..n in one pass.
inline std::vector<BigInt> first_rep_tail_counts(const ChildSequence& c) {
    const long n = c.total();
    auto e = detail::elementary_symmetric(detail::nonzero_counts(c), n);
    BigInt denom = 1;
    for (auto& x : c.entries()) denom *= factorial(x.second);
    std::vector<BigInt> out(n + 2, BigInt(0));
    BigInt fh = 1;  // h!
    for (long h = 0; h <= n; ++h) {
        if (h > 0) fh *= h;
        out[h] = fh * factorial(n - h) * e[h] / denom;
    }
    return out;
}

/// Every sequence of V_c in lexicographic order.
inline void for_each_sequence(const ChildSequence& c, const std::function<void(const Sequence&)>& f) {
    Sequence v = c.multiset();
    do f(v);
    while (std::next_permutation(v.begin(), v.end()));
}

/// Every tree of T_c, via line-breaking.
inline void for_each_tree(const ChildSequence& c, const std::function<void(const RootedForest&)>& f) {
    for_each_sequence(c, [&](const Sequence& v) { f(sequence_to_tree(v, c)); });
}

/// Every forest with child sequence c (roots are the vertices nobody has as a child).
inline void for_each_forest(const ChildSequence& c, const std::function<void(const RootedForest&)>& f) {
    const long roots = static_cast<long>(c.size()) - c.total();
    if (roots < 1) throw InvalidInput("a forest needs at least one root");
    auto e = c.entries();
    const Label top = e.empty() ? 0 : e.back().first + 1;
    e.emplace_back(top, roots);
    ChildSequence cc(std::move(e));
    Sequence rest = c.multiset();
    rest.insert(rest.end(), roots - 1, top);
    std::sort(rest.begin(), rest.end());
    Sequence v(rest.size() + 1);
    v[0] = top;
    do {
        std::copy(rest.begin(), rest.end(), v.begin() + 1);
        RootedForest t = sequence_to_tree(v, cc);
        std::map<Label, Label> parent;
        for (auto& [x, p] : t.parent_map())
            if (p != top) parent.emplace(x, p);
        f(RootedForest(c.labels(), parent));
    } while (std::next_permutation(rest.begin(), rest.end()));
}

template <class R>
Sequence random_sequence(const ChildSequence& c, R& rng) {
    Sequence v = c.multiset();
    std::shuffle(v.begin(), v.end(), rng);
    return v;
}

/// Uniform tree with child sequence c.
template <class R>
RootedForest random_tree(const ChildSequence& c, R& rng) {
    return sequence_to_tree(random_sequence(c, rng), c);
}

/// Uniform forest with child sequence c (roots: the |S| − Σc vertices that are
/// nobody's child). A temporary super-root carries the roots as children.
template <class R>
RootedForest random_forest(const ChildSequence& c, R& rng) {
    const long roots = static_cast<long>(c.size()) - c.total();
    if (roots < 1) throw InvalidInput("a forest needs at least one root");
    auto e = c.entries();
    const Label top = e.empty() ? 0 : e.back().first + 1;
    e.emplace_back(top, roots);
    ChildSequence cc(std::move(e));
    Sequence v = cc.multiset();
    auto first = std::find(v.begin(), v.end(), top);
    std::iter_swap(v.begin(), first);
    std::shuffle(v.begin() + 1, v.end(), rng);
    RootedForest t = sequence_to_tree(v, cc);
    std::map<Label, Label> parent;
    for (auto& [x, p] : t.parent_map())
        if (p != top) parent.emplace(x, p);
    return RootedForest(c.labels(), parent);
}

struct StarReduction {
    RootedForest tree;
    Composition composition;
};

/// (T, P) from T*: one-child vertices (all on the root-to-0 path) are spliced out
/// and their heights recorded as gaps.
inline StarReduction star_tree_reduction(const RootedForest& tstar) {
    if (tstar.roots().size() != 1) throw InvalidInput("star reduction needs a single tree");
    if (!tstar.contains(0) || tstar.child_count(0) != 0) throw InvalidInput("vertex 0 must be a leaf");
    auto path = tstar.path_from_root(0);
    std::vector<char> on_path(tstar.num_vertices(), 0);
    for (Label v : path) on_path[tstar.index(v)] = 1;
    std::vector<long> heights;
    for (std::size_t i = 0; i < tstar.num_vertices(); ++i)
        if (tstar.child_count_at(i) == 1) {
            if (!on_path[i]) throw InvalidInput("one-child vertex " + std::to_string(tstar.label(i)) + " lies off the path to 0");
        }
    for (Label v : path)
        if (tstar.child_count(v) == 1) heights.push_back(tstar.height(v));
    heights.push_back(tstar.height(0));
    Composition p;
    for (std::size_t i = 0; i < heights.size(); ++i) p.parts.push_back(i == 0 ? heights[0] : heights[i] - heights[i - 1] - 1);

    std::vector<Label> keep;
    std::map<Label, Label> parent;
    for (std::size_t i = 0; i < tstar.num_vertices(); ++i) {
        if (tstar.child_count_at(i) == 1) continue;
        keep.push_back(tstar.label(i));
        std::size_t p2 = tstar.parent_at(i);
        while (p2 != kNoVertex && tstar.child_count_at(p2) == 1) p2 = tstar.parent_at(p2);
        if (p2 != kNoVertex) parent.emplace(tstar.label(i), tstar.label(p2));
    }
    return StarReduction{RootedForest(keep, parent), std::move(p)};
}

inline std::string format_sequence(const Sequence& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    return out.str();
}

inline Sequence parse_sequence(const std::string& text) {
    std::istringstream in(text);
    Sequence v;
    std::string tok;
    while (in >> tok) v.push_back(detail::parse_long(tok));
    return v;
}

}  // namespace rgd
