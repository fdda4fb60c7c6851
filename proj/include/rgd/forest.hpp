#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rgd/graph.hpp"

namespace rgd {

/// Parent map plus root set over an ordered label set.
class RootedForest {
public:
    RootedForest() = default;

    // parent_of lists every non-root vertex; every other vertex is a root.
    RootedForest(std::vector<Label> vertices, const std::map<Label, Label>& parent_of) : index_(std::move(vertices)) {
        parent_.assign(index_.size(), kNoVertex);
        for (auto& [v, p] : parent_of) {
            std::size_t i = index_.index(v), j = index_.index(p);
            if (i == kNoVertex || j == kNoVertex) throw InvalidInput("parent map mentions an unknown vertex");
            parent_[i] = j;
        }
        finish();
    }

    // Unchecked labels: labels sorted and distinct, parents given by index.
    static RootedForest from_indices(std::vector<Label> sorted_labels, std::vector<std::size_t> parent) {
        RootedForest f;
        f.index_ = detail::LabelIndex(std::move(sorted_labels));
        f.parent_ = std::move(parent);
        f.finish();
        return f;
    }

    std::size_t num_vertices() const { return index_.size(); }
    bool empty() const { return index_.size() == 0; }
    const std::vector<Label>& vertices() const { return index_.labels(); }
    bool contains(Label v) const { return index_.contains(v); }
    Label label(std::size_t i) const { return index_.label(i); }
    std::size_t index(Label v) const { return index_.index(v); }

    std::size_t parent_at(std::size_t i) const { return parent_[i]; }
    std::optional<Label> parent(Label v) const {
        std::size_t p = parent_[checked(v)];
        if (p == kNoVertex) return std::nullopt;
        return index_.label(p);
    }
    bool is_root(Label v) const { return parent_[checked(v)] == kNoVertex; }
    std::vector<Label> roots() const {
        std::vector<Label> out;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (parent_[i] == kNoVertex) out.push_back(index_.label(i));
        return out;
    }
    std::vector<Label> children(Label v) const {
        std::size_t i = checked(v);
        std::vector<Label> out;
        for (std::size_t j = 0; j < parent_.size(); ++j)
            if (parent_[j] == i) out.push_back(index_.label(j));
        return out;
    }
    long child_count(Label v) const { return child_count_[checked(v)]; }
    long child_count_at(std::size_t i) const { return child_count_[i]; }
    ChildSequence child_sequence() const {
        std::vector<LabelledCounts::Entry> e;
        for (std::size_t i = 0; i < parent_.size(); ++i) e.emplace_back(index_.label(i), child_count_[i]);
        return ChildSequence(std::move(e));
    }

    /// Distance to the root of v's tree.
    long height(Label v) const { return depth_[checked(v)]; }
    long height_at(std::size_t i) const { return depth_[i]; }
    /// Largest height; 0 for the empty forest.
    long height() const {
        long h = 0;
        for (long d : depth_) h = std::max(h, d);
        return h;
    }
    Label root_of(Label v) const {
        std::size_t i = checked(v);
        while (parent_[i] != kNoVertex) i = parent_[i];
        return index_.label(i);
    }
    /// Vertices from the root of v's tree down to v.
    std::vector<Label> path_from_root(Label v) const {
        std::vector<Label> up;
        for (std::size_t i = checked(v); i != kNoVertex; i = parent_[i]) up.push_back(index_.label(i));
        return {up.rbegin(), up.rend()};
    }
    std::map<Label, Label> parent_map() const {
        std::map<Label, Label> m;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (parent_[i] != kNoVertex) m.emplace(index_.label(i), index_.label(parent_[i]));
        return m;
    }
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (parent_[i] != kNoVertex) out.emplace_back(index_.label(i), index_.label(parent_[i]));
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const RootedForest& a, const RootedForest& b) {
        return a.index_ == b.index_ && a.parent_ == b.parent_;
    }
    friend bool operator<(const RootedForest& a, const RootedForest& b) {
        if (!(a.index_ == b.index_)) return a.index_ < b.index_;
        return a.parent_ < b.parent_;
    }

private:
    std::size_t checked(Label v) const {
        std::size_t i = index_.index(v);
        if (i == kNoVertex) throw InvalidInput("unknown vertex " + std::to_string(v));
        return i;
    }
    void finish() {
        const std::size_t n = parent_.size();
        child_count_.assign(n, 0);
        depth_.assign(n, -1);
        for (std::size_t i = 0; i < n; ++i)
            if (parent_[i] != kNoVertex) {
                if (parent_[i] >= n) throw InvalidInput("parent index out of range");
                ++child_count_[parent_[i]];
            }
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i;
            while (depth_[j] < 0 && parent_[j] != kNoVertex) {
                stack.push_back(j);
                j = parent_[j];
                if (stack.size() > n) throw InvalidInput("parent map has a cycle");
            }
            if (depth_[j] < 0) depth_[j] = 0;
            long d = depth_[j];
            while (!stack.empty()) {
                depth_[stack.back()] = ++d;
                stack.pop_back();
            }
        }
    }

    detail::LabelIndex index_;
    std::vector<std::size_t> parent_;
    std::vector<long> child_count_;
    std::vector<long> depth_;
};

// "root r; v:p v:p ..." for a tree, "roots r s; ..." for a forest.
inline std::string format_forest(const RootedForest& f) {
    std::ostringstream out;
    auto rs = f.roots();
    out << (rs.size() == 1 ? "root" : "roots");
    for (Label r : rs) out << ' ' << r;
    out << ';';
    for (auto& [v, p] : f.parent_map()) out << ' ' << v << ':' << p;
    return out.str();
}

inline RootedForest parse_forest(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw InvalidInput("forest text needs 'root r; v:p ...'");
    std::istringstream head(text.substr(0, semi));
    std::string word;
    head >> word;
    if (word != "root" && word != "roots") throw InvalidInput("forest text must start with 'root'");
    std::vector<Label> vs;
    Label r;
    while (head >> r) vs.push_back(r);
    std::vector<Label> declared = vs;
    std::sort(declared.begin(), declared.end());
    std::map<Label, Label> parent;
    std::istringstream body(text.substr(semi + 1));
    std::string tok;
    while (body >> tok) {
        auto c = tok.find(':');
        if (c == std::string::npos) throw InvalidInput("expected v:parent, got " + tok);
        Label v = detail::parse_long(tok.substr(0, c)), p = detail::parse_long(tok.substr(c + 1));
        if (!parent.emplace(v, p).second) throw InvalidInput("vertex listed twice: " + tok);
        vs.push_back(v);
        vs.push_back(p);
    }
    RootedForest f(std::move(vs), parent);
    if (f.roots() != declared) throw InvalidInput("declared roots differ from the parent map");
    return f;
}

}  // namespace rgd
