#ifndef AGES_TESTS_BRUTE_HPP
#define AGES_TESTS_BRUTE_HPP

// Brute-force oracles used to validate the library's search and canonical
// form machinery.  These deliberately avoid the implementation paths they
// check: embeddings and isomorphisms are verified tuple-by-tuple over plain
// enumerations of all injections / bijections.

#include <numeric>
#include <optional>
#include <vector>

#include "ages/structures.hpp"

namespace ages::oracles {

// Calls fn on every injection [0,m) -> [0,n) in lexicographic image order
// until fn returns true; returns the first accepted injection.
inline std::optional<std::vector<int>> first_injection(
    int m, int n, const std::function<bool(const std::vector<int>&)>& accept) {
    std::vector<int> img(static_cast<std::size_t>(m), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<std::optional<std::vector<int>>(int)> rec =
        [&](int pos) -> std::optional<std::vector<int>> {
        if (pos == m) return accept(img) ? std::optional(img) : std::nullopt;
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            img[pos] = w;
            used[w] = true;
            if (auto r = rec(pos + 1)) return r;
            used[w] = false;
        }
        img[pos] = -1;
        return std::nullopt;
    };
    return rec(0);
}

// Plain full-map embedding check, written independently of is_embedding.
inline bool map_is_embedding(const std::vector<int>& img, const Structure& a, const Structure& b) {
    for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = 0; j < img.size(); ++j)
            if (i != j && img[i] == img[j]) return false;
    std::vector<int> dom(static_cast<std::size_t>(a.size()));
    std::iota(dom.begin(), dom.end(), 0);
    for (int r = 0; r < a.signature().count(); ++r) {
        bool ok = true;
        detail::for_each_tuple(dom, a.signature().arity(r), [&](const Tuple& t) {
            if (!ok) return;
            Tuple m;
            for (int e : t) m.push_back(img[static_cast<std::size_t>(e)]);
            if (a.holds(r, t) != b.holds(r, m)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

inline std::optional<std::vector<int>> brute_find_embedding(const Structure& a, const Structure& b) {
    if (a.size() > b.size()) return std::nullopt;
    return first_injection(a.size(), b.size(),
                           [&](const std::vector<int>& img) { return map_is_embedding(img, a, b); });
}

inline bool brute_isomorphic(const Structure& a, const Structure& b) {
    if (a.size() != b.size()) return false;
    return brute_find_embedding(a, b).has_value() && brute_find_embedding(b, a).has_value();
}

}  // namespace ages::oracles

#endif  // AGES_TESTS_BRUTE_HPP
