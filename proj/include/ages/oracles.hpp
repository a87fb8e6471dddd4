#ifndef AGES_ORACLES_HPP
#define AGES_ORACLES_HPP

#include <algorithm>

#include "ages/ideals.hpp"

namespace ages {

// Built-in ideal presentations over relational structures.  The metric and
// ash flavors live with their modules; registry.hpp maps CLI tokens onto all
// of them.

// Largest size whose labeled enumeration stays within the resource guard.
inline int enumeration_limit(const Signature& sig) {
    int n = 0;
    while (cell_count(sig, n + 1) <= 24) ++n;
    return n;
}

// The full ideal of all finite structures over `sig`.
inline IdealOracle<Structure> oracle_all(const Signature& sig) {
    IdealOracle<Structure> o;
    o.name = "all";
    o.member = [](const Structure&) { return true; };
    o.generate = [sig](int k) { return enumerate_canonical(sig, k); };
    o.generator_complete_to = enumeration_limit(sig);
    return o;
}

inline bool is_simple_graph(const Structure& s) {
    if (s.signature().count() != 1 || s.signature().arity(0) != 2) return false;
    for (const Tuple& t : s.table(0)) {
        if (t[0] == t[1]) return false;
        if (!s.holds(0, {t[1], t[0]})) return false;
    }
    return true;
}

inline bool has_triangle(const Structure& s) {
    for (int x = 0; x < s.size(); ++x)
        for (int y = x + 1; y < s.size(); ++y)
            for (int z = y + 1; z < s.size(); ++z)
                if (s.holds(0, {x, y}) && s.holds(0, {y, z}) && s.holds(0, {x, z})) return true;
    return false;
}

namespace detail {

// All graphs (symmetric irreflexive) on n vertices satisfying `keep`,
// canonically deduplicated.
inline std::vector<Structure> enumerate_graphs(const Signature& sig, int n,
                                               const std::function<bool(const Structure&)>& keep) {
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
    if (pairs.size() > 24) throw resource_error("graph enumeration too large");
    std::map<IsoType, Structure> reps;
    for (std::uint64_t mask = 0; mask < (static_cast<std::uint64_t>(1) << pairs.size()); ++mask) {
        std::vector<std::set<Tuple>> tables(1);
        for (std::size_t c = 0; c < pairs.size(); ++c)
            if (mask & (static_cast<std::uint64_t>(1) << c)) {
                tables[0].insert({pairs[c].first, pairs[c].second});
                tables[0].insert({pairs[c].second, pairs[c].first});
            }
        Structure g(sig, n, std::move(tables));
        if (!keep(g)) continue;
        IsoType code = canonical_form(g);
        if (!reps.count(code)) reps.emplace(code, canonical_representative(g));
    }
    std::vector<Structure> out;
    for (auto& [code, rep] : reps) out.push_back(rep);
    return out;
}

}  // namespace detail

// Triangle-free simple graphs over a single binary relation.
inline IdealOracle<Structure> oracle_triangle_free(const Signature& sig = Signature::binary(1, "E")) {
    if (sig.count() != 1 || sig.arity(0) != 2)
        throw input_error("triangle-free oracle needs a single binary relation");
    IdealOracle<Structure> o;
    o.name = "triangle-free";
    o.member = [](const Structure& s) { return is_simple_graph(s) && !has_triangle(s); };
    o.generate = [sig](int k) {
        return detail::enumerate_graphs(sig, k,
                                        [](const Structure& g) { return !has_triangle(g); });
    };
    o.generator_complete_to = 7;
    return o;
}

inline bool is_linear_order(const Structure& s) {
    if (s.signature().count() != 1 || s.signature().arity(0) != 2) return false;
    for (int x = 0; x < s.size(); ++x) {
        if (s.holds(0, {x, x})) return false;
        for (int y = 0; y < s.size(); ++y) {
            if (x == y) continue;
            if (s.holds(0, {x, y}) == s.holds(0, {y, x})) return false;
            for (int z = 0; z < s.size(); ++z)
                if (s.holds(0, {x, y}) && s.holds(0, {y, z}) && !s.holds(0, {x, z}) && x != z && y != z)
                    return false;
        }
    }
    return true;
}

// Finite strict linear orders; one isomorphism type per size.
inline IdealOracle<Structure> oracle_linear_orders(const Signature& sig = Signature::binary(1, "lt")) {
    if (sig.count() != 1 || sig.arity(0) != 2)
        throw input_error("linear-orders oracle needs a single binary relation");
    IdealOracle<Structure> o;
    o.name = "linear-orders";
    o.member = is_linear_order;
    o.generate = [sig](int k) {
        std::vector<std::pair<int, Tuple>> tuples;
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y) tuples.push_back({0, {x, y}});
        return std::vector<Structure>{canonical_representative(make_structure(sig, k, tuples))};
    };
    o.generator_complete_to = 64;
    return o;
}

}  // namespace ages

#endif  // AGES_ORACLES_HPP
