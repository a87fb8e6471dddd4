#ifndef AGES_STRUCTURES_HPP
#define AGES_STRUCTURES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ages/scalars.hpp"

namespace ages {

using Tuple = std::vector<int>;

// ---------------------------------------------------------------------------
// Signature: an ordered list of (relation name, arity).  Order is part of the
// identity; two signatures with the same entries in a different order are
// different (canonical codes and file round-trips depend on the order).
// ---------------------------------------------------------------------------
struct SigEntry {
    std::string name;
    int arity = 0;
    bool operator==(const SigEntry&) const = default;
};

class Signature {
  public:
    Signature() = default;
    explicit Signature(std::vector<SigEntry> entries) : entries_(std::move(entries)) {
        std::set<std::string> seen;
        for (const auto& e : entries_) {
            if (e.arity < 1) throw input_error("relation arity must be >= 1: " + e.name);
            if (!seen.insert(e.name).second)
                throw input_error("duplicate relation name in signature: " + e.name);
        }
    }

    // n binary relations named R0..R{n-1}.
    static Signature binary(int count, const std::string& prefix = "R") {
        std::vector<SigEntry> es;
        for (int i = 0; i < count; ++i) es.push_back({prefix + std::to_string(i), 2});
        return Signature(std::move(es));
    }

    static Signature named(std::initializer_list<SigEntry> es) {
        return Signature(std::vector<SigEntry>(es));
    }

    int count() const { return static_cast<int>(entries_.size()); }
    const SigEntry& entry(int i) const { return entries_.at(i); }
    const std::vector<SigEntry>& entries() const { return entries_; }
    int arity(int i) const { return entries_.at(i).arity; }

    std::optional<int> index_of(const std::string& name) const {
        for (int i = 0; i < count(); ++i)
            if (entries_[i].name == name) return i;
        return std::nullopt;
    }

    bool operator==(const Signature&) const = default;

    std::string render() const {
        std::string s;
        for (int i = 0; i < count(); ++i) {
            if (i) s += ' ';
            s += entries_[i].name + "/" + std::to_string(entries_[i].arity);
        }
        return s;
    }

  private:
    std::vector<SigEntry> entries_;
};

// ---------------------------------------------------------------------------
// Structure: a finite relational structure.  Elements are 0..n-1; each
// relation is stored sparsely as the set of tuples at which it holds.
// Immutable after construction.
// ---------------------------------------------------------------------------
class Structure {
  public:
    Structure() = default;

    Structure(Signature sig, int size, std::vector<std::set<Tuple>> tables)
        : sig_(std::move(sig)), size_(size), tables_(std::move(tables)) {
        if (size_ < 0) throw input_error("negative structure size");
        if (static_cast<int>(tables_.size()) != sig_.count())
            throw input_error("table count does not match signature");
        for (int i = 0; i < sig_.count(); ++i)
            for (const Tuple& t : tables_[i]) check_tuple(i, t);
    }

    Structure(Signature sig, int size)
        : sig_(std::move(sig)), size_(size), tables_(static_cast<std::size_t>(sig_.count())) {
        if (size_ < 0) throw input_error("negative structure size");
    }

    const Signature& signature() const { return sig_; }
    int size() const { return size_; }
    const std::set<Tuple>& table(int index) const { return tables_.at(index); }
    const std::vector<std::set<Tuple>>& tables() const { return tables_; }

    bool holds(int index, const Tuple& t) const { return tables_.at(index).count(t) > 0; }

    std::size_t tuple_count() const {
        std::size_t n = 0;
        for (const auto& t : tables_) n += t.size();
        return n;
    }

    bool operator==(const Structure&) const = default;
    bool operator<(const Structure& o) const {
        if (size_ != o.size_) return size_ < o.size_;
        return tables_ < o.tables_;
    }

    // Single-line rendering used in reports and witnesses.
    std::string render_compact() const {
        std::ostringstream os;
        os << "elements=" << size_;
        for (int i = 0; i < sig_.count(); ++i) {
            os << ' ' << sig_.entry(i).name << "={";
            bool first = true;
            for (const Tuple& t : tables_[i]) {
                if (!first) os << ',';
                first = false;
                os << '(';
                for (std::size_t p = 0; p < t.size(); ++p) {
                    if (p) os << ',';
                    os << t[p];
                }
                os << ')';
            }
            os << '}';
        }
        return os.str();
    }

  private:
    void check_tuple(int index, const Tuple& t) const {
        if (static_cast<int>(t.size()) != sig_.arity(index))
            throw input_error("tuple length does not match arity of " + sig_.entry(index).name);
        for (int e : t)
            if (e < 0 || e >= size_) throw input_error("tuple element out of range");
    }

    Signature sig_;
    int size_ = 0;
    std::vector<std::set<Tuple>> tables_;
};

// Convenience builder for tests and generators.
inline Structure make_structure(const Signature& sig, int size,
                                const std::vector<std::pair<int, Tuple>>& tuples) {
    std::vector<std::set<Tuple>> tables(sig.count());
    for (const auto& [idx, t] : tuples) {
        if (idx < 0 || idx >= sig.count()) throw input_error("relation index out of range");
        if (!tables[idx].insert(t).second) throw input_error("duplicate tuple");
    }
    return Structure(sig, size, std::move(tables));
}

// ---------------------------------------------------------------------------
// ElementMap: a total map 0..k-1 -> target elements, as an image list.
// ---------------------------------------------------------------------------
struct ElementMap {
    std::vector<int> images;

    int domain_size() const { return static_cast<int>(images.size()); }
    int operator()(int x) const { return images.at(x); }

    bool injective() const {
        std::set<int> seen(images.begin(), images.end());
        return seen.size() == images.size();
    }

    std::string render() const {
        std::string s;
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(i) + "->" + std::to_string(images[i]);
        }
        return s;
    }

    bool operator==(const ElementMap&) const = default;
};

// Composition (g after f).
inline ElementMap compose(const ElementMap& g, const ElementMap& f) {
    ElementMap r;
    r.images.reserve(f.images.size());
    for (int x : f.images) r.images.push_back(g(x));
    return r;
}

// ---------------------------------------------------------------------------
// IsoType: canonical code of a structure.  Equal codes <=> isomorphic (for
// structures over the same signature).
// ---------------------------------------------------------------------------
struct IsoType {
    std::string code;
    int size = 0;

    bool operator==(const IsoType& o) const { return code == o.code; }
    bool operator<(const IsoType& o) const { return code < o.code; }
};

// ---------------------------------------------------------------------------
// restrict / reduct
// ---------------------------------------------------------------------------

// Substructure induced on `subset`; elements renumbered by increasing
// original index.
inline Structure restrict_to(const Structure& s, const std::vector<int>& subset) {
    std::vector<int> sorted(subset);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> renum(static_cast<std::size_t>(s.size()), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        int e = sorted[i];
        if (e < 0 || e >= s.size()) throw input_error("restriction element out of range");
        renum[e] = static_cast<int>(i);
    }
    std::vector<std::set<Tuple>> tables(s.signature().count());
    for (int i = 0; i < s.signature().count(); ++i) {
        for (const Tuple& t : s.table(i)) {
            Tuple mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (int e : t) {
                if (renum[e] < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(renum[e]);
            }
            if (inside) tables[i].insert(mapped);
        }
    }
    return Structure(s.signature(), static_cast<int>(sorted.size()), std::move(tables));
}

// Keeps only the listed signature indices (original relative order).
inline Structure reduct(const Structure& s, const std::vector<int>& indices) {
    std::set<int> keep;
    for (int i : indices) {
        if (i < 0 || i >= s.signature().count()) throw input_error("unknown signature index in reduct");
        keep.insert(i);
    }
    std::vector<SigEntry> entries;
    std::vector<std::set<Tuple>> tables;
    for (int i = 0; i < s.signature().count(); ++i) {
        if (keep.count(i)) {
            entries.push_back(s.signature().entry(i));
            tables.push_back(s.table(i));
        }
    }
    return Structure(Signature(std::move(entries)), s.size(), std::move(tables));
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

namespace detail {

// Enumerates all tuples of the given arity over `domain`, calling fn on each.
inline void for_each_tuple(const std::vector<int>& domain, int arity,
                           const std::function<void(const Tuple&)>& fn) {
    Tuple t(static_cast<std::size_t>(arity));
    std::function<void(int)> rec = [&](int pos) {
        if (pos == arity) {
            fn(t);
            return;
        }
        for (int e : domain) {
            t[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1);
        }
    };
    rec(0);
}

}  // namespace detail

// True iff f is injective and preserves and reflects every relation.
inline bool is_embedding(const ElementMap& f, const Structure& a, const Structure& b) {
    if (a.signature() != b.signature()) throw input_error("signature mismatch in is_embedding");
    if (f.domain_size() != a.size()) throw input_error("map not total on domain structure");
    for (int x : f.images)
        if (x < 0 || x >= b.size()) return false;
    if (!f.injective()) return false;
    std::vector<int> domain(static_cast<std::size_t>(a.size()));
    std::iota(domain.begin(), domain.end(), 0);
    for (int i = 0; i < a.signature().count(); ++i) {
        bool ok = true;
        detail::for_each_tuple(domain, a.signature().arity(i), [&](const Tuple& t) {
            if (!ok) return;
            Tuple img;
            img.reserve(t.size());
            for (int e : t) img.push_back(f(e));
            if (a.holds(i, t) != b.holds(i, img)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

namespace detail {

// Checks the partial map `img` (first k+1 elements assigned) on every tuple
// whose support lies in the assigned prefix and involves the newest element.
inline bool partial_consistent(const Structure& a, const Structure& b, const std::vector<int>& img,
                               int newest) {
    std::vector<int> assigned(static_cast<std::size_t>(newest + 1));
    std::iota(assigned.begin(), assigned.end(), 0);
    for (int i = 0; i < a.signature().count(); ++i) {
        bool ok = true;
        for_each_tuple(assigned, a.signature().arity(i), [&](const Tuple& t) {
            if (!ok) return;
            if (std::find(t.begin(), t.end(), newest) == t.end()) return;
            Tuple mapped;
            mapped.reserve(t.size());
            for (int e : t) mapped.push_back(img[static_cast<std::size_t>(e)]);
            if (a.holds(i, t) != b.holds(i, mapped)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace detail

// Finds the embedding with the lexicographically least image sequence, if
// any embedding exists.
inline std::optional<ElementMap> find_embedding(const Structure& a, const Structure& b) {
    if (a.signature() != b.signature()) throw input_error("signature mismatch in find_embedding");
    int m = a.size(), n = b.size();
    if (m > n) return std::nullopt;
    std::vector<int> img(static_cast<std::size_t>(m), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == m) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            img[static_cast<std::size_t>(pos)] = w;
            if (detail::partial_consistent(a, b, img, pos)) {
                used[static_cast<std::size_t>(w)] = true;
                if (rec(pos + 1)) return true;
                used[static_cast<std::size_t>(w)] = false;
            }
        }
        img[static_cast<std::size_t>(pos)] = -1;
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return ElementMap{img};
}

inline bool embeds(const Structure& a, const Structure& b) { return find_embedding(a, b).has_value(); }

// ---------------------------------------------------------------------------
// Canonical form: iterative refinement coloring with backtracking over all
// automorphism-breaking choices.  Exact (the code is the minimum serialized
// relabeling over all leaves of the individualization tree), no hashing.
// ---------------------------------------------------------------------------

namespace detail {

// One refinement round: the new color of v is the rank of
// (old color, sorted list of [index, position, colors of tuple entries])
// over all tuples through v.  Trivially isomorphism-invariant.
inline std::vector<int> refine_colors(const Structure& s, std::vector<int> colors) {
    int n = s.size();
    for (;;) {
        std::vector<std::vector<std::vector<int>>> items(static_cast<std::size_t>(n));
        for (int i = 0; i < s.signature().count(); ++i) {
            for (const Tuple& t : s.table(i)) {
                std::vector<int> base = {i, 0};
                for (int e : t) base.push_back(colors[static_cast<std::size_t>(e)]);
                for (std::size_t p = 0; p < t.size(); ++p) {
                    base[1] = static_cast<int>(p);
                    items[static_cast<std::size_t>(t[p])].push_back(base);
                }
            }
        }
        std::map<std::pair<int, std::vector<std::vector<int>>>, int> order;
        for (int v = 0; v < n; ++v) {
            auto& it = items[static_cast<std::size_t>(v)];
            std::sort(it.begin(), it.end());
            order[{colors[static_cast<std::size_t>(v)], it}] = 0;
        }
        int next = 0;
        for (auto& [key, rank] : order) rank = next++;
        std::vector<int> fresh(static_cast<std::size_t>(n));
        bool changed = false;
        for (int v = 0; v < n; ++v) {
            auto& it = items[static_cast<std::size_t>(v)];
            fresh[static_cast<std::size_t>(v)] = order[{colors[static_cast<std::size_t>(v)], it}];
            if (fresh[static_cast<std::size_t>(v)] != colors[static_cast<std::size_t>(v)]) changed = true;
        }
        colors = std::move(fresh);
        if (!changed) return colors;
    }
}

inline std::string serialize_relabeled(const Structure& s, const std::vector<int>& label) {
    std::ostringstream os;
    os << "sig{" << s.signature().render() << "}n=" << s.size() << ';';
    for (int i = 0; i < s.signature().count(); ++i) {
        std::set<Tuple> relabeled;
        for (const Tuple& t : s.table(i)) {
            Tuple m;
            m.reserve(t.size());
            for (int e : t) m.push_back(label[static_cast<std::size_t>(e)]);
            relabeled.insert(m);
        }
        os << i << ':';
        for (const Tuple& t : relabeled) {
            os << '(';
            for (std::size_t p = 0; p < t.size(); ++p) {
                if (p) os << ',';
                os << t[p];
            }
            os << ')';
        }
        os << ';';
    }
    return os.str();
}

inline void canon_search(const Structure& s, std::vector<int> colors,
                         std::optional<std::string>& best, std::vector<int>* best_label) {
    colors = refine_colors(s, colors);
    int n = s.size();
    // First non-singleton cell by color value.
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[colors[static_cast<std::size_t>(v)]].push_back(v);
    const std::vector<int>* target = nullptr;
    for (const auto& [c, members] : cells)
        if (members.size() > 1) {
            target = &members;
            break;
        }
    if (!target) {
        // Discrete coloring: colors are a permutation of 0..n-1.
        std::string code = serialize_relabeled(s, colors);
        if (!best || code < *best) {
            best = code;
            if (best_label) *best_label = colors;
        }
        return;
    }
    for (int v : *target) {
        std::vector<int> branched(colors);
        // Individualize v: everything with the same color moves one color up;
        // all later colors shift to keep ranks distinct.
        int cv = colors[static_cast<std::size_t>(v)];
        for (int w = 0; w < n; ++w) {
            int cw = colors[static_cast<std::size_t>(w)];
            if (cw > cv || (cw == cv && w != v)) branched[static_cast<std::size_t>(w)] = cw + 1;
        }
        canon_search(s, std::move(branched), best, best_label);
    }
}

}  // namespace detail

// Canonical relabeling label[v] = new position of v; the serialized relabeled
// structure is minimal over all labelings reachable in the search tree.
inline std::vector<int> canonical_labeling(const Structure& s) {
    std::optional<std::string> best;
    std::vector<int> label(static_cast<std::size_t>(s.size()));
    detail::canon_search(s, std::vector<int>(static_cast<std::size_t>(s.size()), 0), best, &label);
    return label;
}

inline IsoType canonical_form(const Structure& s) {
    std::optional<std::string> best;
    detail::canon_search(s, std::vector<int>(static_cast<std::size_t>(s.size()), 0), best, nullptr);
    return IsoType{*best, s.size()};
}

// The canonically relabeled representative (same isomorphism type; equal
// codes give bit-equal representatives).
inline Structure canonical_representative(const Structure& s) {
    std::vector<int> label = canonical_labeling(s);
    std::vector<std::set<Tuple>> tables(s.signature().count());
    for (int i = 0; i < s.signature().count(); ++i)
        for (const Tuple& t : s.table(i)) {
            Tuple m;
            m.reserve(t.size());
            for (int e : t) m.push_back(label[static_cast<std::size_t>(e)]);
            tables[i].insert(m);
        }
    return Structure(s.signature(), s.size(), std::move(tables));
}

// ---------------------------------------------------------------------------
// Ages
// ---------------------------------------------------------------------------

namespace detail {

inline void for_each_subset_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == k) {
            fn(pick);
            return;
        }
        for (int e = from; e < n; ++e) {
            pick.push_back(e);
            rec(e + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

}  // namespace detail

// The un-canonicalized family of restrictions to subsets of size <= max_size.
inline std::vector<Structure> skeleton(const Structure& s, int max_size) {
    std::vector<Structure> out;
    for (int k = 0; k <= std::min(max_size, s.size()); ++k)
        detail::for_each_subset_of_size(s.size(), k,
                                        [&](const std::vector<int>& sub) { out.push_back(restrict_to(s, sub)); });
    return out;
}

// Canonical codes of all restrictions to subsets of size <= max_size.
inline std::set<IsoType> age(const Structure& s, int max_size) {
    if (max_size < 0) throw input_error("age: negative size bound");
    std::set<IsoType> out;
    for (int k = 0; k <= std::min(max_size, s.size()); ++k)
        detail::for_each_subset_of_size(s.size(), k, [&](const std::vector<int>& sub) {
            out.insert(canonical_form(restrict_to(s, sub)));
        });
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration of structures over small signatures (generators and tests).
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::pair<int, Tuple>> all_cells(const Signature& sig, int n) {
    std::vector<std::pair<int, Tuple>> cells;
    std::vector<int> domain(static_cast<std::size_t>(n));
    std::iota(domain.begin(), domain.end(), 0);
    for (int i = 0; i < sig.count(); ++i)
        for_each_tuple(domain, sig.arity(i), [&](const Tuple& t) { cells.emplace_back(i, t); });
    return cells;
}

}  // namespace detail

// Number of relation cells (candidate tuples) for structures of size n.
inline std::size_t cell_count(const Signature& sig, int n) {
    std::size_t total = 0;
    for (int i = 0; i < sig.count(); ++i) {
        std::size_t c = 1;
        for (int p = 0; p < sig.arity(i); ++p) c *= static_cast<std::size_t>(n);
        total += c;
    }
    return total;
}

// All labeled structures of size n.  Guarded: refuses more than 2^24 cells'
// worth of enumeration.
inline std::vector<Structure> enumerate_all_structures(const Signature& sig, int n) {
    std::size_t bits = cell_count(sig, n);
    if (bits > 24) throw resource_error("labeled enumeration too large: 2^" + std::to_string(bits));
    auto cells = detail::all_cells(sig, n);
    std::vector<Structure> out;
    out.reserve(static_cast<std::size_t>(1) << bits);
    for (std::uint64_t mask = 0; mask < (static_cast<std::uint64_t>(1) << bits); ++mask) {
        std::vector<std::set<Tuple>> tables(sig.count());
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (mask & (static_cast<std::uint64_t>(1) << c)) tables[cells[c].first].insert(cells[c].second);
        out.emplace_back(sig, n, std::move(tables));
    }
    return out;
}

// Canonical representatives of all structures of size n, sorted by code.
inline std::vector<Structure> enumerate_canonical(const Signature& sig, int n) {
    std::map<IsoType, Structure> reps;
    for (const Structure& s : enumerate_all_structures(sig, n)) {
        IsoType t = canonical_form(s);
        if (!reps.count(t)) reps.emplace(t, canonical_representative(s));
    }
    std::vector<Structure> out;
    out.reserve(reps.size());
    for (auto& [code, rep] : reps) out.push_back(rep);
    return out;
}

// Deterministic sample of distinct canonical representatives of size n
// (for signatures too large to enumerate exhaustively).
inline std::vector<Structure> sample_canonical(const Signature& sig, int n, int count,
                                               std::uint64_t seed) {
    auto cells = detail::all_cells(sig, n);
    std::mt19937_64 rng(seed);
    std::map<IsoType, Structure> reps;
    int attempts = 0;
    while (static_cast<int>(reps.size()) < count && attempts < count * 50) {
        ++attempts;
        std::vector<std::set<Tuple>> tables(sig.count());
        double density = std::uniform_real_distribution<double>(0.05, 0.7)(rng);
        for (const auto& [idx, t] : cells)
            if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < density) tables[idx].insert(t);
        Structure s(sig, n, std::move(tables));
        IsoType code = canonical_form(s);
        if (!reps.count(code)) reps.emplace(code, canonical_representative(s));
    }
    std::vector<Structure> out;
    for (auto& [code, rep] : reps) out.push_back(rep);
    return out;
}

}  // namespace ages

#endif  // AGES_STRUCTURES_HPP
