#ifndef AGES_IDEALS_HPP
#define AGES_IDEALS_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "ages/structures.hpp"

namespace ages {

// ---------------------------------------------------------------------------
// IdealOracle: an effective presentation of a (candidate) ideal of
// isomorphism types.  `member` decides membership of a concrete value (it
// must be isomorphism-invariant); `generate(k)` enumerates canonical
// representatives of all members of size exactly k, complete up to
// isomorphism for k <= generator_complete_to.  The predicates below trust the
// declared completeness.  `extend_hint`, when set, supplies a domain-specific
// joint-extension strategy (used by classes whose values cannot be completed
// cell-by-cell, e.g. metric spaces).
//
// Every search in this module takes an explicit bound; a negative answer
// always means "not found within the bound", never "does not exist".
// ---------------------------------------------------------------------------
template <typename T>
struct IdealOracle {
    std::string name;
    std::function<bool(const T&)> member;
    std::function<std::vector<T>(int)> generate;
    int generator_complete_to = 0;
    std::function<std::optional<T>(const T&, const T&, int)> extend_hint;
};

// Generic accessors; metric.hpp provides the MetricSpace overloads.
inline int size_of(const Structure& s) { return s.size(); }
inline Structure restrict_value(const Structure& s, const std::vector<int>& subset) {
    return restrict_to(s, subset);
}
inline std::optional<ElementMap> find_embedding_in(const Structure& a, const Structure& b) {
    return find_embedding(a, b);
}
inline IsoType canonical_code(const Structure& s) { return canonical_form(s); }

// ---------------------------------------------------------------------------
// Glue search: enumerates, up to a size cap, every structure obtained from a
// copy of `a` (kept verbatim on elements 0..|a|-1) and a copy of `b`
// overlapping it compatibly, with all completions of the undecided cells.
// Identifications are tried smallest-overlap first (disjoint gluing first
// whenever the cap allows it) and completions false-first, so the first
// witness is a sparse one.  Completions are pruned by membership of each
// fully decided element prefix, which is sound for hereditary member
// predicates -- the contract of an ideal presentation.
//
// For hereditary predicates the search is exhaustive over all member
// structures covered by a copy of `a` and a copy of `b` (any structure
// embedding both restricts to such a cover), which is what both the joint
// extension and the minimal-amalgam enumeration need.
// ---------------------------------------------------------------------------
namespace detail {

class GlueSearch {
  public:
    using Callback = std::function<bool(const Structure&, const ElementMap&, const ElementMap&)>;

    GlueSearch(const Structure& a, const Structure& b, std::function<bool(const Structure&)> member,
               int cap, Callback cb)
        : a_(a), b_(b), sig_(a.signature()), member_(std::move(member)), cap_(cap), cb_(std::move(cb)) {
        if (a.signature() != b.signature()) throw input_error("signature mismatch in glue search");
    }

    bool run() {
        int m = a_.size(), n = b_.size();
        if (cap_ < std::max(m, n)) return false;
        for (int k = std::max(0, m + n - cap_); k <= std::min(m, n); ++k) {
            std::vector<int> chosen;
            if (choose_identified(chosen, 0, k)) return true;
        }
        return false;
    }

  private:
    bool choose_identified(std::vector<int>& chosen, int from, int k) {
        if (static_cast<int>(chosen.size()) == k) {
            std::vector<int> img(chosen.size(), -1);
            std::vector<bool> used(static_cast<std::size_t>(a_.size()), false);
            return choose_images(chosen, img, used, 0);
        }
        for (int e = from; e < b_.size(); ++e) {
            chosen.push_back(e);
            if (choose_identified(chosen, e + 1, k)) return true;
            chosen.pop_back();
        }
        return false;
    }

    bool choose_images(const std::vector<int>& chosen, std::vector<int>& img, std::vector<bool>& used,
                       std::size_t pos) {
        if (pos == chosen.size()) return start_completion(chosen, img);
        for (int w = 0; w < a_.size(); ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            img[pos] = w;
            used[static_cast<std::size_t>(w)] = true;
            if (choose_images(chosen, img, used, pos + 1)) return true;
            used[static_cast<std::size_t>(w)] = false;
        }
        return false;
    }

    bool start_completion(const std::vector<int>& chosen, const std::vector<int>& img) {
        int m = a_.size(), n = b_.size();
        total_ = m + n - static_cast<int>(chosen.size());

        beta_.assign(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < chosen.size(); ++i)
            beta_[static_cast<std::size_t>(chosen[i])] = img[i];
        int next_fresh = m;
        for (int e = 0; e < n; ++e)
            if (beta_[static_cast<std::size_t>(e)] < 0) beta_[static_cast<std::size_t>(e)] = next_fresh++;

        // The identified part of b must induce exactly the same substructure
        // as its image in a.
        for (int i = 0; i < sig_.count(); ++i) {
            bool ok = true;
            std::vector<int> dom(chosen.begin(), chosen.end());
            for_each_tuple(dom, sig_.arity(i), [&](const Tuple& t) {
                if (!ok) return;
                Tuple at;
                at.reserve(t.size());
                for (int e : t) at.push_back(beta_[static_cast<std::size_t>(e)]);
                if (b_.holds(i, t) != a_.holds(i, at)) ok = false;
            });
            if (!ok) return false;
        }

        tables_.assign(static_cast<std::size_t>(sig_.count()), {});
        decided_.assign(static_cast<std::size_t>(sig_.count()), {});
        for (int i = 0; i < sig_.count(); ++i) {
            for (const Tuple& t : a_.table(i)) tables_[static_cast<std::size_t>(i)].insert(t);
            std::vector<int> adom(static_cast<std::size_t>(m));
            std::iota(adom.begin(), adom.end(), 0);
            for_each_tuple(adom, sig_.arity(i),
                           [&](const Tuple& t) { decided_[static_cast<std::size_t>(i)].insert(t); });
            std::vector<int> bdom(static_cast<std::size_t>(n));
            std::iota(bdom.begin(), bdom.end(), 0);
            for_each_tuple(bdom, sig_.arity(i), [&](const Tuple& t) {
                Tuple im;
                im.reserve(t.size());
                for (int e : t) im.push_back(beta_[static_cast<std::size_t>(e)]);
                decided_[static_cast<std::size_t>(i)].insert(im);
                if (b_.holds(i, t)) tables_[static_cast<std::size_t>(i)].insert(im);
            });
        }
        return complete_level(m);
    }

    bool complete_level(int v) {
        if (v == total_) {
            Structure cand(sig_, total_, tables_);
            if (!member_(cand)) return false;
            ElementMap amap;
            amap.images.resize(static_cast<std::size_t>(a_.size()));
            std::iota(amap.images.begin(), amap.images.end(), 0);
            return cb_(cand, amap, ElementMap{beta_});
        }
        return complete_group(v, -1);
    }

    // Decides the undecided cells that contain v and whose other entries lie
    // in {0..e}; after each group the prefix {0..e} u {v} is fully decided
    // and is membership-checked.
    bool complete_group(int v, int e) {
        if (e == v) return complete_level(v + 1);
        std::vector<std::pair<int, Tuple>> cells;
        std::vector<int> dom;
        for (int x = 0; x <= e; ++x) dom.push_back(x);
        dom.push_back(v);
        for (int i = 0; i < sig_.count(); ++i)
            for_each_tuple(dom, sig_.arity(i), [&](const Tuple& t) {
                if (std::find(t.begin(), t.end(), v) == t.end()) return;
                int other_max = -1;
                for (int x : t)
                    if (x != v) other_max = std::max(other_max, x);
                if (other_max != e) return;
                if (decided_[static_cast<std::size_t>(i)].count(t)) return;
                cells.emplace_back(i, t);
            });
        if (cells.size() > 20) throw resource_error("glue completion group too large");

        std::vector<int> prefix;
        for (int x = 0; x <= e; ++x) prefix.push_back(x);
        prefix.push_back(v);

        std::uint64_t lim = static_cast<std::uint64_t>(1) << cells.size();
        for (std::uint64_t mask = 0; mask < lim; ++mask) {
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (mask & (static_cast<std::uint64_t>(1) << c))
                    tables_[static_cast<std::size_t>(cells[c].first)].insert(cells[c].second);
            if (member_(restrict_prefix(prefix)) && complete_group(v, e + 1)) return true;
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (mask & (static_cast<std::uint64_t>(1) << c))
                    tables_[static_cast<std::size_t>(cells[c].first)].erase(cells[c].second);
        }
        return false;
    }

    Structure restrict_prefix(const std::vector<int>& subset) const {
        std::vector<int> renum(static_cast<std::size_t>(total_), -1);
        for (std::size_t i = 0; i < subset.size(); ++i) renum[static_cast<std::size_t>(subset[i])] = static_cast<int>(i);
        std::vector<std::set<Tuple>> pt(sig_.count());
        for (int i = 0; i < sig_.count(); ++i)
            for (const Tuple& t : tables_[static_cast<std::size_t>(i)]) {
                Tuple mapped;
                mapped.reserve(t.size());
                bool inside = true;
                for (int x : t) {
                    if (renum[static_cast<std::size_t>(x)] < 0) {
                        inside = false;
                        break;
                    }
                    mapped.push_back(renum[static_cast<std::size_t>(x)]);
                }
                if (inside) pt[static_cast<std::size_t>(i)].insert(mapped);
            }
        return Structure(sig_, static_cast<int>(subset.size()), std::move(pt));
    }

    const Structure& a_;
    const Structure& b_;
    Signature sig_;
    std::function<bool(const Structure&)> member_;
    int cap_;
    Callback cb_;

    int total_ = 0;
    std::vector<int> beta_;
    std::vector<std::set<Tuple>> tables_;
    std::vector<std::set<Tuple>> decided_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Joint extension: a member structure of size <= bound embedding both s and
// b.  Tries the inputs themselves first, then the glue search, then (for
// oracles whose generator is declared complete far enough) a generator scan.
// ---------------------------------------------------------------------------
template <typename T>
std::optional<T> joint_extension(const T& s, const T& b, const IdealOracle<T>& o, int bound) {
    if (o.extend_hint) {
        if (auto c = o.extend_hint(s, b, bound)) return c;
    }
    if (size_of(s) <= bound && find_embedding_in(b, s) && o.member(s)) return s;
    if (size_of(b) <= bound && find_embedding_in(s, b) && o.member(b)) return b;
    for (int r = std::max(size_of(s), size_of(b)); r <= std::min(bound, o.generator_complete_to); ++r)
        for (const T& c : o.generate(r))
            if (find_embedding_in(s, c) && find_embedding_in(b, c)) return c;
    return std::nullopt;
}

inline std::optional<Structure> joint_extension(const Structure& s, const Structure& b,
                                                const IdealOracle<Structure>& o, int bound) {
    if (o.extend_hint) {
        if (auto c = o.extend_hint(s, b, bound)) return c;
    }
    if (s.size() <= bound && find_embedding(b, s) && o.member(s)) return s;
    if (b.size() <= bound && find_embedding(s, b) && o.member(b)) return b;
    std::optional<Structure> found;
    detail::GlueSearch search(s, b, o.member, bound,
                              [&](const Structure& cand, const ElementMap&, const ElementMap&) {
                                  found = cand;
                                  return true;
                              });
    search.run();
    if (found) return found;
    for (int r = std::max(s.size(), b.size()); r <= std::min(bound, o.generator_complete_to); ++r)
        for (const Structure& c : o.generate(r))
            if (find_embedding(s, c) && find_embedding(b, c)) return c;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Ideal predicates.
// ---------------------------------------------------------------------------

template <typename T>
struct SegmentCheck {
    bool ok = true;
    std::optional<T> violating_member;
    std::vector<int> violating_subset;
};

// Hereditary check: every generated member of size <= max_size has all its
// restrictions members.  Requires generator completeness to max_size.
template <typename T>
SegmentCheck<T> is_initial_segment(const IdealOracle<T>& o, int max_size) {
    SegmentCheck<T> report;
    for (int k = 0; k <= max_size && report.ok; ++k) {
        for (const T& s : o.generate(k)) {
            for (int j = 0; j < k && report.ok; ++j)
                detail::for_each_subset_of_size(k, j, [&](const std::vector<int>& sub) {
                    if (!report.ok) return;
                    if (!o.member(restrict_value(s, sub))) {
                        report.ok = false;
                        report.violating_member = s;
                        report.violating_subset = sub;
                    }
                });
            if (!report.ok) break;
        }
    }
    return report;
}

template <typename T>
struct DirectedCheck {
    bool ok = true;
    std::optional<std::pair<T, T>> failing_pair;
    std::vector<std::tuple<T, T, T>> witnesses;  // (a, b, common extension)
};

// Up-directedness on the truncation: every pair of members of size
// <= max_size has a common member extension of size <= search_bound.
// A failure only means "not found within the bound".
template <typename T>
DirectedCheck<T> is_up_directed(const IdealOracle<T>& o, int max_size, int search_bound) {
    if (search_bound < 2 * max_size)
        throw input_error("is_up_directed: search_bound must be at least 2*max_size");
    DirectedCheck<T> report;
    std::vector<T> members;
    for (int k = 0; k <= max_size; ++k)
        for (const T& s : o.generate(k)) members.push_back(s);
    for (const T& x : members)
        for (const T& y : members) {
            auto c = joint_extension(x, y, o, search_bound);
            if (!c) {
                report.ok = false;
                report.failing_pair = {x, y};
                return report;
            }
            report.witnesses.emplace_back(x, y, *c);
        }
    return report;
}

// Membership of s in the closure-by-finite-reducts of the class presented by
// the oracle: for each listed index set I', the I'-reduct of s must equal, up
// to isomorphism, the I'-reduct of some generated member of size |s|.
inline bool hat_closure_member(const Structure& s, const IdealOracle<Structure>& o,
                               const std::vector<std::vector<int>>& index_subsets) {
    std::vector<Structure> same_size = o.generate(s.size());
    for (const std::vector<int>& indices : index_subsets) {
        IsoType target = canonical_form(reduct(s, indices));
        bool found = false;
        for (const Structure& m : same_size)
            if (canonical_form(reduct(m, indices)) == target) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

// First restriction of s whose type is not a member, if any.
template <typename T>
std::optional<std::vector<int>> age_violation(const T& s, const IdealOracle<T>& o) {
    std::optional<std::vector<int>> bad;
    for (int k = 0; k <= size_of(s) && !bad; ++k)
        detail::for_each_subset_of_size(size_of(s), k, [&](const std::vector<int>& sub) {
            if (bad) return;
            if (!o.member(restrict_value(s, sub))) bad = sub;
        });
    return bad;
}

// A member-aged structure of size <= search_bound embedding both s and b, or
// nothing within the bound.  Preconditions (both ages inside the ideal) are
// checked and raise input errors naming the offending restriction.
template <typename T>
std::optional<T> is_extendable(const T& s, const T& b, const IdealOracle<T>& o, int search_bound) {
    auto describe = [](const std::vector<int>& sub) {
        std::string t = "{";
        for (std::size_t i = 0; i < sub.size(); ++i) {
            if (i) t += ',';
            t += std::to_string(sub[i]);
        }
        return t + "}";
    };
    if (auto bad = age_violation(s, o))
        throw input_error("is_extendable: restriction " + describe(*bad) +
                          " of the first argument is not a member");
    if (auto bad = age_violation(b, o))
        throw input_error("is_extendable: restriction " + describe(*bad) +
                          " of the second argument is not a member");
    return joint_extension(s, b, o, search_bound);
}

// ---------------------------------------------------------------------------
// Amalgamation.
// ---------------------------------------------------------------------------

struct AmalgamInstance {
    Structure base;
    Structure left;
    Structure right;
    ElementMap left_map;   // embedding base -> left
    ElementMap right_map;  // embedding base -> right

    void validate() const {
        if (!is_embedding(left_map, base, left) || !is_embedding(right_map, base, right))
            throw input_error("amalgam instance maps are not embeddings of the base");
    }
};

struct AmalgamResult {
    Structure solution;
    ElementMap g1;  // left -> solution
    ElementMap g2;  // right -> solution
};

// A member B with embeddings g1: left -> B, g2: right -> B satisfying
// g1 o f1 = g2 o f2, of size <= search_bound.  Candidates not aged inside
// the ideal are simply never found, so inputs whose age leaves the ideal
// yield "none" rather than an error (only malformed instances are errors).
inline std::optional<AmalgamResult> amalgamate(const AmalgamInstance& inst,
                                               const IdealOracle<Structure>& o, int search_bound) {
    inst.validate();
    const Signature& sig = inst.base.signature();
    if (sig != inst.left.signature() || sig != inst.right.signature())
        throw input_error("amalgam instance signature mismatch");

    std::optional<AmalgamResult> found;
    int cap = std::min(search_bound, inst.left.size() + inst.right.size() - inst.base.size());
    if (cap < std::max(inst.left.size(), inst.right.size())) return std::nullopt;
    detail::GlueSearch search(
        inst.left, inst.right, o.member, cap,
        [&](const Structure& cand, const ElementMap& g1, const ElementMap& g2) {
            for (int x = 0; x < inst.base.size(); ++x)
                if (g1(inst.left_map(x)) != g2(inst.right_map(x))) return false;
            found = AmalgamResult{cand, g1, g2};
            return true;
        });
    search.run();
    return found;
}

// ---------------------------------------------------------------------------
// Minimal amalgams: all member structures C with size <= |a|+|b| such that
// a <= C, b <= C, and deleting any single element destroys the embedding of
// a or of b.  Any such C is covered by a copy of a and a copy of b (a point
// outside every cover could be deleted), so the glue search enumerates them
// exhaustively.
// ---------------------------------------------------------------------------
inline std::map<IsoType, Structure> minimal_amalgams(const Structure& a, const Structure& b,
                                                     const IdealOracle<Structure>& o) {
    if (a.signature() != b.signature()) throw input_error("signature mismatch in minimal_amalgams");
    if (a.size() + b.size() > 8)
        throw resource_error("minimal_amalgams: combined size exceeds the exhaustive-search limit (8)");

    std::map<IsoType, Structure> out;
    detail::GlueSearch search(a, b, o.member, a.size() + b.size(),
                              [&](const Structure& cand, const ElementMap&, const ElementMap&) {
                                  for (int x = 0; x < cand.size(); ++x) {
                                      std::vector<int> rest;
                                      for (int e = 0; e < cand.size(); ++e)
                                          if (e != x) rest.push_back(e);
                                      Structure r = restrict_to(cand, rest);
                                      if (find_embedding(a, r) && find_embedding(b, r)) return false;
                                  }
                                  IsoType code = canonical_form(cand);
                                  if (!out.count(code)) out.emplace(code, canonical_representative(cand));
                                  return false;  // keep enumerating
                              });
    search.run();
    return out;
}

// ---------------------------------------------------------------------------
// The two-point witness family: k structures on {0,1} over k binary
// relations, the n-th holding R_n at (0,0) and (0,1) and every other
// relation at (0,0) only.  Pairwise non-isomorphic; each is a minimal
// amalgam of the all-loops point and the no-loops point, so the number of
// minimal amalgams grows without bound with the signature.
// ---------------------------------------------------------------------------
inline std::vector<Structure> claim2_family(int k) {
    if (k < 1) throw input_error("claim2_family: k must be positive");
    Signature sig = Signature::binary(k);
    std::vector<Structure> out;
    for (int n = 0; n < k; ++n) {
        std::vector<std::pair<int, Tuple>> tuples;
        for (int i = 0; i < k; ++i) {
            tuples.push_back({i, {0, 0}});
            if (i == n) tuples.push_back({i, {0, 1}});
        }
        out.push_back(make_structure(sig, 2, tuples));
    }
    return out;
}

inline Structure all_loops_point(int k) {
    std::vector<std::pair<int, Tuple>> tuples;
    for (int i = 0; i < k; ++i) tuples.push_back({i, {0, 0}});
    return make_structure(Signature::binary(k), 1, tuples);
}
inline Structure no_loops_point(int k) { return Structure(Signature::binary(k), 1); }

}  // namespace ages

#endif  // AGES_IDEALS_HPP
