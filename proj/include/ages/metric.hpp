#ifndef AGES_METRIC_HPP
#define AGES_METRIC_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "ages/ideals.hpp"
#include "ages/scalars.hpp"
#include "ages/structures.hpp"

namespace ages {

// ---------------------------------------------------------------------------
// MetricSpace<S>: a finite point set with a validated distance matrix.
// S = Rat gives exact arithmetic for the combinatorial predicates; S = double
// is used for the spectral embedding work (validation then honors a relative
// tolerance).
// ---------------------------------------------------------------------------

template <typename S>
std::optional<std::string> metric_violation(const std::vector<std::vector<S>>& rows, double tol = 1e-9) {
    std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) return "distance matrix is not square";
    for (std::size_t x = 0; x < n; ++x) {
        if (!scalar_eq(rows[x][x], S(0), tol)) return "nonzero diagonal entry";
        for (std::size_t y = 0; y < n; ++y) {
            if (!scalar_eq(rows[x][y], rows[y][x], tol)) return "asymmetric distances";
            if (x != y && scalar_le(rows[x][y], S(0), 0.0) && !scalar_eq(rows[x][y], S(0), tol))
                return "negative distance";
            if (x != y && scalar_eq(rows[x][y], S(0), 0.0)) return "zero distance between distinct points";
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (!scalar_le(rows[x][y], rows[x][z] + rows[z][y], tol))
                    return "triangle inequality violated";
    return std::nullopt;
}

template <typename S>
class MetricSpace {
  public:
    MetricSpace() = default;

    explicit MetricSpace(std::vector<std::vector<S>> rows, double tol = 1e-9) {
        if (auto why = metric_violation(rows, tol)) throw input_error("invalid metric: " + *why);
        n_ = static_cast<int>(rows.size());
        d_.reserve(static_cast<std::size_t>(n_) * n_);
        for (const auto& r : rows)
            for (const S& v : r) d_.push_back(v);
    }

    int size() const { return n_; }

    const S& dist(int x, int y) const { return d_.at(static_cast<std::size_t>(x) * n_ + y); }

    MetricSpace restrict_to(const std::vector<int>& subset) const {
        std::vector<int> sorted(subset);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int e : sorted)
            if (e < 0 || e >= n_) throw input_error("restriction point out of range");
        MetricSpace out;
        out.n_ = static_cast<int>(sorted.size());
        out.d_.resize(static_cast<std::size_t>(out.n_) * out.n_);
        for (int i = 0; i < out.n_; ++i)
            for (int j = 0; j < out.n_; ++j)
                out.d_[static_cast<std::size_t>(i) * out.n_ + j] = dist(sorted[i], sorted[j]);
        return out;
    }

    bool operator==(const MetricSpace&) const = default;

    std::string render_compact() const {
        std::ostringstream os;
        os << "points=" << n_;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) os << ' ' << i << '-' << j << ':' << format_scalar(dist(i, j));
        return os.str();
    }

  private:
    int n_ = 0;
    std::vector<S> d_;
};

// Space induced by coordinates on the line.
template <typename S>
MetricSpace<S> line_space(std::vector<S> points) {
    std::sort(points.begin(), points.end());
    std::vector<std::vector<S>> rows(points.size(), std::vector<S>(points.size(), S(0)));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) rows[i][j] = scalar_abs(points[i] - points[j]);
    return MetricSpace<S>(std::move(rows));
}

inline MetricSpace<double> to_double_space(const MetricSpace<Rat>& m) {
    std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size(), 0.0));
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) rows[i][j] = to_double(m.dist(i, j));
    return MetricSpace<double>(std::move(rows));
}

// Space induced by points of R^d (test sampling and the packing bound).
inline MetricSpace<double> euclidean_space(const std::vector<std::vector<double>>& pts) {
    std::vector<std::vector<double>> rows(pts.size(), std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            double s = 0;
            for (std::size_t k = 0; k < pts[i].size(); ++k) {
                double diff = pts[i][k] - pts[j][k];
                s += diff * diff;
            }
            rows[i][j] = std::sqrt(s);
        }
    return MetricSpace<double>(std::move(rows));
}

// ---------------------------------------------------------------------------
// Spectrum, diameter, minimum positive distance.
// ---------------------------------------------------------------------------

template <typename S>
std::vector<S> spectrum(const MetricSpace<S>& m, std::optional<int> base = std::nullopt) {
    std::set<S> vals;
    if (base) {
        if (*base < 0 || *base >= m.size()) throw input_error("spectrum base out of range");
        for (int x = 0; x < m.size(); ++x) vals.insert(m.dist(*base, x));
    } else {
        for (int x = 0; x < m.size(); ++x)
            for (int y = 0; y < m.size(); ++y) vals.insert(m.dist(x, y));
    }
    return std::vector<S>(vals.begin(), vals.end());
}

template <typename S>
S diameter(const MetricSpace<S>& m) {
    S best(0);
    for (int x = 0; x < m.size(); ++x)
        for (int y = 0; y < m.size(); ++y) best = std::max(best, m.dist(x, y));
    return best;
}

template <typename S>
std::optional<S> min_positive_distance(const MetricSpace<S>& m) {
    std::optional<S> best;
    for (int x = 0; x < m.size(); ++x)
        for (int y = x + 1; y < m.size(); ++y)
            if (!best || m.dist(x, y) < *best) best = m.dist(x, y);
    return best;
}

// ---------------------------------------------------------------------------
// omega_t: the largest subset with all pairwise distances >= t, i.e. a
// maximum clique of the >=t threshold graph.  Exact branch-and-bound up to
// the soft limit; beyond it a greedy lower bound and a coloring upper bound
// are reported instead of a possibly wrong exact value.
// ---------------------------------------------------------------------------

struct OmegaResult {
    int lower = 0;
    int upper = 0;
    bool exact = true;
    std::vector<int> witness;

    int value() const {
        if (!exact) throw resource_error("omega is only bracketed, not exact");
        return lower;
    }
};

namespace detail {

inline void max_clique_extend(const std::vector<std::vector<bool>>& adj, std::vector<int>& current,
                              std::vector<int>& candidates, std::vector<int>& best) {
    if (current.size() + candidates.size() <= best.size()) return;
    if (candidates.empty()) {
        if (current.size() > best.size()) best = current;
        return;
    }
    // Greedy coloring bound on the candidate set.
    {
        std::vector<int> color(candidates.size(), -1);
        int colors = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::set<int> used;
            for (std::size_t j = 0; j < i; ++j)
                if (adj[candidates[i]][candidates[j]] && color[j] >= 0) used.insert(color[j]);
            int c = 0;
            while (used.count(c)) ++c;
            color[i] = c;
            colors = std::max(colors, c + 1);
        }
        if (current.size() + static_cast<std::size_t>(colors) <= best.size()) return;
    }
    std::vector<int> cands(candidates);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (current.size() + (cands.size() - i) <= best.size()) return;
        int v = cands[i];
        current.push_back(v);
        std::vector<int> next;
        for (std::size_t j = i + 1; j < cands.size(); ++j)
            if (adj[v][cands[j]]) next.push_back(cands[j]);
        max_clique_extend(adj, current, next, best);
        current.pop_back();
    }
}

}  // namespace detail

template <typename S>
OmegaResult omega_t(const MetricSpace<S>& m, const S& t, int exact_limit = 24) {
    if (!(S(0) < t)) throw input_error("omega_t needs t > 0");
    int n = m.size();
    OmegaResult r;
    if (n == 0) return r;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && !(m.dist(x, y) < t)) adj[x][y] = true;

    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (n <= exact_limit) {
        std::vector<int> current, best;
        detail::max_clique_extend(adj, current, all, best);
        r.lower = r.upper = static_cast<int>(best.size());
        r.exact = true;
        r.witness = best;
        return r;
    }
    // Greedy clique (lower bound), greedy coloring (upper bound).
    std::vector<int> clique;
    for (int v : all) {
        bool ok = true;
        for (int u : clique)
            if (!adj[u][v]) ok = false;
        if (ok) clique.push_back(v);
    }
    std::vector<int> color(n, -1);
    int colors = 0;
    for (int v = 0; v < n; ++v) {
        std::set<int> used;
        for (int u = 0; u < n; ++u)
            if (adj[v][u] && color[u] >= 0) used.insert(color[u]);
        int c = 0;
        while (used.count(c)) ++c;
        color[v] = c;
        colors = std::max(colors, c + 1);
    }
    r.lower = static_cast<int>(clique.size());
    r.upper = colors;
    r.exact = false;
    r.witness = clique;
    return r;
}

// Packing bound (1 + 2*delta/t)^n: disjoint t/2-balls around a t-separated
// set inside a ball of radius delta + t/2.
inline double packing_bound(double delta, double t, int n) {
    return std::pow(1.0 + 2.0 * delta / t, n);
}

// ---------------------------------------------------------------------------
// Membership predicates for the distance-constrained ideals.
// ---------------------------------------------------------------------------

// All pairwise distances >= t (singletons pass: their minimum distance is
// +infinity by convention).
template <typename S>
bool age_t_member(const MetricSpace<S>& m, const S& t) {
    for (int x = 0; x < m.size(); ++x)
        for (int y = x + 1; y < m.size(); ++y)
            if (m.dist(x, y) < t) return false;
    return true;
}

// No pairwise distance lies in the forbidden set (0 is never counted).
template <typename S>
bool age_minus_A_member(const MetricSpace<S>& m, const std::vector<S>& forbidden) {
    for (int x = 0; x < m.size(); ++x)
        for (int y = x + 1; y < m.size(); ++y)
            for (const S& f : forbidden)
                if (m.dist(x, y) == f) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Threshold encoding rel(M): one binary relation per threshold r, holding at
// (x,y) iff d(x,y) <= r.  A finite threshold set containing the spectrum is
// enough to decode.
// ---------------------------------------------------------------------------

template <typename S>
struct ThresholdEncoding {
    std::vector<S> thresholds;  // strictly ascending, positive
    Structure structure;        // over the binary signature d0..d{k-1}
};

inline Signature threshold_signature(int count) { return Signature::binary(count, "d"); }

template <typename S>
ThresholdEncoding<S> encode_rel(const MetricSpace<S>& m, std::vector<S> thresholds) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(S(0) < thresholds[i])) throw input_error("thresholds must be positive");
        if (i && !(thresholds[i - 1] < thresholds[i]))
            throw input_error("thresholds must be strictly ascending");
    }
    Signature sig = threshold_signature(static_cast<int>(thresholds.size()));
    std::vector<std::set<Tuple>> tables(sig.count());
    for (std::size_t r = 0; r < thresholds.size(); ++r)
        for (int x = 0; x < m.size(); ++x)
            for (int y = 0; y < m.size(); ++y)
                if (scalar_le(m.dist(x, y), thresholds[r], 0.0)) tables[r].insert({x, y});
    return ThresholdEncoding<S>{std::move(thresholds), Structure(sig, m.size(), std::move(tables))};
}

// Auto mode: thresholds are the realized positive distances, which makes the
// encoding decodable by construction.
template <typename S>
ThresholdEncoding<S> encode_rel_auto(const MetricSpace<S>& m) {
    std::vector<S> th;
    for (const S& v : spectrum(m))
        if (S(0) < v) th.push_back(v);
    return encode_rel(m, std::move(th));
}

template <typename S>
MetricSpace<S> decode_rel(const ThresholdEncoding<S>& e) {
    const Structure& s = e.structure;
    int n = s.size();
    int k = static_cast<int>(e.thresholds.size());
    if (s.signature().count() != k) throw data_error("decode: threshold/relation count mismatch");
    // Monotonicity in r.
    for (int r = 0; r + 1 < k; ++r)
        for (const Tuple& t : s.table(r))
            if (!s.holds(r + 1, t)) throw data_error("decode: thresholds are not monotone");
    std::vector<std::vector<S>> rows(n, std::vector<S>(n, S(0)));
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            std::optional<S> least;
            for (int r = 0; r < k && !least; ++r)
                if (s.holds(r, {x, y})) least = e.thresholds[r];
            if (!least)
                throw data_error("decode: pair (" + std::to_string(x) + "," + std::to_string(y) +
                                 ") holds at no threshold");
            rows[x][y] = rows[y][x] = *least;
        }
    if (auto why = metric_violation(rows)) throw data_error("decode: " + *why);
    return MetricSpace<S>(std::move(rows));
}

// ---------------------------------------------------------------------------
// Line embedding.  Anchored at x_0 = 0, x_1 = d(0,1); each further sign is
// forced, so the scan is exact (tolerance only matters in double mode).
// ---------------------------------------------------------------------------

template <typename S>
std::optional<std::vector<S>> embed_line(const MetricSpace<S>& m, double tol = 1e-9) {
    int n = m.size();
    std::vector<S> x;
    if (n == 0) return x;
    x.push_back(S(0));
    if (n == 1) return x;
    x.push_back(m.dist(0, 1));
    for (int i = 2; i < n; ++i) {
        bool placed = false;
        for (const S& cand : {m.dist(0, i), S(0) - m.dist(0, i)}) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (!scalar_eq(scalar_abs(cand - x[static_cast<std::size_t>(j)]), m.dist(j, i), tol)) ok = false;
            if (ok) {
                x.push_back(cand);
                placed = true;
                break;
            }
        }
        if (!placed) return std::nullopt;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Euclidean embedding via the anchored Gram matrix
//   G(x,y) = (d(0,x)^2 + d(0,y)^2 - d(x,y)^2) / 2 :
// the space embeds into R^dim iff G is positive semidefinite of rank <= dim.
// Coordinates come from the spectral factorization.
// ---------------------------------------------------------------------------

struct EuclidEmbedding {
    std::vector<std::vector<double>> coords;  // n rows, dim columns
    std::vector<double> gram_eigenvalues;     // descending
    int gram_rank = 0;
};

template <typename S>
std::optional<EuclidEmbedding> embed_euclid(const MetricSpace<S>& m, int dim, double tol = 1e-9) {
    if (dim < 1) throw input_error("embed_euclid needs dim >= 1");
    int n = m.size();
    EuclidEmbedding out;
    if (n == 0) return out;
    out.coords.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    if (n == 1) return out;

    Eigen::MatrixXd g(n - 1, n - 1);
    auto d = [&](int x, int y) { return to_double(m.dist(x, y)); };
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            g(i - 1, j - 1) = (d(0, i) * d(0, i) + d(0, j) * d(0, j) - d(i, j) * d(i, j)) / 2.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success) return std::nullopt;
    Eigen::VectorXd ev = es.eigenvalues();  // ascending
    double trace = g.trace();
    double lmax = ev(n - 2);
    for (int i = 0; i < n - 1; ++i) {
        out.gram_eigenvalues.push_back(ev(n - 2 - i));
        if (ev(i) < -tol * std::max(trace, 1e-300)) return std::nullopt;  // not PSD
    }
    int rank = 0;
    for (int i = 0; i < n - 1; ++i)
        if (ev(i) > tol * std::max(lmax, 0.0)) ++rank;
    out.gram_rank = rank;
    if (rank > dim) return std::nullopt;

    for (int k = 0; k < std::min(dim, n - 1); ++k) {
        int src = n - 2 - k;  // descending order
        double lambda = std::max(ev(src), 0.0);
        double scale = std::sqrt(lambda);
        for (int i = 1; i < n; ++i)
            out.coords[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                es.eigenvectors()(i - 1, src) * scale;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The (dim+3)-subspace criterion: all subsets of size <= dim+3 embed into
// R^dim iff the whole space does.  The report carries both verdicts; any
// disagreement falsifies the criterion on this input.
// ---------------------------------------------------------------------------

struct NPlus3Report {
    bool subsets_embed = true;
    std::optional<std::vector<int>> failing_subset;
    bool whole_embeds = true;
    bool consistent = true;
};

template <typename S>
NPlus3Report check_n_plus_3(const MetricSpace<S>& m, int dim, double tol = 1e-9) {
    NPlus3Report report;
    report.whole_embeds = embed_euclid(m, dim, tol).has_value();
    int cap = std::min(m.size(), dim + 3);
    for (int k = 3; k <= cap && report.subsets_embed; ++k)
        detail::for_each_subset_of_size(m.size(), k, [&](const std::vector<int>& sub) {
            if (!report.subsets_embed) return;
            if (!embed_euclid(m.restrict_to(sub), dim, tol)) {
                report.subsets_embed = false;
                report.failing_subset = sub;
            }
        });
    report.consistent = (report.subsets_embed == report.whole_embeds);
    return report;
}

// ---------------------------------------------------------------------------
// Omit-distance growth on the line: greedily place isometric copies of the
// targets inside [0, window] so that no distance of the accumulated set falls
// in the forbidden list.  Placements scan a seed-derived translation grid;
// a copy that cannot be placed marks the growth incomplete.
// ---------------------------------------------------------------------------

template <typename S>
struct OmitGrowth {
    std::vector<S> points;  // accumulated coordinates, placement order
    struct Stage {
        int target = 0;
        bool placed = false;
        S offset{};
        std::vector<S> coords;
    };
    std::vector<Stage> stages;
    bool complete = true;
};

template <typename S>
OmitGrowth<S> omit_distance_grow(const std::vector<S>& forbidden,
                                 const std::vector<MetricSpace<S>>& targets, const S& window,
                                 std::uint64_t seed, double tol = 1e-9) {
    OmitGrowth<S> growth;
    // Seed-derived grid step; in double mode the step is stretched by an
    // irrational factor so grid differences cannot pile up on rational
    // forbidden values.
    S step;
    if constexpr (std::is_same_v<S, Rat>) {
        step = Rat(1, 2 + static_cast<long long>(seed % 5));
    } else {
        step = std::sqrt(2.0) / (2.0 + static_cast<double>(seed % 5));
    }

    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const MetricSpace<S>& target = targets[ti];
        if (!age_minus_A_member(target, forbidden))
            throw input_error("omit grow: target " + std::to_string(ti) + " realizes a forbidden distance");
        auto line = embed_line(target, tol);
        if (!line) throw input_error("omit grow: target " + std::to_string(ti) + " is not line-embeddable");
        // Normalize the copy to start at 0.
        S low = line->empty() ? S(0) : *std::min_element(line->begin(), line->end());
        std::vector<S> shape;
        for (const S& c : *line) shape.push_back(c - low);
        S extent = shape.empty() ? S(0) : *std::max_element(shape.begin(), shape.end());

        typename OmitGrowth<S>::Stage stage;
        stage.target = static_cast<int>(ti);
        for (S offset(0); scalar_le(offset + extent, window, 0.0); offset = offset + step) {
            bool ok = true;
            for (const S& c : shape) {
                S p = offset + c;
                for (const S& x : growth.points) {
                    if (p == x) ok = false;  // coincident points collapse the copy
                    S diff = scalar_abs(p - x);
                    for (const S& f : forbidden)
                        if (diff == f) ok = false;
                    if (!ok) break;
                }
                if (!ok) break;
            }
            if (ok) {
                stage.placed = true;
                stage.offset = offset;
                for (const S& c : shape) {
                    stage.coords.push_back(offset + c);
                    growth.points.push_back(offset + c);
                }
                break;
            }
        }
        if (!stage.placed) growth.complete = false;
        if (stage.placed && !growth.points.empty()) {
            // Stage invariant: the accumulated set still omits every
            // forbidden distance.
            if (!age_minus_A_member(line_space(growth.points), forbidden))
                throw data_error("omit grow: accumulated set realizes a forbidden distance");
        }
        growth.stages.push_back(std::move(stage));
    }
    return growth;
}

// ---------------------------------------------------------------------------
// Partial isometries of a finitely generated additive subgroup of the line
// window: any partial isometry extends to a translation g+(y) = x' + y - x
// or a reflection g-(y) = x' - y + x.
// ---------------------------------------------------------------------------

struct LineIsometry {
    enum class Kind { translation, reflection };
    Kind kind = Kind::translation;
    Rat anchor_source{0};
    Rat anchor_target{0};

    Rat apply(const Rat& y) const {
        return kind == Kind::translation ? anchor_target + y - anchor_source
                                         : anchor_target - y + anchor_source;
    }
    std::string render() const {
        std::string x = format_scalar(anchor_source), xp = format_scalar(anchor_target);
        return kind == Kind::translation ? "g+(y) = " + xp + " + y - " + x
                                         : "g-(y) = " + xp + " - y + " + x;
    }
};

inline Rat rat_gcd(const Rat& a, const Rat& b) {
    long long num = std::gcd(std::llabs(a.numerator() * b.denominator()),
                             std::llabs(b.numerator() * a.denominator()));
    return Rat(num, a.denominator() * b.denominator());
}

inline std::optional<LineIsometry> group_homogeneity_extend(
    const std::vector<Rat>& generators, const Rat& window,
    const std::vector<std::pair<Rat, Rat>>& partial) {
    Rat g(0);
    for (const Rat& v : generators)
        if (v != Rat(0)) g = (g == Rat(0)) ? scalar_abs(v) : rat_gcd(g, scalar_abs(v));
    auto in_group = [&](const Rat& y) {
        if (scalar_abs(y) > window) return false;
        if (g == Rat(0)) return y == Rat(0);
        Rat q = y / g;
        return q.denominator() == 1;
    };
    for (const auto& [s, t] : partial) {
        if (!in_group(s) || !in_group(t))
            throw input_error("group extend: pair outside the generated group window");
    }
    for (std::size_t i = 0; i < partial.size(); ++i)
        for (std::size_t j = i + 1; j < partial.size(); ++j)
            if (scalar_abs(partial[i].first - partial[j].first) !=
                scalar_abs(partial[i].second - partial[j].second))
                throw input_error("group extend: partial map is not an isometry");

    if (partial.empty()) return LineIsometry{};
    LineIsometry plus{LineIsometry::Kind::translation, partial[0].first, partial[0].second};
    LineIsometry minus{LineIsometry::Kind::reflection, partial[0].first, partial[0].second};
    for (const LineIsometry& cand : {plus, minus}) {
        bool ok = true;
        for (const auto& [s, t] : partial)
            if (cand.apply(s) != t) ok = false;
        if (ok) return cand;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Adapters: MetricSpace<Rat> as a value type for the ideal machinery.
// ---------------------------------------------------------------------------

inline int size_of(const MetricSpace<Rat>& m) { return m.size(); }
inline MetricSpace<Rat> restrict_value(const MetricSpace<Rat>& m, const std::vector<int>& subset) {
    return m.restrict_to(subset);
}

// Lexicographically least distance-preserving injection.
inline std::optional<ElementMap> find_embedding_in(const MetricSpace<Rat>& a, const MetricSpace<Rat>& b) {
    int m = a.size(), n = b.size();
    if (m > n) return std::nullopt;
    std::vector<int> img(static_cast<std::size_t>(m), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == m) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            bool ok = true;
            for (int j = 0; j < pos && ok; ++j)
                if (a.dist(j, pos) != b.dist(img[static_cast<std::size_t>(j)], w)) ok = false;
            if (!ok) continue;
            img[static_cast<std::size_t>(pos)] = w;
            used[static_cast<std::size_t>(w)] = true;
            if (rec(pos + 1)) return true;
            used[static_cast<std::size_t>(w)] = false;
        }
        img[static_cast<std::size_t>(pos)] = -1;
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return ElementMap{img};
}

inline bool isometric(const MetricSpace<Rat>& a, const MetricSpace<Rat>& b) {
    return a.size() == b.size() && find_embedding_in(a, b).has_value();
}

// Canonical code: minimum serialized distance matrix over all relabelings.
inline IsoType canonical_code(const MetricSpace<Rat>& m) {
    int n = m.size();
    if (n > 8) throw resource_error("metric canonical code limited to 8 points");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<std::string> best;
    do {
        std::ostringstream os;
        os << "metric n=" << n << ';';
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                os << format_scalar(m.dist(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]))
                   << ',';
        std::string s = os.str();
        if (!best || s < *best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!best) best = "metric n=0;";
    return IsoType{*best, n};
}

// ---------------------------------------------------------------------------
// Metric ideal presentations (registered as metric-line-t:<t> and
// metric-omit:<list>): finite subspaces of the line with all distances >= t,
// and finite line subspaces omitting a forbidden distance list.  Their
// generators cannot be complete beyond one point (the line has uncountably
// many two-point types), so searches rely on the placement hints.
// ---------------------------------------------------------------------------

inline IdealOracle<MetricSpace<Rat>> oracle_metric_line_t(const Rat& t) {
    if (!(Rat(0) < t)) throw input_error("metric-line-t needs t > 0");
    IdealOracle<MetricSpace<Rat>> o;
    o.name = "metric-line-t:" + format_scalar(t);
    o.member = [t](const MetricSpace<Rat>& m) {
        return age_t_member(m, t) && embed_line(m).has_value();
    };
    o.generate = [t](int k) {
        std::vector<Rat> pts;
        for (int i = 0; i < k; ++i) pts.push_back(t * i);
        return std::vector<MetricSpace<Rat>>{line_space(pts)};
    };
    o.generator_complete_to = 1;
    o.extend_hint = [t](const MetricSpace<Rat>& a, const MetricSpace<Rat>& b,
                        int bound) -> std::optional<MetricSpace<Rat>> {
        if (a.size() + b.size() > bound) return std::nullopt;
        auto la = embed_line(a), lb = embed_line(b);
        if (!la || !lb) return std::nullopt;
        std::vector<Rat> pts(*la);
        Rat hi = pts.empty() ? Rat(0) : *std::max_element(pts.begin(), pts.end());
        Rat lo = lb->empty() ? Rat(0) : *std::min_element(lb->begin(), lb->end());
        for (const Rat& c : *lb) pts.push_back(hi + t + (c - lo));  // gap >= t
        if (pts.empty()) return MetricSpace<Rat>();
        return line_space(pts);
    };
    return o;
}

inline IdealOracle<MetricSpace<Rat>> oracle_metric_omit(const std::vector<Rat>& forbidden) {
    IdealOracle<MetricSpace<Rat>> o;
    std::string name = "metric-omit:";
    for (std::size_t i = 0; i < forbidden.size(); ++i)
        name += (i ? "," : "") + format_scalar(forbidden[i]);
    o.name = name;

    // A grid step whose multiples avoid the forbidden list.
    Rat step(0);
    for (long long q = 3; q <= 40 && step == Rat(0); ++q) {
        Rat cand(3, q);
        bool ok = true;
        for (const Rat& f : forbidden)
            if ((f / cand).denominator() == 1) ok = false;
        if (ok) step = cand;
    }
    if (step == Rat(0)) throw input_error("metric-omit: no grid step avoids the forbidden list");

    o.member = [forbidden](const MetricSpace<Rat>& m) {
        return age_minus_A_member(m, forbidden) && embed_line(m).has_value();
    };
    o.generate = [step](int k) {
        std::vector<Rat> pts;
        for (int i = 0; i < k; ++i) pts.push_back(step * i);
        return std::vector<MetricSpace<Rat>>{line_space(pts)};
    };
    o.generator_complete_to = 1;
    o.extend_hint = [forbidden, step](const MetricSpace<Rat>& a, const MetricSpace<Rat>& b,
                                      int bound) -> std::optional<MetricSpace<Rat>> {
        if (a.size() + b.size() > bound) return std::nullopt;
        auto la = embed_line(a), lb = embed_line(b);
        if (!la || !lb) return std::nullopt;
        Rat hi = la->empty() ? Rat(0) : *std::max_element(la->begin(), la->end());
        Rat lo = lb->empty() ? Rat(0) : *std::min_element(lb->begin(), lb->end());
        for (int tries = 0; tries < 4000; ++tries) {
            Rat offset = hi + step * (tries + 1);
            std::vector<Rat> pts(*la);
            bool ok = true;
            for (const Rat& c : *lb) {
                Rat p = offset + (c - lo);
                for (const Rat& x : *la) {
                    if (p == x) ok = false;
                    for (const Rat& f : forbidden)
                        if (scalar_abs(p - x) == f) ok = false;
                }
                pts.push_back(p);
            }
            if (ok) return line_space(pts);
        }
        return std::nullopt;
    };
    return o;
}

}  // namespace ages

#endif  // AGES_METRIC_HPP
