#include "ages/ideals.hpp"

#include <gtest/gtest.h>

#include "ages/oracles.hpp"
#include "support/brute.hpp"

using namespace ages;

namespace {

Signature graph_sig() { return Signature::binary(1, "E"); }

Structure graph(int n, std::initializer_list<std::pair<int, int>> edges) {
    std::vector<std::pair<int, Tuple>> tuples;
    for (auto [x, y] : edges) {
        tuples.push_back({0, {x, y}});
        tuples.push_back({0, {y, x}});
    }
    return make_structure(graph_sig(), n, tuples);
}

Structure chain(int n, const Signature& sig) {
    std::vector<std::pair<int, Tuple>> tuples;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) tuples.push_back({0, {x, y}});
    return make_structure(sig, n, tuples);
}

// Edgeless or complete graphs: hereditary but not up-directed.
IdealOracle<Structure> oracle_edgeless_or_complete() {
    IdealOracle<Structure> o;
    o.name = "edgeless-or-complete";
    o.member = [](const Structure& s) {
        if (!is_simple_graph(s)) return false;
        std::size_t edges = s.table(0).size() / 2;
        std::size_t all = static_cast<std::size_t>(s.size()) * (s.size() - 1) / 2;
        return edges == 0 || edges == all;
    };
    o.generate = [](int k) {
        std::vector<Structure> out{Structure(graph_sig(), k)};
        if (k >= 2) {
            std::vector<std::pair<int, Tuple>> tuples;
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y)
                    if (x != y) tuples.push_back({0, {x, y}});
            out.push_back(make_structure(graph_sig(), k, tuples));
        }
        return out;
    };
    o.generator_complete_to = 8;
    return o;
}

}  // namespace

TEST(InitialSegment, TriangleFreeHereditary) {
    EXPECT_TRUE(is_initial_segment(oracle_triangle_free(), 4).ok);
}

TEST(InitialSegment, ExactSizeClassFails) {
    IdealOracle<Structure> o;
    o.name = "exactly-3";
    o.member = [](const Structure& s) { return s.size() == 3; };
    o.generate = [](int k) {
        return k == 3 ? std::vector<Structure>{Structure(graph_sig(), 3)} : std::vector<Structure>{};
    };
    o.generator_complete_to = 4;
    auto r = is_initial_segment(o, 4);
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.violating_member);
    EXPECT_NE(r.violating_subset.size(), 3u);
}

TEST(InitialSegment, LinearOrders) {
    EXPECT_TRUE(is_initial_segment(oracle_linear_orders(), 4).ok);
}

TEST(UpDirected, LinearOrders) {
    auto r = is_up_directed(oracle_linear_orders(), 3, 6);
    EXPECT_TRUE(r.ok);
    // Every witness is a member extending both sides.
    auto o = oracle_linear_orders();
    for (const auto& [x, y, c] : r.witnesses) {
        EXPECT_TRUE(o.member(c));
        EXPECT_TRUE(find_embedding(x, c));
        EXPECT_TRUE(find_embedding(y, c));
    }
}

TEST(UpDirected, TriangleFreeViaDisjointUnion) {
    EXPECT_TRUE(is_up_directed(oracle_triangle_free(), 3, 6).ok);
}

TEST(UpDirected, EdgelessOrCompleteFails) {
    auto r = is_up_directed(oracle_edgeless_or_complete(), 2, 4);
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.failing_pair);
}

TEST(UpDirected, BoundPreconditionEnforced) {
    EXPECT_THROW(is_up_directed(oracle_linear_orders(), 3, 5), input_error);
}

TEST(HatClosure, MemberIsInClosure) {
    auto o = oracle_linear_orders();
    Structure s = chain(3, Signature::binary(1, "lt"));
    EXPECT_TRUE(hat_closure_member(s, o, {{0}}));
}

TEST(HatClosure, EmptyStructure) {
    auto o = oracle_linear_orders();
    EXPECT_TRUE(hat_closure_member(Structure(Signature::binary(1, "lt"), 0), o, {{0}}));
}

TEST(HatClosure, FlaggedOrders) {
    // Members: linear orders whose second relation holds everywhere.
    Signature sig({{"lt", 2}, {"flag", 2}});
    IdealOracle<Structure> o;
    o.name = "flagged-orders";
    o.member = [](const Structure& s) {
        for (int x = 0; x < s.size(); ++x)
            for (int y = 0; y < s.size(); ++y)
                if (!s.holds(1, {x, y})) return false;
        return is_linear_order(reduct(s, {0}));
    };
    o.generate = [sig](int k) {
        std::vector<std::pair<int, Tuple>> tuples;
        for (int x = 0; x < k; ++x)
            for (int y = 0; y < k; ++y) {
                if (x < y) tuples.push_back({0, {x, y}});
                tuples.push_back({1, {x, y}});
            }
        return std::vector<Structure>{canonical_representative(make_structure(sig, k, tuples))};
    };
    o.generator_complete_to = 6;

    // Chain with the flag relation left empty: the lt-reduct matches a member
    // reduct, the flag-reduct does not.
    Structure bare_chain = chain(2, Signature::binary(1, "lt"));
    std::vector<std::set<Tuple>> tables = {bare_chain.table(0), {}};
    Structure s(sig, 2, std::move(tables));
    EXPECT_TRUE(hat_closure_member(s, o, {{0}}));
    EXPECT_FALSE(hat_closure_member(s, o, {{1}}));
    EXPECT_FALSE(hat_closure_member(s, o, {{0}, {1}}));
}

TEST(Extendable, EmptyPlusMemberIsMember) {
    auto o = oracle_linear_orders();
    Structure empty(Signature::binary(1, "lt"), 0);
    Structure three = o.generate(3)[0];
    auto c = is_extendable(empty, three, o, 5);
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, three);
}

TEST(Extendable, ChainIntoLongerChain) {
    auto o = oracle_linear_orders();
    Structure two = o.generate(2)[0];
    Structure three = o.generate(3)[0];
    auto c = is_extendable(two, three, o, 6);
    ASSERT_TRUE(c);
    EXPECT_EQ(canonical_form(*c), canonical_form(three));
}

TEST(Extendable, PreconditionNamesOffendingRestriction) {
    auto o = oracle_triangle_free();
    Structure triangle = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    Structure point(graph_sig(), 1);
    EXPECT_THROW(is_extendable(triangle, point, o, 5), input_error);
}

TEST(Extendable, GlueRespectsBound) {
    auto o = oracle_linear_orders();
    Structure c3 = o.generate(3)[0];
    Structure c4 = o.generate(4)[0];
    // With the bound below |a|+|b| the search must overlap the copies.
    auto c = joint_extension(c3, c4, o, 5);
    ASSERT_TRUE(c);
    EXPECT_LE(c->size(), 5);
    EXPECT_TRUE(find_embedding(c3, *c));
    EXPECT_TRUE(find_embedding(c4, *c));
}

TEST(Amalgamate, EmptyBaseReducesToJointExtension) {
    auto o = oracle_triangle_free();
    AmalgamInstance inst{Structure(graph_sig(), 0), graph(1, {}), graph(2, {{0, 1}}),
                         ElementMap{{}}, ElementMap{{}}};
    auto r = amalgamate(inst, o, 4);
    ASSERT_TRUE(r);
    EXPECT_TRUE(o.member(r->solution));
    EXPECT_TRUE(is_embedding(r->g1, inst.left, r->solution));
    EXPECT_TRUE(is_embedding(r->g2, inst.right, r->solution));
}

TEST(Amalgamate, LinearOrdersOverSharedPoint) {
    auto o = oracle_linear_orders();
    Signature sig = Signature::binary(1, "lt");
    Structure base(sig, 1);
    // Left places the shared point first, right places it last.
    Structure left = make_structure(sig, 2, {{0, {0, 1}}});
    Structure right = make_structure(sig, 2, {{0, {0, 1}}});
    AmalgamInstance inst{base, left, right, ElementMap{{0}}, ElementMap{{1}}};
    auto r = amalgamate(inst, o, 3);
    ASSERT_TRUE(r);
    EXPECT_LE(r->solution.size(), 3);
    EXPECT_TRUE(o.member(r->solution));
    // Commutation g1 o f1 = g2 o f2.
    EXPECT_EQ(compose(r->g1, inst.left_map), compose(r->g2, inst.right_map));
}

TEST(Amalgamate, EdgelessOracleForbidsEdges) {
    IdealOracle<Structure> o;
    o.name = "edgeless";
    o.member = [](const Structure& s) { return is_simple_graph(s) && s.table(0).empty(); };
    o.generate = [](int k) { return std::vector<Structure>{Structure(graph_sig(), k)}; };
    o.generator_complete_to = 8;
    Structure base(graph_sig(), 1);
    Structure left = graph(2, {{0, 1}});
    AmalgamInstance inst{base, left, left, ElementMap{{0}}, ElementMap{{0}}};
    EXPECT_FALSE(amalgamate(inst, o, 4));
}

TEST(Amalgamate, BadInstanceRejected) {
    auto o = oracle_triangle_free();
    Structure base = graph(1, {});
    Structure left = graph(2, {{0, 1}});
    // Map sends the base point onto both endpoints of an edge: not an embedding.
    AmalgamInstance inst{graph(2, {}), left, left, ElementMap{{0, 0}}, ElementMap{{0, 1}}};
    EXPECT_THROW(amalgamate(inst, o, 4), input_error);
}

TEST(MinimalAmalgams, PlainPointIsTheOnlyOne) {
    Signature sig = Signature::binary(1);
    auto o = oracle_all(sig);
    Structure point(sig, 1);
    auto result = minimal_amalgams(point, point, o);
    ASSERT_EQ(result.size(), 1u);
    EXPECT_EQ(result.begin()->first, canonical_form(point));
}

TEST(MinimalAmalgams, TargetNeedingEveryPointQualifies) {
    Signature sig = Signature::binary(1);
    auto o = oracle_all(sig);
    Structure point(sig, 1);
    Structure edge = make_structure(sig, 2, {{0, {0, 1}}});
    auto result = minimal_amalgams(point, edge, o);
    // The edge needs both its points; the plain point embeds into it.
    EXPECT_TRUE(result.count(canonical_form(edge)));
    for (const auto& [code, c] : result) {
        EXPECT_TRUE(find_embedding(point, c));
        EXPECT_TRUE(find_embedding(edge, c));
    }
}

TEST(MinimalAmalgams, ConditionsRecheckIndependently) {
    Signature sig = Signature::binary(1);
    auto o = oracle_all(sig);
    Structure a = make_structure(sig, 1, {{0, {0, 0}}});
    Structure b = make_structure(sig, 2, {{0, {0, 1}}});
    auto result = minimal_amalgams(a, b, o);
    EXPECT_FALSE(result.empty());
    for (const auto& [code, c] : result) {
        ASSERT_TRUE(oracles::brute_find_embedding(a, c));
        ASSERT_TRUE(oracles::brute_find_embedding(b, c));
        for (int x = 0; x < c.size(); ++x) {
            std::vector<int> rest;
            for (int e = 0; e < c.size(); ++e)
                if (e != x) rest.push_back(e);
            Structure r = restrict_to(c, rest);
            bool both = oracles::brute_find_embedding(a, r).has_value() &&
                        oracles::brute_find_embedding(b, r).has_value();
            EXPECT_FALSE(both);
        }
    }
}

TEST(Claim2, FamilyOfOne) {
    auto fam = claim2_family(1);
    ASSERT_EQ(fam.size(), 1u);
    std::set<Tuple> expected = {{0, 0}, {0, 1}};
    EXPECT_EQ(fam[0].table(0), expected);
}

TEST(Claim2, PairwiseNonIsomorphic) {
    for (int k = 2; k <= 4; ++k) {
        auto fam = claim2_family(k);
        std::set<IsoType> codes;
        for (const Structure& s : fam) codes.insert(canonical_form(s));
        EXPECT_EQ(codes.size(), fam.size());
    }
}

TEST(Claim2, ContainsBothEndpointTypes) {
    for (int k = 1; k <= 3; ++k) {
        Structure a = all_loops_point(k);
        Structure b = no_loops_point(k);
        for (const Structure& c : claim2_family(k)) {
            EXPECT_TRUE(find_embedding(a, c));
            EXPECT_TRUE(find_embedding(b, c));
        }
    }
}

TEST(Claim2, MinimalAmalgamCountGrowsWithSignature) {
    std::size_t prev = 0;
    for (int k = 1; k <= 3; ++k) {
        auto o = oracle_all(Signature::binary(k));
        auto result = minimal_amalgams(all_loops_point(k), no_loops_point(k), o);
        EXPECT_GE(result.size(), static_cast<std::size_t>(k));
        EXPECT_GT(result.size(), prev);
        prev = result.size();
        // The named family members all appear.
        for (const Structure& c : claim2_family(k)) EXPECT_TRUE(result.count(canonical_form(c)));
    }
}

TEST(Oracle, MemberIsIsomorphismInvariantSpotCheck) {
    auto o = oracle_triangle_free();
    std::mt19937_64 rng(5);
    for (const Structure& g : detail::enumerate_graphs(graph_sig(), 4, [](const Structure&) { return true; })) {
        std::vector<int> perm(4);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::set<Tuple>> tables(1);
        for (const Tuple& t : g.table(0)) tables[0].insert({perm[t[0]], perm[t[1]]});
        Structure h(graph_sig(), 4, std::move(tables));
        EXPECT_EQ(o.member(g), o.member(h));
    }
}
