#include "ages/structures.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/brute.hpp"

using namespace ages;

namespace {

Signature one_binary() { return Signature::binary(1); }
Signature two_binary() { return Signature::binary(2); }

Structure directed_cycle3() {
    return make_structure(one_binary(), 3, {{0, {0, 1}}, {0, {1, 2}}, {0, {2, 0}}});
}

Structure chain(int n) {
    std::vector<std::pair<int, Tuple>> tuples;
    for (int i = 0; i + 1 < n; ++i) tuples.push_back({0, {i, i + 1}});
    return make_structure(one_binary(), n, tuples);
}

Structure permuted(const Structure& s, const std::vector<int>& perm) {
    std::vector<std::set<Tuple>> tables(s.signature().count());
    for (int i = 0; i < s.signature().count(); ++i)
        for (const Tuple& t : s.table(i)) {
            Tuple m;
            for (int e : t) m.push_back(perm[e]);
            tables[i].insert(m);
        }
    return Structure(s.signature(), s.size(), std::move(tables));
}

}  // namespace

TEST(Signature, InvariantsEnforced) {
    EXPECT_THROW(Signature({{"R", 0}}), input_error);
    EXPECT_THROW(Signature({{"R", 2}, {"R", 2}}), input_error);
    // Entry order is part of identity.
    Signature a({{"A", 2}, {"B", 2}});
    Signature b({{"B", 2}, {"A", 2}});
    EXPECT_FALSE(a == b);
}

TEST(Structure, TupleValidation) {
    EXPECT_THROW(make_structure(one_binary(), 2, {{0, {0, 2}}}), input_error);
    EXPECT_THROW(make_structure(one_binary(), 2, {{0, {0}}}), input_error);
    EXPECT_THROW(make_structure(one_binary(), 2, {{0, {0, 1}}, {0, {0, 1}}}), input_error);
}

TEST(Restrict, FullSetIsIdentity) {
    Structure s = directed_cycle3();
    EXPECT_EQ(restrict_to(s, {0, 1, 2}), s);
}

TEST(Restrict, DropsOutsideTuples) {
    Structure s = make_structure(one_binary(), 3, {{0, {0, 1}}});
    Structure r = restrict_to(s, {0, 2});
    EXPECT_EQ(r.size(), 2);
    EXPECT_TRUE(r.table(0).empty());
}

TEST(Restrict, CycleToEdge) {
    Structure r = restrict_to(directed_cycle3(), {0, 1});
    EXPECT_EQ(r, make_structure(one_binary(), 2, {{0, {0, 1}}}));
}

TEST(Restrict, OutOfRange) {
    EXPECT_THROW(restrict_to(directed_cycle3(), {0, 3}), input_error);
}

TEST(Reduct, AllAndEmpty) {
    Structure s = make_structure(two_binary(), 2, {{0, {0, 1}}, {1, {1, 1}}});
    EXPECT_EQ(reduct(s, {0, 1}), s);
    Structure bare = reduct(s, {});
    EXPECT_EQ(bare.size(), 2);
    EXPECT_EQ(bare.signature().count(), 0);
}

TEST(Reduct, DropsSecondTableOnly) {
    Structure s = make_structure(two_binary(), 2, {{0, {0, 1}}, {1, {1, 1}}});
    Structure r = reduct(s, {0});
    EXPECT_EQ(r.signature().count(), 1);
    EXPECT_EQ(r.table(0), s.table(0));
}

TEST(Reduct, UnknownIndex) {
    EXPECT_THROW(reduct(directed_cycle3(), {1}), input_error);
}

TEST(IsEmbedding, IdentityAndConstant) {
    Structure s = directed_cycle3();
    EXPECT_TRUE(is_embedding(ElementMap{{0, 1, 2}}, s, s));
    Structure pair = make_structure(one_binary(), 2, {{0, {0, 1}}});
    EXPECT_FALSE(is_embedding(ElementMap{{0, 0}}, pair, pair));
}

TEST(IsEmbedding, ChainIntoCycle) {
    EXPECT_TRUE(is_embedding(ElementMap{{0, 1}}, chain(2), directed_cycle3()));
}

TEST(IsEmbedding, SignatureMismatch) {
    Structure a(one_binary(), 1);
    Structure b(two_binary(), 1);
    EXPECT_THROW(is_embedding(ElementMap{{0}}, a, b), input_error);
}

TEST(FindEmbedding, EmptyDomain) {
    Structure empty(one_binary(), 0);
    auto w = find_embedding(empty, directed_cycle3());
    ASSERT_TRUE(w);
    EXPECT_TRUE(w->images.empty());
}

TEST(FindEmbedding, EdgeIntoEdgeless) {
    Structure edge = make_structure(one_binary(), 2, {{0, {0, 1}}});
    Structure edgeless(one_binary(), 2);
    EXPECT_FALSE(find_embedding(edge, edgeless));
}

TEST(FindEmbedding, LexLeastWitness) {
    auto w = find_embedding(chain(2), directed_cycle3());
    ASSERT_TRUE(w);
    EXPECT_EQ(w->images, (std::vector<int>{0, 1}));
}

TEST(FindEmbedding, AgreesWithBruteForceOneBinaryUpTo3) {
    std::vector<Structure> all;
    for (int n = 0; n <= 3; ++n)
        for (const Structure& s : enumerate_canonical(one_binary(), n)) all.push_back(s);
    for (const Structure& a : all)
        for (const Structure& b : all) {
            auto fast = find_embedding(a, b);
            auto brute = oracles::brute_find_embedding(a, b);
            ASSERT_EQ(fast.has_value(), brute.has_value())
                << a.render_compact() << " into " << b.render_compact();
            if (fast) {
                EXPECT_EQ(fast->images, *brute);  // both are lex-least
            }
        }
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
    Structure s = make_structure(two_binary(), 4, {{0, {0, 1}}, {0, {1, 2}}, {1, {3, 3}}, {1, {0, 2}}});
    std::vector<int> perm = {0, 1, 2, 3};
    IsoType base = canonical_form(s);
    do {
        EXPECT_EQ(canonical_form(permuted(s, perm)), base);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(CanonicalForm, EdgeDirectionIrrelevantUpToIso) {
    Structure e01 = make_structure(one_binary(), 2, {{0, {0, 1}}});
    Structure e10 = make_structure(one_binary(), 2, {{0, {1, 0}}});
    EXPECT_EQ(canonical_form(e01), canonical_form(e10));
}

TEST(CanonicalForm, EdgeVsLoopDistinct) {
    Structure edge = make_structure(one_binary(), 2, {{0, {0, 1}}});
    Structure loop = make_structure(one_binary(), 2, {{0, {0, 0}}});
    EXPECT_FALSE(oracles::brute_isomorphic(edge, loop));
    EXPECT_NE(canonical_form(edge).code, canonical_form(loop).code);
}

TEST(CanonicalForm, MatchesBruteForceIsomorphismUpTo3) {
    for (int n = 2; n <= 3; ++n) {
        auto all = enumerate_all_structures(one_binary(), n);
        for (std::size_t i = 0; i < all.size(); i += 7)
            for (std::size_t j = 0; j < all.size(); j += 11) {
                bool iso = oracles::brute_isomorphic(all[i], all[j]);
                bool same = canonical_form(all[i]) == canonical_form(all[j]);
                ASSERT_EQ(iso, same) << all[i].render_compact() << " vs " << all[j].render_compact();
            }
    }
}

TEST(CanonicalForm, RepresentativeHasSameCode) {
    Structure s = make_structure(two_binary(), 3, {{0, {2, 1}}, {1, {1, 1}}});
    Structure rep = canonical_representative(s);
    EXPECT_EQ(canonical_form(rep), canonical_form(s));
}

TEST(Age, SizeZero) {
    auto a = age(directed_cycle3(), 0);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a.begin()->size, 0);
}

TEST(Age, DirectedCycleAtTwo) {
    // Every 2-subset of the directed 3-cycle carries exactly one edge, so the
    // age holds the empty structure, the point and the single directed edge:
    // no loop, no double edge, and no edgeless pair.
    auto a = age(directed_cycle3(), 2);
    std::set<IsoType> expected;
    expected.insert(canonical_form(Structure(one_binary(), 0)));
    expected.insert(canonical_form(Structure(one_binary(), 1)));
    expected.insert(canonical_form(make_structure(one_binary(), 2, {{0, {0, 1}}})));
    EXPECT_EQ(a, expected);
}

TEST(Age, MonotoneInBound) {
    Structure s = make_structure(two_binary(), 4, {{0, {0, 1}}, {1, {2, 3}}, {1, {3, 3}}});
    for (int k = 1; k <= 4; ++k) {
        auto smaller = age(s, k - 1);
        auto larger = age(s, k);
        EXPECT_TRUE(std::includes(larger.begin(), larger.end(), smaller.begin(), smaller.end()));
    }
}

TEST(Age, RestrictionAgeContained) {
    Structure s = make_structure(two_binary(), 4, {{0, {0, 1}}, {0, {1, 2}}, {1, {2, 3}}});
    auto whole = age(s, 2);
    auto part = age(restrict_to(s, {0, 2, 3}), 2);
    EXPECT_TRUE(std::includes(whole.begin(), whole.end(), part.begin(), part.end()));
}

TEST(Properties, EmbeddingsCompose) {
    std::mt19937_64 rng(7);
    auto pool = sample_canonical(two_binary(), 3, 8, 21);
    auto bigger = sample_canonical(two_binary(), 4, 8, 22);
    for (const Structure& a : pool)
        for (const Structure& b : bigger) {
            auto f = find_embedding(a, b);
            if (!f) continue;
            for (const Structure& c : bigger) {
                auto g = find_embedding(b, c);
                if (!g) continue;
                EXPECT_TRUE(is_embedding(compose(*g, *f), a, c));
            }
        }
    // Reflexivity.
    for (const Structure& a : pool) {
        auto f = find_embedding(a, a);
        ASSERT_TRUE(f);
    }
}

TEST(Properties, ReductCommutesWithRestrict) {
    std::mt19937_64 rng(11);
    for (const Structure& s : sample_canonical(two_binary(), 4, 10, 33)) {
        std::vector<int> subset = {0, 2, 3};
        std::vector<int> indices = {1};
        EXPECT_EQ(reduct(restrict_to(s, subset), indices), restrict_to(reduct(s, indices), subset));
    }
}

TEST(Enumerate, CanonicalCountsSmall) {
    // Binary relations on n points up to isomorphism: 2, 10, 104 for n=1,2,3.
    EXPECT_EQ(enumerate_canonical(one_binary(), 1).size(), 2u);
    EXPECT_EQ(enumerate_canonical(one_binary(), 2).size(), 10u);
    EXPECT_EQ(enumerate_canonical(one_binary(), 3).size(), 104u);
}

TEST(Enumerate, ResourceGuard) {
    EXPECT_THROW(enumerate_all_structures(two_binary(), 4), resource_error);
}
