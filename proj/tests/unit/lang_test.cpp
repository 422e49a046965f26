#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pshaut;

namespace {

std::string fx(const std::string &n) { return std::string(PSHAUT_FIXTURES) + "/" + n; }
using Desc = std::set<std::vector<std::string>>;

Language from_descs(const FragmentPtr &G, const Language &U, const Desc &ds) {
    Language out(G, U.max_len());
    for (const auto &[cert, t] : U.tracks())
        if (ds.count(*oracle::g_track_descriptor(t)))
            out.insert(cert, t);
    return out;
}

}  // namespace

TEST(Lang, FsaMatchesWordOracle) {
    auto X = load_automaton(fx("fsa.json"));
    Digraph g = digraph_from_json(read_json_file(fx("fsa.json")));
    auto L = lang_of(X, 8);
    Desc expect;
    for (const auto &w : oracle::digraph_words(g, 4)) {
        std::vector<std::string> d{"_"};
        for (const auto &a : w) {
            d.push_back(a);
            d.push_back("_");
        }
        expect.insert(d);
    }
    EXPECT_EQ(oracle::g_descriptors(L), expect);
}

TEST(Lang, UniverseOfG) {
    std::vector<std::string> sigma{"a", "b"};
    auto G = build_G(sigma);
    for (std::size_t n = 0; n <= 5; ++n)
        EXPECT_EQ(oracle::g_descriptors(make_universe(G, n)), oracle::g_universe(sigma, n)) << n;
}

TEST(Lang, OperationsMatchDescriptors) {
    std::vector<std::string> sigma{"a", "b"};
    auto G = build_G(sigma);
    auto U = make_universe(G, 4);
    std::mt19937 rng(1);
    auto all = oracle::g_universe(sigma, 4);
    std::vector<std::vector<std::string>> v(all.begin(), all.end());
    for (int i = 0; i < 10; ++i) {
        Desc a, b;
        for (const auto &d : v) {
            if (rng() % 4 == 0)
                a.insert(d);
            if (rng() % 4 == 0)
                b.insert(d);
        }
        auto A = from_descs(G, U, a), B = from_descs(G, U, b);
        EXPECT_EQ(oracle::g_descriptors(lang_concat(A, B, U)), oracle::g_concat(a, b, 4));
        Desc u = a;
        u.insert(b.begin(), b.end());
        EXPECT_EQ(oracle::g_descriptors(lang_union(A, B)), u);
        EXPECT_TRUE(is_down_closed(A, U));
    }
}

TEST(Lang, StarNeedsFiniteObjects) {
    auto P = build_precube(1);
    auto U = make_universe(P, 2);
    try {
        lang_star(U, U);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::StarOnInfiniteObjects);
    }
    EXPECT_NO_THROW(lang_plus(U, U));
}

TEST(Lang, StarContainsIdentities) {
    auto G = build_G({"a"});
    auto U = make_universe(G, 4);
    Language empty(G, 4);
    auto s = lang_star(empty, U);
    EXPECT_EQ(s.size(), G->num_objects());
    EXPECT_EQ(s, identity_language(U));
}

TEST(Lang, DownClosureInCubes) {
    // the interleaving track of the square is subsumed by the square's track
    auto X = load_automaton(fx("hdapaths.json"));
    auto L = lang_of(X, 4);
    auto U = make_universe(X.fragment_ptr(), 4);
    EXPECT_TRUE(is_down_closed(L, U));
    auto zeta = track_of_path(X, path_from_json(read_json_file(fx("zeta.json")), X));
    auto alpha = track_of_path(X, path_from_json(read_json_file(fx("alpha.json")), X));
    EXPECT_TRUE(subsumes(zeta, alpha));
    EXPECT_FALSE(subsumes(alpha, zeta));
    EXPECT_TRUE(L.contains(canonical_certificate(zeta)));
    EXPECT_TRUE(L.contains(canonical_certificate(alpha)));
}

TEST(Lang, LocalizeAndSrcTgt) {
    auto G = build_G({"a"});
    auto U = make_universe(G, 2);
    auto [s, t] = src_tgt(U);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(t.size(), 2u);
    ObjId e = G->object_by_name("_"), a = G->object_by_name("a");
    auto loc = localize(U, e, a);
    for (const auto &kv : loc.tracks()) {
        EXPECT_EQ(kv.second.src_obj(), e);
        EXPECT_EQ(kv.second.tgt_obj(), a);
    }
    EXPECT_EQ(oracle::g_descriptors(loc), (Desc{{"_", "a"}}));
}

TEST(Lang, RationalExpressions) {
    auto load = [](const std::string &r) { return load_track(fx(r)); };
    auto e = parse_rational("(concat (atom a.json) (star (atom ba.json)))", load);
    EXPECT_EQ(rational_to_string(e), "(concat (atom a.json) (star (atom ba.json)))");
    auto G = load("a.json").automaton.fragment_ptr();
    auto U = make_universe(G, 6);
    Desc expect{{"_", "a", "_"}, {"_", "a", "_", "b", "_", "a", "_"}};
    EXPECT_EQ(oracle::g_descriptors(eval_rational(e, U)), expect);
    for (const char *bad : {"(atom)", "(union (empty))", "(frob (empty))", "(empty) x", "(plus (empty)"}) {
        try {
            parse_rational(bad, load);
            ADD_FAILURE() << bad;
        } catch (const Error &err) {
            EXPECT_EQ(err.code(), ErrorCode::InvalidInput) << bad;
        }
    }
}
