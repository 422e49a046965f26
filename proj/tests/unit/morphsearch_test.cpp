#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pshaut;

TEST(Morphsearch, CountsMatchBruteForceG) {
    std::mt19937 rng(7);
    std::vector<std::string> sigma{"a", "b"};
    for (int i = 0; i < 40; ++i) {
        auto Y = fsa_to_auto(oracle::random_digraph(rng, 2, 2, sigma), sigma);
        auto X = fsa_to_auto(oracle::random_digraph(rng, 3, 4, sigma), sigma);
        for (bool marks : {false, true}) {
            SearchOptions o;
            o.preserve_marks = marks;
            auto ms = find_morphisms(Y, X, o);
            EXPECT_EQ(ms.size(), oracle::brute_force_morphisms(Y, X, marks));
            for (const auto &m : ms)
                EXPECT_TRUE(is_morphism(Y, X, m, marks));
        }
    }
}

TEST(Morphsearch, CountsMatchBruteForceCubes) {
    std::mt19937 rng(8);
    for (int i = 0; i < 30; ++i) {
        auto Y = oracle::random_precubical(rng, 6);
        auto X = oracle::random_precubical(rng, 8);
        ASSERT_TRUE(validate_automaton(Y).ok());
        SearchOptions o;
        o.preserve_marks = false;
        auto ms = find_morphisms(Y, X, o);
        EXPECT_EQ(ms.size(), oracle::brute_force_morphisms(Y, X, false));
    }
}

TEST(Morphsearch, InjectiveAndBijective) {
    std::mt19937 rng(9);
    std::vector<std::string> sigma{"a", "b"};
    for (int i = 0; i < 20; ++i) {
        auto g = oracle::random_digraph(rng, 3, 3, sigma);
        auto X = fsa_to_auto(g, sigma);
        std::vector<std::string> names;
        for (std::size_t k = 0; k < X.size(); ++k)
            names.push_back("n" + std::to_string(X.size() - k));
        auto Y = X.with_names(names);
        SearchOptions bij;
        bij.bijective = true;
        auto isos = find_morphisms(Y, X, bij);
        ASSERT_FALSE(isos.empty());
        SearchOptions inj;
        inj.injective = true;
        EXPECT_GE(find_morphisms(Y, X, inj).size(), isos.size());
        for (const auto &m : isos) {
            std::set<ElemId> img(m.begin(), m.end());
            EXPECT_EQ(img.size(), X.size());
        }
    }
}

TEST(Morphsearch, Limit) {
    auto G = build_G({"a"});
    auto T = terminal_automaton(G);
    auto X = coproduct(G, {&T, &T, &T});
    SearchOptions o;
    o.preserve_marks = false;
    EXPECT_EQ(find_morphisms(T, X, o).size(), 3u);
    o.limit = 2;
    EXPECT_EQ(find_morphisms(T, X, o).size(), 2u);
}

TEST(Morphsearch, DifferentFragments) {
    auto A = terminal_automaton(build_G({"a"}));
    auto B = terminal_automaton(build_G({"b"}));
    try {
        find_morphisms(A, B, {});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
    }
}

TEST(Morphsearch, AcceptsAndSubsumes) {
    std::string dir = PSHAUT_FIXTURES;
    auto X = load_automaton(dir + "/fsa.json");
    EXPECT_TRUE(accepts(X, load_track(dir + "/a.json")));
    EXPECT_FALSE(accepts(X, load_track(dir + "/ba.json")));
    EXPECT_TRUE(accepts(X, load_track(dir + "/abb.json")));
    EXPECT_FALSE(subsumes(load_track(dir + "/abb.json"), load_track(dir + "/a.json")));
    auto a = load_track(dir + "/a.json");
    EXPECT_TRUE(subsumes(a, a));
}
