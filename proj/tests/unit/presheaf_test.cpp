#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pshaut;

namespace {
std::string fx(const std::string &n) { return std::string(PSHAUT_FIXTURES) + "/" + n; }
}  // namespace

TEST(Presheaf, RepresentableFibersAreHomSets) {
    auto P = build_precube(3);
    for (int n = 0; n <= 3; ++n) {
        auto R = representable(P, P->object_by_name("[" + std::to_string(n) + "]"));
        EXPECT_TRUE(validate_automaton(R).ok());
        for (int m = 0; m <= 3; ++m)
            EXPECT_EQ(R.fiber(P->object_by_name("[" + std::to_string(m) + "]")).size(),
                      oracle::precube_hom_count(m, n));
    }
    auto R2 = representable(build_precube(2), make_id<ObjId>(2));
    EXPECT_EQ(cells_by_dim(R2), (std::vector<std::size_t>{4, 4, 1}));
}

TEST(Presheaf, TerminalHasOneElementPerObject) {
    auto G = build_G({"a", "b", "c"});
    auto T = terminal_automaton(G);
    EXPECT_EQ(T.size(), G->num_objects());
    EXPECT_TRUE(validate_automaton(T).ok());
}

TEST(Presheaf, CoproductAndMarks) {
    auto X = load_automaton(fx("hdapaths.json"));
    auto C = coproduct(X.fragment_ptr(), {&X, &X});
    EXPECT_EQ(C.size(), 2 * X.size());
    EXPECT_TRUE(validate_automaton(C).ok());
    EXPECT_EQ(C.start().size(), 2u);
}

TEST(Presheaf, ActAndCoAct) {
    auto X = load_automaton(fx("hdapaths.json"));
    const auto &F = X.fragment();
    ObjId sq = F.object_by_name("[2]");
    ElemId u = X.by_name("u");
    EXPECT_EQ(X.name(X.act(F.resolve_morphism("d0_1", sq), u)), "q");
    EXPECT_EQ(X.name(X.act(F.resolve_morphism("d0_12", sq), u)), "a");
    EXPECT_EQ(X.name(X.act(F.resolve_morphism("d1_12", sq), u)), "d");
    MorId d01 = F.resolve_morphism("d0_1", F.object_by_name("[1]"));
    auto outs = X.co_act(d01, X.by_name("a"));
    std::set<std::string> names;
    for (ElemId e : outs)
        names.insert(X.name(e));
    EXPECT_EQ(names, (std::set<std::string>{"p", "q"}));
    // d0_1 of d0_2 of u is a
    EXPECT_EQ(X.name(act_path(X, {F.resolve_morphism("d0_2", sq), d01}, u)), "a");
}

TEST(Presheaf, ElementsPresentationRoundTrip) {
    for (const char *f : {"hdapaths.json", "oldsq1.json", "fsa.json"}) {
        auto X = load_automaton(fx(f));
        auto pres = elements_presentation(X);
        EXPECT_TRUE(validate_presentation(pres, X.fragment()).ok());
        auto M = materialize(pres, X.fragment_ptr());
        auto Y = M.automaton.with_marks({}, {});
        auto Z = X.with_marks({}, {});
        EXPECT_EQ(canonical_certificate(Y), canonical_certificate(Z)) << f;
    }
}

TEST(Presheaf, ValidateFindsBrokenFace) {
    auto X = load_automaton(fx("hdapaths.json"));
    auto b = AutomatonBuilder::from(X);
    const auto &F = X.fragment();
    // move d1_1 of s onto a: the square's corner no longer agrees
    b.set_act(F.resolve_morphism("d1_1", F.object_by_name("[1]")), X.by_name("s"), X.by_name("a"));
    auto Y = b.build(false);
    EXPECT_FALSE(validate_automaton(Y).ok());
}
