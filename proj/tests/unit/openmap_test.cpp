#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pshaut;

namespace {

std::string fx(const std::string &n) { return std::string(PSHAUT_FIXTURES) + "/" + n; }

}  // namespace

TEST(Openmap, IdentityIsOpenBothWays) {
    auto X = std::make_shared<const PresheafAutomaton>(load_automaton(fx("hdapaths.json")));
    auto id = identity_map(X);
    EXPECT_TRUE(validate_map(id).ok());
    EXPECT_TRUE(is_future_open(id).open);
    EXPECT_TRUE(is_past_open(id).open);
    auto r = check_lang_preservation(id, 4);
    EXPECT_TRUE(r.hypotheses_hold());
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.status, "theorem");
    EXPECT_EQ(check_lang_preservation(id, 4, OpenDirection::Past).status, "conjectured mirror");
    auto c = compose_maps(id, id);
    EXPECT_EQ(c.assign, id.assign);
}

TEST(Openmap, FixtureMaps) {
    auto idm = map_from_json(read_json_file(fx("fsa_identity_map.json")), PSHAUT_FIXTURES);
    EXPECT_TRUE(validate_map(idm).ok());
    EXPECT_TRUE(is_future_open(idm).open);

    auto f = map_from_json(read_json_file(fx("fsa_sub_map.json")), PSHAUT_FIXTURES);
    EXPECT_TRUE(validate_map(f).ok());
    auto r = is_future_open(f);
    ASSERT_FALSE(r.open);
    ASSERT_TRUE(r.counterexample);
    const auto &c = *r.counterexample;
    const auto &Y = *f.from, &X = *f.to;
    EXPECT_EQ(X.fragment().name(c.phi), "s[b]");
    EXPECT_EQ(Y.name(c.y), "y");
    EXPECT_EQ(X.name(c.x), "e2");
    // the counterexample is genuine
    EXPECT_EQ(X.act(c.phi, c.x), f.assign[c.y.idx()]);
    for (ElemId yb : Y.co_act(c.phi, c.y))
        EXPECT_NE(f.assign[yb.idx()], c.x);
    EXPECT_FALSE(describe(f, c).empty());
    auto rep = check_lang_preservation(f, 6);
    EXPECT_FALSE(rep.open);
    EXPECT_FALSE(rep.hypotheses_hold());
}

TEST(Openmap, ValidateRejectsNonNatural) {
    auto X = std::make_shared<const PresheafAutomaton>(load_automaton(fx("fsa.json")));
    PresheafMap f = identity_map(X);
    // send edge e1 (x->y) to e3 (y->y): source no longer matches
    f.assign[X->by_name("e1").idx()] = X->by_name("e3");
    EXPECT_FALSE(validate_map(f).ok());
}

TEST(Openmap, UnfoldingIsFutureOpen) {
    // two copies of a cycle mapped onto one cycle
    Digraph g;
    g.vertices = {"p", "q"};
    g.edges = {{"e", "p", "q", "a"}, {"f", "q", "p", "b"}};
    g.starts = {"p"};
    g.accepts = {"q"};
    Digraph h;
    h.vertices = {"p0", "q0", "p1", "q1"};
    h.edges = {{"e0", "p0", "q0", "a"}, {"f0", "q0", "p1", "b"}, {"e1", "p1", "q1", "a"}, {"f1", "q1", "p0", "b"}};
    h.starts = {"p0"};
    h.accepts = {"q0", "q1"};
    auto X = std::make_shared<const PresheafAutomaton>(fsa_to_auto(g, {"a", "b"}));
    auto Y = std::make_shared<const PresheafAutomaton>(fsa_to_auto(h, {"a", "b"}));
    PresheafMap f{Y, X, {}};
    for (std::size_t i = 0; i < Y->size(); ++i) {
        std::string n = Y->name(make_id<ElemId>(i));
        f.assign.push_back(X->by_name(n.substr(0, 1)));
    }
    EXPECT_TRUE(validate_map(f).ok());
    EXPECT_TRUE(is_future_open(f).open);
    EXPECT_TRUE(is_past_open(f).open);
    auto r = check_lang_preservation(f, 8);
    EXPECT_TRUE(r.hypotheses_hold());
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.size_from, r.size_to);
}
