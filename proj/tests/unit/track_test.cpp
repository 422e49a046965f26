#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pshaut;

namespace {

std::string fx(const std::string &n) { return std::string(PSHAUT_FIXTURES) + "/" + n; }

}  // namespace

TEST(Track, OmegaSquare) {
    TrackObject t = load_track(fx("omega_square.json"));
    EXPECT_EQ(cells_by_dim(t.automaton), (std::vector<std::size_t>{6, 7, 2}));
    EXPECT_TRUE(validate_automaton(t.automaton).ok());
}

TEST(Track, HdaPathsCells) {
    auto X = load_automaton(fx("hdapaths.json"));
    auto tr = [&](const char *f) { return track_of_path(X, path_from_json(read_json_file(fx(f)), X)); };
    EXPECT_EQ(cells_by_dim(tr("alpha.json").automaton), (std::vector<std::size_t>{4, 4, 1}));
    EXPECT_EQ(cells_by_dim(tr("beta.json").automaton), (std::vector<std::size_t>{4, 4, 1}));
    EXPECT_EQ(cells_by_dim(tr("zeta.json").automaton), (std::vector<std::size_t>{3, 2}));
    EXPECT_TRUE(iso_tracks(tr("alpha.json"), tr("gamma.json")));
    EXPECT_TRUE(iso_tracks(tr("alpha.json"), tr("beta.json")));
    EXPECT_FALSE(iso_tracks(tr("alpha.json"), tr("zeta.json")));
}

TEST(Track, GWordTracksAreLinear) {
    TrackObject t = load_track(fx("ba.json"));
    auto d = oracle::g_track_descriptor(t);
    ASSERT_TRUE(d);
    EXPECT_EQ(*d, (std::vector<std::string>{"_", "b", "_", "a", "_"}));
}

TEST(Track, ConcatMatchesPathConcat) {
    std::mt19937 rng(3);
    auto F = build_precube(2);
    for (int i = 0; i < 30; ++i) {
        Path a = oracle::random_fragment_path(F, 3, rng);
        Path b = oracle::random_fragment_path(F, 3, rng, make_id<ObjId>(a.target().idx()));
        auto lhs = track_of(F, concat_paths(a, b));
        auto rhs = concat_tracks(track_of(F, a), track_of(F, b));
        EXPECT_TRUE(iso_tracks(lhs, rhs));
        EXPECT_EQ(canonical_certificate(lhs), canonical_certificate(rhs));
    }
}

TEST(Track, IdentityIsUnit) {
    auto F = build_precube(2);
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        Path a = oracle::random_fragment_path(F, 3, rng);
        auto ta = track_of(F, a);
        auto l = concat_tracks(identity_track(F, ta.src_obj()), ta);
        auto r = concat_tracks(ta, identity_track(F, ta.tgt_obj()));
        EXPECT_TRUE(iso_tracks(l, ta));
        EXPECT_TRUE(iso_tracks(r, ta));
    }
}

TEST(Track, ElementaryTrackPolarity) {
    auto G = build_G({"a"});
    auto up = elementary_track(G, G->morphism_by_name("s[a]"), Direction::Up);
    EXPECT_EQ(up.automaton.size(), 3u);
    try {
        elementary_track(G, G->morphism_by_name("t[a]"), Direction::Up);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::PolarityMismatch);
    }
    try {
        concat_tracks(up, up);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::EndpointMismatch);
    }
}

TEST(Track, CertificateIgnoresNamesAndOrder) {
    Digraph g1 = digraph_from_json(read_json_file(fx("fsa.json")));
    Digraph g2 = g1;
    std::reverse(g2.vertices.begin(), g2.vertices.end());
    std::reverse(g2.edges.begin(), g2.edges.end());
    for (auto &e : g2.edges)
        e.name += "'";
    auto X1 = fsa_to_auto(g1, {"a", "b"}), X2 = fsa_to_auto(g2, {"a", "b"});
    EXPECT_EQ(canonical_certificate(X1), canonical_certificate(X2));
    Digraph g3 = g1;
    g3.edges.pop_back();
    EXPECT_NE(canonical_certificate(X1), canonical_certificate(fsa_to_auto(g3, {"a", "b"})));
    // marks matter
    EXPECT_NE(canonical_certificate(X1), canonical_certificate(X1.with_marks({}, X1.accept())));
}
