#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pshaut;

namespace {

ObjId obj(const DCatFragment &F, const std::string &n) { return F.object_by_name(n); }
MorId mor(const DCatFragment &F, const std::string &n) { return F.morphism_by_name(n); }

// vertex table of a face pattern: fill stars with the bits of each source vertex
std::vector<std::string> vertex_table(const std::string &pat) {
    int m = static_cast<int>(std::count(pat.begin(), pat.end(), '*'));
    std::vector<std::string> out;
    for (int v = 0; v < (1 << m); ++v) {
        std::string s = pat;
        int k = 0;
        for (char &c : s)
            if (c == '*')
                c = static_cast<char>('0' + ((v >> k++) & 1));
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(Dcat, GCounts) {
    auto G = build_G({"a", "b"});
    EXPECT_EQ(G->num_objects(), 3u);
    EXPECT_EQ(G->num_morphisms(), 7u);
    EXPECT_TRUE(validate_fragment(*G).ok());
    EXPECT_FALSE(G->window().objects_truncated);
    MorId s = mor(*G, "s[a]"), t = mor(*G, "t[a]");
    EXPECT_TRUE(G->is_for(s));
    EXPECT_FALSE(G->is_back(s));
    EXPECT_TRUE(G->is_back(t));
    EXPECT_FALSE(G->is_for(t));
    EXPECT_EQ(G->hom(obj(*G, "_"), obj(*G, "a")).size(), 2u);
    EXPECT_EQ(G->hom(obj(*G, "a"), obj(*G, "_")).size(), 0u);
}

TEST(Dcat, GRejectsEmptySymbol) {
    try {
        build_G({"a", "_"});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::AlphabetContainsEmptySymbol);
    }
}

TEST(Dcat, PrecubeHomCountsMatchVertexMaps) {
    auto P = build_precube(3);
    EXPECT_TRUE(validate_fragment(*P).ok());
    EXPECT_TRUE(P->window().objects_truncated);
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            auto h = P->hom(obj(*P, "[" + std::to_string(m) + "]"), obj(*P, "[" + std::to_string(n) + "]"));
            EXPECT_EQ(h.size(), oracle::precube_hom_count(m, n)) << m << "->" << n;
        }
    auto h02 = build_precube(2);
    EXPECT_EQ(h02->hom(obj(*h02, "[0]"), obj(*h02, "[2]")).size(), 4u);
}

TEST(Dcat, PrecubeCompositionIsFunctionComposition) {
    auto P = build_precube(3);
    std::size_t checked = 0;
    for (const auto &e : P->compose_entries()) {
        const auto &g = P->morphism(e.g).pattern, &f = P->morphism(e.f).pattern;
        auto tf = vertex_table(f);
        std::vector<std::string> expect;
        for (const auto &x : tf) {
            std::string s = g;
            std::size_t k = 0;
            for (char &c : s)
                if (c == '*')
                    c = x[k++];
            expect.push_back(s);
        }
        EXPECT_EQ(vertex_table(P->morphism(e.gf).pattern), expect);
        ++checked;
    }
    EXPECT_GT(checked, 0u);
    EXPECT_EQ(P->compose(mor(*P, "d[*0]"), mor(*P, "d[0]")), mor(*P, "d[00]"));
    EXPECT_EQ(P->compose(mor(*P, "d[0*]"), mor(*P, "d[1]")), mor(*P, "d[01]"));
}

TEST(Dcat, PrecubePolarity) {
    auto P = build_precube(2);
    EXPECT_TRUE(P->is_for(mor(*P, "d[00]")));
    EXPECT_TRUE(P->is_back(mor(*P, "d[11]")));
    EXPECT_FALSE(P->is_for(mor(*P, "d[01]")));
    EXPECT_FALSE(P->is_back(mor(*P, "d[01]")));
    EXPECT_EQ(P->resolve_morphism("d0_12", obj(*P, "[2]")), mor(*P, "d[00]"));
    EXPECT_EQ(P->resolve_morphism("d1_1", obj(*P, "[2]")), mor(*P, "d[1*]"));
    EXPECT_EQ(P->resolve_morphism("d0_2", obj(*P, "[2]")), mor(*P, "d[*0]"));
}

TEST(Dcat, NotComposable) {
    auto P = build_precube(2);
    try {
        P->compose(mor(*P, "d[0]"), mor(*P, "d[0]"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotComposable);
    }
}

TEST(Dcat, WindowOverflow) {
    auto P = build_precube(1);
    auto ok = P->try_compose(mor(*P, "d[0]"), P->identity(obj(*P, "[0]")));
    ASSERT_TRUE(ok);
    EXPECT_EQ(*ok, mor(*P, "d[0]"));
}

TEST(Dcat, LabeledPrecube) {
    auto L = build_labeled_precube({"a", "b"}, 2);
    EXPECT_EQ(L->num_objects(), 7u);
    EXPECT_TRUE(validate_fragment(*L).ok());
    // faces of [a,b]: deleting a or b, two signs each
    ObjId ab = obj(*L, "[a,b]");
    EXPECT_EQ(L->hom(obj(*L, "[a]"), ab).size(), 2u);
    EXPECT_EQ(L->hom(obj(*L, "[b]"), ab).size(), 2u);
    EXPECT_EQ(L->hom(obj(*L, "[]"), ab).size(), 4u);
    EXPECT_EQ(L->hom(obj(*L, "[a]"), obj(*L, "[a,a]")).size(), 4u);
}

TEST(Dcat, CounterProduct) {
    auto P = build_precube(1);
    auto C = product_with_counter(P, 1, {2});
    EXPECT_TRUE(validate_fragment(*C).ok());
    EXPECT_EQ(C->num_objects(), 2u);
    EXPECT_EQ(C->num_morphisms(), 4u * 3u);
    MorId d0 = mor(*P, "d[0]");
    auto m1 = C->product_morphism(d0, {1});
    auto m0 = C->product_morphism(d0, {0});
    ASSERT_TRUE(m1 && m0);
    EXPECT_FALSE(C->product_morphism(d0, {3}));
    EXPECT_TRUE(C->is_for(*m0));
    EXPECT_FALSE(C->is_for(*m1));
    auto id1 = C->product_morphism(P->identity(obj(*P, "[1]")), {1});
    ASSERT_TRUE(id1);
    EXPECT_EQ(C->compose(*id1, *m1), *C->product_morphism(d0, {2}));
    EXPECT_FALSE(C->try_compose(*C->product_morphism(P->identity(obj(*P, "[1]")), {2}), *m1));
}

TEST(Dcat, VSourcesAndPolarity) {
    std::vector<std::vector<int>> vecs{{2}, {-1}};
    auto V = build_V(1, {3}, vecs);
    EXPECT_TRUE(validate_fragment(*V).ok());
    EXPECT_EQ(V->num_objects(), 4u * 3u);
    for (std::size_t m = 0; m < V->num_morphisms(); ++m) {
        const Morphism &mm = V->morphism(make_id<MorId>(m));
        const Object &s = V->object(mm.src), &t = V->object(mm.tgt);
        if (!t.has_vec || s.has_vec)
            continue;
        int u = t.vec[0], v = t.counter[0], w = s.counter[0];
        bool is_s = mm.name.rfind("(s[", 0) == 0;
        int neg = std::max(0, -u), pos = std::max(0, u);
        EXPECT_EQ(mm.is_for, is_s && w == v + neg) << mm.name;
        EXPECT_EQ(mm.is_back, !is_s && w == v + pos) << mm.name;
    }
}
