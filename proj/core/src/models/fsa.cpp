#include "pshaut/models/fsa.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace pshaut {

PresheafAutomaton fsa_to_auto(const Digraph &g, const std::vector<std::string> &sigma) {
    FragmentPtr G = build_G(sigma);
    AutomatonBuilder b(G);
    ObjId empty = G->object_by_name("_");
    std::map<std::string, ElemId> vid;
    for (const auto &v : g.vertices) {
        if (b.find(v))
            throw Error(ErrorCode::InvalidInput, "duplicate element name " + v);
        vid[v] = b.add_element(v, empty);
    }
    auto vertex = [&](const std::string &v) {
        auto it = vid.find(v);
        if (it == vid.end())
            throw Error(ErrorCode::UnknownName, "edge endpoint " + v);
        return it->second;
    };
    for (const auto &e : g.edges) {
        auto lo = G->find_object(e.label);
        if (!lo || e.label == "_")
            throw Error(ErrorCode::UnknownLabel, e.label);
        if (b.find(e.name))
            throw Error(ErrorCode::InvalidInput, "duplicate element name " + e.name);
        ElemId x = b.add_element(e.name, *lo);
        b.set_act(G->morphism_by_name("s[" + e.label + "]"), x, vertex(e.src));
        b.set_act(G->morphism_by_name("t[" + e.label + "]"), x, vertex(e.tgt));
    }
    auto mark = [&](const std::string &n) {
        auto e = b.find(n);
        if (!e)
            throw Error(ErrorCode::UnknownName, "mark " + n);
        return *e;
    };
    for (const auto &s : g.starts)
        b.add_start(mark(s));
    for (const auto &s : g.accepts)
        b.add_accept(mark(s));
    return b.build();
}

PresheafAutomaton fsa_to_auto(const Digraph &g) {
    std::set<std::string> labels;
    for (const auto &e : g.edges)
        labels.insert(e.label);
    return fsa_to_auto(g, std::vector<std::string>(labels.begin(), labels.end()));
}

Digraph auto_to_fsa(const PresheafAutomaton &X) {
    const DCatFragment &G = X.fragment();
    if (G.kind() != FragmentKind::G)
        throw Error(ErrorCode::InvalidInput, "automaton is not over a G(sigma) fragment");
    Digraph g;
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        const Object &o = G.object(X.base(x));
        if (o.dim == 0) {
            g.vertices.push_back(X.name(x));
            continue;
        }
        ElemId s = X.act(G.morphism_by_name("s[" + o.name + "]"), x);
        ElemId t = X.act(G.morphism_by_name("t[" + o.name + "]"), x);
        g.edges.push_back({X.name(x), X.name(s), X.name(t), o.name});
    }
    for (ElemId e : X.start())
        g.starts.push_back(X.name(e));
    for (ElemId e : X.accept())
        g.accepts.push_back(X.name(e));
    return g;
}

std::vector<std::vector<std::string>> fsa_words_oracle(const Digraph &g, std::size_t max_letters) {
    std::set<std::string> acc(g.accepts.begin(), g.accepts.end());
    std::set<std::vector<std::string>> words;
    std::vector<std::string> cur;
    std::function<void(const std::string &)> walk = [&](const std::string &v) {
        if (acc.count(v))
            words.insert(cur);
        if (cur.size() == max_letters)
            return;
        for (const auto &e : g.edges) {
            if (e.src != v)
                continue;
            cur.push_back(e.label);
            walk(e.tgt);
            cur.pop_back();
        }
    };
    std::set<std::string> verts(g.vertices.begin(), g.vertices.end());
    for (const auto &s : g.starts)
        if (verts.count(s))
            walk(s);
    return {words.begin(), words.end()};
}

Path word_path(const DCatFragment &G, const std::vector<std::string> &word) {
    Path p;
    ObjId empty = G.object_by_name("_");
    p.nodes.push_back(make_id<ElemId>(empty.idx()));
    for (const auto &a : word) {
        ObjId o = G.object_by_name(a);
        p.shape.push_back(StepKind::Up);
        p.steps.push_back(G.morphism_by_name("s[" + a + "]"));
        p.nodes.push_back(make_id<ElemId>(o.idx()));
        p.shape.push_back(StepKind::Down);
        p.steps.push_back(G.morphism_by_name("t[" + a + "]"));
        p.nodes.push_back(make_id<ElemId>(empty.idx()));
    }
    return p;
}

}  // namespace pshaut
