#include "pshaut/models/vass.hpp"

#include <functional>
#include <map>
#include <set>

namespace pshaut {

std::vector<int> positive_part(const std::vector<int> &u) {
    std::vector<int> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        out[k] = u[k] > 0 ? u[k] : 0;
    return out;
}

std::vector<int> negative_part(const std::vector<int> &u) {
    std::vector<int> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        out[k] = u[k] < 0 ? -u[k] : 0;
    return out;
}

namespace {

void check_vass(const Vass &v) {
    std::set<std::string> names(v.Q.begin(), v.Q.end());
    if (names.size() != v.Q.size())
        throw Error(ErrorCode::InvalidInput, "duplicate VASS vertex");
    for (const auto &e : v.E) {
        if (e.vec.size() != v.r)
            throw Error(ErrorCode::InvalidInput, "edge " + e.name + " has a vector of wrong rank");
        if (!names.count(e.src) || !names.count(e.tgt))
            throw Error(ErrorCode::UnknownName, "edge " + e.name + " endpoint");
        if (!names.insert(e.name).second)
            throw Error(ErrorCode::InvalidInput, "duplicate name " + e.name);
    }
}

std::string strip_counter(const std::string &name, const std::vector<int> &c) {
    std::string suffix = "@" + counter_name(c);
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return name;
}

}  // namespace

PresheafAutomaton vass_to_presheaf(const Vass &v, const std::vector<int> &bound) {
    check_vass(v);
    std::vector<std::vector<int>> vecs;
    for (const auto &e : v.E)
        vecs.push_back(e.vec);
    FragmentPtr F = build_V(v.r, bound, vecs);
    const auto counters = counter_vectors(bound);
    const std::size_t C = counters.size();
    AutomatonBuilder b(F);
    std::map<std::string, std::size_t> qidx;
    for (std::size_t i = 0; i < v.Q.size(); ++i)
        qidx[v.Q[i]] = i;
    // vertex (q, c) and edge (e, c) ids, by counter index
    std::vector<std::vector<ElemId>> vid(C), eid(C);
    for (std::size_t ci = 0; ci < C; ++ci) {
        const std::string cn = counter_name(counters[ci]);
        ObjId o = F->object_by_name("(_|" + cn + ")");
        for (const auto &q : v.Q)
            vid[ci].push_back(b.add_element(q + "@" + cn, o));
        for (const auto &e : v.E)
            eid[ci].push_back(b.add_element(e.name + "@" + cn, F->object_by_name("(" + counter_name(e.vec) + "|" + cn + ")")));
    }
    // every morphism acts by replacing the counter with the source counter
    for (std::size_t mi = 0; mi < F->num_morphisms(); ++mi) {
        MorId m = make_id<MorId>(mi);
        const Morphism &mm = F->morphism(m);
        const Object &so = F->object(mm.src), &to = F->object(mm.tgt);
        std::size_t wi = mm.src.idx() % C, vi = mm.tgt.idx() % C;
        const std::string &bp = F->base_fragment()->morphism(mm.base).pattern;
        if (!to.has_vec) {
            for (std::size_t q = 0; q < v.Q.size(); ++q)
                b.set_act(m, vid[vi][q], vid[wi][q]);
            continue;
        }
        for (std::size_t e = 0; e < v.E.size(); ++e) {
            if (v.E[e].vec != to.vec)
                continue;
            if (so.has_vec)
                b.set_act(m, eid[vi][e], eid[wi][e]);
            else if (bp == "s")
                b.set_act(m, eid[vi][e], vid[wi][qidx[v.E[e].src]]);
            else
                b.set_act(m, eid[vi][e], vid[wi][qidx[v.E[e].tgt]]);
        }
    }
    return b.build(false);
}

Vass presheaf_to_vass(const PresheafAutomaton &X) {
    const DCatFragment &F = X.fragment();
    if (F.kind() != FragmentKind::V)
        throw Error(ErrorCode::InvalidInput, "automaton is not over a V fragment");
    Vass v;
    v.r = F.counter_rank();
    const std::vector<int> zero(v.r, 0);
    const std::string z = counter_name(zero);
    for (ElemId q : X.fiber(F.object_by_name("(_|" + z + ")")))
        v.Q.push_back(strip_counter(X.name(q), zero));
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId e = make_id<ElemId>(i);
        const Object &o = F.object(X.base(e));
        if (!o.has_vec || o.counter != zero)
            continue;
        const std::string u = counter_name(o.vec);
        ElemId s = X.act(F.morphism_by_name("(s[" + u + "];" + z + ">" + z + ")"), e);
        ElemId t = X.act(F.morphism_by_name("(t[" + u + "];" + z + ">" + z + ")"), e);
        v.E.push_back({strip_counter(X.name(e), zero), strip_counter(X.name(s), zero), o.vec,
                       strip_counter(X.name(t), zero)});
    }
    return v;
}

std::vector<VassRun> vass_run_oracle(const Vass &v, const VassConfig &start, std::size_t maxlen) {
    std::vector<VassRun> out;
    VassRun cur;
    cur.configs.push_back(start);
    std::function<void()> go = [&]() {
        out.push_back(cur);
        if (cur.edges.size() == maxlen)
            return;
        const VassConfig c = cur.configs.back();
        for (std::size_t i = 0; i < v.E.size(); ++i) {
            const auto &e = v.E[i];
            if (e.src != c.q)
                continue;
            VassConfig n{e.tgt, c.u};
            bool ok = true;
            for (std::size_t k = 0; k < v.r; ++k) {
                n.u[k] += e.vec[k];
                ok = ok && n.u[k] >= 0;
            }
            if (!ok)
                continue;
            cur.configs.push_back(n);
            cur.edges.push_back(i);
            go();
            cur.configs.pop_back();
            cur.edges.pop_back();
        }
    };
    go();
    return out;
}

VassRun path_to_run(const Vass &v, const PresheafAutomaton &X, const Path &p) {
    if (p.length() % 2 != 0)
        throw Error(ErrorCode::InvalidInput, "a run path has even length");
    auto split = [&](ElemId x) {
        const std::string &n = X.name(x);
        auto at = n.rfind('@');
        if (at == std::string::npos)
            throw Error(ErrorCode::InvalidInput, "element " + n + " is not a configuration");
        std::vector<int> c;
        std::size_t pos = at + 1;
        while (pos <= n.size()) {
            std::size_t comma = n.find(',', pos);
            if (comma == std::string::npos)
                comma = n.size();
            c.push_back(std::stoi(n.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return std::make_pair(n.substr(0, at), c);
    };
    VassRun run;
    for (std::size_t k = 0; k < p.nodes.size(); ++k) {
        auto [name, c] = split(p.nodes[k]);
        if (k % 2 == 0) {
            run.configs.push_back({name, c});
            continue;
        }
        std::size_t idx = v.E.size();
        for (std::size_t i = 0; i < v.E.size(); ++i)
            if (v.E[i].name == name)
                idx = i;
        if (idx == v.E.size())
            throw Error(ErrorCode::InvalidInput, "element " + name + " is not an edge");
        run.edges.push_back(idx);
    }
    return run;
}

}  // namespace pshaut
