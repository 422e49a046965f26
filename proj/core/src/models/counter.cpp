#include "pshaut/models/counter.hpp"

#include "pshaut/morphsearch.hpp"

#include <map>
#include <set>

namespace pshaut {

namespace {

bool within(const std::vector<int> &c, const std::vector<int> &bound) {
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] < 0 || c[k] > bound[k])
            return false;
    return true;
}

std::vector<int> add(std::vector<int> a, const std::vector<int> &b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] += b[k];
    return a;
}

struct CounterFrag {
    FragmentPtr F;
    ObjId vert, edge;
    MorId s, t, id_v, id_e;  // base morphisms
};

CounterFrag counter_fragment(std::size_t r, const std::vector<int> &bound) {
    CounterFrag cf;
    FragmentPtr base = build_G({"a"});
    cf.F = product_with_counter(base, r, bound);
    cf.vert = base->object_by_name("_");
    cf.edge = base->object_by_name("a");
    cf.s = base->morphism_by_name("s[a]");
    cf.t = base->morphism_by_name("t[a]");
    cf.id_v = base->identity(cf.vert);
    cf.id_e = base->identity(cf.edge);
    return cf;
}

[[noreturn]] void not_image(const std::string &why) { throw Error(ErrorCode::NotAVassImage, why); }

}  // namespace

PresheafAutomaton vass_to_counter_auto(const Vass &v, const std::vector<int> &bound) {
    if (bound.size() != v.r)
        throw Error(ErrorCode::InvalidInput, "counter bound has wrong rank");
    CounterFrag cf = counter_fragment(v.r, bound);
    const DCatFragment &F = *cf.F;
    const auto counters = counter_vectors(bound);
    AutomatonBuilder b(cf.F);
    std::map<std::pair<std::string, std::vector<int>>, ElemId> at;
    for (const auto &c : counters)
        for (const auto &q : v.Q)
            at[{q, c}] = b.add_element(q + "@" + counter_name(c), cf.vert);
    struct EdgeElem {
        std::size_t e;
        std::vector<int> c;
        ElemId id;
    };
    std::vector<EdgeElem> edges;
    for (const auto &c : counters) {
        for (std::size_t i = 0; i < v.E.size(); ++i) {
            const auto &e = v.E[i];
            if (!within(add(c, negative_part(e.vec)), bound) || !within(add(c, positive_part(e.vec)), bound))
                continue;
            ElemId x = b.add_element(e.name + "@" + counter_name(c), cf.edge);
            at[{e.name, c}] = x;
            edges.push_back({i, c, x});
        }
    }
    auto lookup = [&](const std::string &n, const std::vector<int> &c) -> ElemId {
        if (!within(c, bound))
            return ElemId();
        auto it = at.find({n, c});
        return it == at.end() ? ElemId() : it->second;
    };
    for (const auto &w : counters) {
        MorId idv = *F.product_morphism(cf.id_v, w), ide = *F.product_morphism(cf.id_e, w);
        MorId s = *F.product_morphism(cf.s, w), t = *F.product_morphism(cf.t, w);
        for (const auto &c : counters)
            for (const auto &q : v.Q) {
                ElemId y = lookup(q, add(c, w));
                if (y.valid())
                    b.set_act(idv, at[{q, c}], y);
            }
        for (const auto &ee : edges) {
            const auto &e = v.E[ee.e];
            ElemId y = lookup(e.name, add(ee.c, w));
            if (y.valid())
                b.set_act(ide, ee.id, y);
            ElemId ys = lookup(e.src, add(add(ee.c, negative_part(e.vec)), w));
            if (ys.valid())
                b.set_act(s, ee.id, ys);
            ElemId yt = lookup(e.tgt, add(add(ee.c, positive_part(e.vec)), w));
            if (yt.valid())
                b.set_act(t, ee.id, yt);
        }
    }
    return b.build(false);
}

namespace {

// Decompose the elements over one object as orbits of the counter action.
// Returns, per element, (generator, counter).
std::vector<std::pair<ElemId, std::vector<int>>> decompose(const PresheafAutomaton &X, ObjId o, MorId id_base,
                                                           const char *what) {
    const DCatFragment &F = X.fragment();
    const std::size_t r = F.counter_rank();
    const auto &bound = F.counter_bound();
    std::vector<MorId> shift;
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<int> ek(r, 0);
        ek[k] = 1;
        auto m = F.product_morphism(id_base, ek);
        if (!m)
            not_image("counter window too small to probe the action");
        shift.push_back(*m);
    }
    auto fib = X.fiber(o);
    std::set<ElemId> image;
    for (std::size_t k = 0; k < r; ++k) {
        std::set<ElemId> seen;
        for (ElemId x : fib) {
            ElemId y = X.act(shift[k], x);
            if (!y.valid())
                continue;
            if (y == x)
                not_image(std::string("counter action has a fixed point on ") + what + " " + X.name(x));
            if (!seen.insert(y).second)
                not_image(std::string("counter action is not injective on ") + what + " (at " + X.name(y) + ")");
            image.insert(y);
        }
    }
    std::vector<std::pair<ElemId, std::vector<int>>> out(X.size());
    std::vector<bool> hit(X.size(), false);
    for (ElemId g : fib) {
        if (image.count(g))
            continue;
        for (const auto &c : counter_vectors(bound)) {
            auto m = F.product_morphism(id_base, c);
            ElemId y = X.act(*m, g);
            if (!y.valid())
                continue;
            if (hit[y.idx()])
                not_image(std::string("two orbits meet at ") + what + " " + X.name(y));
            hit[y.idx()] = true;
            out[y.idx()] = {g, c};
        }
    }
    for (ElemId x : fib)
        if (!hit[x.idx()])
            not_image(std::string("counter action on ") + what + " is not free (cycle through " + X.name(x) + ")");
    return out;
}

std::string base_name(const std::string &n, std::size_t r) {
    std::string suffix = "@" + counter_name(std::vector<int>(r, 0));
    if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0)
        return n.substr(0, n.size() - suffix.size());
    return n;
}

}  // namespace

Vass counter_auto_to_vass(const PresheafAutomaton &X) {
    const DCatFragment &F = X.fragment();
    if (F.kind() != FragmentKind::CounterProduct || !F.base_fragment() || F.base_fragment()->kind() != FragmentKind::G ||
        F.base_fragment()->alphabet().size() != 1)
        throw Error(ErrorCode::InvalidInput, "automaton is not over G({a}) x N^r");
    const DCatFragment &B = *F.base_fragment();
    const std::size_t r = F.counter_rank();
    const std::vector<int> zero(r, 0);
    ObjId vert = B.object_by_name("_");
    ObjId edge = B.object_by_name(B.alphabet().front());
    MorId s = B.morphism_by_name("s[" + B.object(edge).name + "]");
    MorId t = B.morphism_by_name("t[" + B.object(edge).name + "]");

    auto vdec = decompose(X, vert, B.identity(vert), "vertices");
    auto edec = decompose(X, edge, B.identity(edge), "edges");

    Vass v;
    v.r = r;
    for (ElemId x : X.fiber(vert))
        if (vdec[x.idx()].second == zero)
            v.Q.push_back(base_name(X.name(x), r));
    MorId s0 = *F.product_morphism(s, zero), t0 = *F.product_morphism(t, zero);
    for (ElemId e : X.fiber(edge)) {
        if (edec[e.idx()].second != zero)
            continue;
        ElemId a = X.act(s0, e), b = X.act(t0, e);
        if (!a.valid() || !b.valid())
            not_image("edge " + X.name(e) + " has an endpoint outside the window");
        const auto &[ga, ca] = vdec[a.idx()];
        const auto &[gb, cb] = vdec[b.idx()];
        std::vector<int> vec(r);
        for (std::size_t k = 0; k < r; ++k) {
            if (ca[k] != 0 && cb[k] != 0)
                not_image("edge " + X.name(e) + " consumes and produces on counter " + std::to_string(k));
            vec[k] = cb[k] - ca[k];
        }
        v.E.push_back({base_name(X.name(e), r), base_name(X.name(ga), r), vec, base_name(X.name(gb), r)});
    }
    // the reconstruction must reproduce X exactly
    PresheafAutomaton Y = vass_to_counter_auto(v, F.counter_bound());
    if (Y.size() != X.size())
        not_image("re-encoding has " + std::to_string(Y.size()) + " elements, expected " + std::to_string(X.size()));
    ElementMap m(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        bool is_v = X.base(x) == vert;
        const auto &[g, c] = is_v ? vdec[i] : edec[i];
        auto y = Y.find(base_name(X.name(g), r) + "@" + counter_name(c));
        if (!y)
            not_image("element " + X.name(x) + " has no counterpart");
        m[i] = *y;
    }
    ElementMap inv(Y.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        inv[m[i].idx()] = make_id<ElemId>(i);
    if (!is_morphism(X, Y, m, false) || !is_morphism(Y, X, inv, false))
        not_image("actions differ from the re-encoded VASS");
    return v;
}

PresheafAutomaton quotient_counter_auto(int n, int m, int bound) {
    CounterFrag cf = counter_fragment(1, {bound});
    const DCatFragment &F = *cf.F;
    AutomatonBuilder b(cf.F);
    std::vector<ElemId> xs, ys, vs;
    for (int k = 0; k < n; ++k)
        xs.push_back(b.add_element("x@" + std::to_string(k), cf.vert));
    for (int k = 0; k <= m; ++k)
        ys.push_back(b.add_element("y@" + std::to_string(k), cf.vert));
    for (int k = 0; k <= bound; ++k)
        vs.push_back(b.add_element("v@" + std::to_string(k), cf.edge));
    for (int w = 0; w <= bound; ++w) {
        MorId idv = *F.product_morphism(cf.id_v, {w}), ide = *F.product_morphism(cf.id_e, {w});
        MorId s = *F.product_morphism(cf.s, {w}), t = *F.product_morphism(cf.t, {w});
        for (int k = 0; k < n; ++k)
            b.set_act(idv, xs[k], xs[(k + w) % n]);
        for (int k = 0; k <= m; ++k)
            b.set_act(idv, ys[k], ys[std::min(k + w, m)]);
        for (int k = 0; k <= bound; ++k) {
            if (k + w <= bound)
                b.set_act(ide, vs[k], vs[k + w]);
            b.set_act(s, vs[k], xs[(k + w) % n]);
            b.set_act(t, vs[k], ys[std::min(k + w, m)]);
        }
    }
    return b.build(false);
}

}  // namespace pshaut
