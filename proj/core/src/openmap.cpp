#include "pshaut/openmap.hpp"

#include <set>

namespace pshaut {

ValidationReport validate_map(const PresheafMap &f) {
    ValidationReport rep;
    const PresheafAutomaton &Y = *f.from, &X = *f.to;
    if (!same_fragment(Y.fragment(), X.fragment())) {
        rep.add("fragment", {});
        return rep;
    }
    if (f.assign.size() != Y.size()) {
        rep.add("size", {std::to_string(f.assign.size()), std::to_string(Y.size())});
        return rep;
    }
    for (std::size_t i = 0; i < Y.size(); ++i) {
        ElemId y = make_id<ElemId>(i);
        ElemId x = f.assign[i];
        if (!x.valid() || x.idx() >= X.size()) {
            rep.add("unassigned", {Y.name(y)});
            continue;
        }
        if (X.base(x) != Y.base(y)) {
            rep.add("base", {Y.name(y), X.name(x)});
            continue;
        }
        for (MorId phi : Y.fragment().into(Y.base(y))) {
            ElemId a = Y.act(phi, y);
            if (!a.valid())
                continue;
            ElemId b = X.act(phi, x);
            if (b != f.assign[a.idx()])
                rep.add("naturality", {Y.fragment().name(phi), Y.name(y)});
        }
    }
    return rep;
}

PresheafMap compose_maps(const PresheafMap &g, const PresheafMap &f) {
    if (f.to.get() != g.from.get() && f.to->size() != g.from->size())
        throw Error(ErrorCode::EndpointMismatch, "maps do not compose");
    PresheafMap h{f.from, g.to, {}};
    for (ElemId y : f.assign)
        h.assign.push_back(g.assign.at(y.idx()));
    return h;
}

PresheafMap identity_map(std::shared_ptr<const PresheafAutomaton> X) {
    PresheafMap f{X, X, {}};
    for (std::size_t i = 0; i < X->size(); ++i)
        f.assign.push_back(make_id<ElemId>(i));
    return f;
}

OpenResult check_open(const PresheafMap &f, OpenDirection dir) {
    const PresheafAutomaton &Y = *f.from, &X = *f.to;
    const DCatFragment &F = Y.fragment();
    OpenResult res;
    for (std::size_t m = 0; m < F.num_morphisms(); ++m) {
        MorId phi = make_id<MorId>(m);
        if (F.is_identity(phi))
            continue;
        if (dir == OpenDirection::Future ? !F.is_for(phi) : !F.is_back(phi))
            continue;
        for (ElemId y : Y.fiber(F.src(phi))) {
            ElemId fy = f.assign[y.idx()];
            for (ElemId x : X.co_act(phi, fy)) {
                ++res.triples_checked;
                bool filled = false;
                for (ElemId yb : Y.co_act(phi, y))
                    if (f.assign[yb.idx()] == x) {
                        filled = true;
                        break;
                    }
                if (!filled) {
                    res.open = false;
                    res.counterexample = OpenCounterexample{phi, y, x};
                    return res;
                }
            }
        }
    }
    return res;
}

std::string describe(const PresheafMap &f, const OpenCounterexample &c) {
    return "no filler for " + f.from->fragment().name(c.phi) + " at y=" + f.from->name(c.y) +
           ", x=" + f.to->name(c.x);
}

PreservationReport check_lang_preservation(const PresheafMap &f, std::size_t max_len, OpenDirection dir) {
    const PresheafAutomaton &Y = *f.from, &X = *f.to;
    PreservationReport rep;
    rep.dir = dir;
    rep.status = dir == OpenDirection::Future ? "theorem" : "conjectured mirror";
    rep.morphism_ok = is_morphism(Y, X, f.assign, true);
    OpenResult o = check_open(f, dir);
    rep.open = o.open;
    rep.counterexample = o.counterexample;

    const bool fut = dir == OpenDirection::Future;
    // initial marks must be covered, final marks must be reflected
    const auto &init_X = fut ? X.start() : X.accept();
    const auto &init_Y = fut ? Y.start() : Y.accept();
    std::set<ElemId> image;
    for (ElemId y : init_Y)
        image.insert(f.assign[y.idx()]);
    rep.initial_ok = true;
    for (ElemId x : init_X)
        if (!image.count(x))
            rep.initial_ok = false;
    rep.final_ok = true;
    for (std::size_t i = 0; i < Y.size(); ++i) {
        ElemId y = make_id<ElemId>(i);
        ElemId x = f.assign[i];
        bool my = fut ? Y.is_accept(y) : Y.is_start(y);
        bool mx = fut ? X.is_accept(x) : X.is_start(x);
        if (my != mx)
            rep.final_ok = false;
    }
    if (!rep.hypotheses_hold())
        return rep;
    Language ly = lang_of(Y, max_len), lx = lang_of(X, max_len);
    rep.checked = true;
    rep.size_from = ly.size();
    rep.size_to = lx.size();
    rep.equal = ly == lx;
    return rep;
}

}  // namespace pshaut
