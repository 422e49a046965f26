#include "pshaut/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pshaut {

namespace {

[[noreturn]] void schema(const std::string &ptr, const std::string &what) {
    throw Error(ErrorCode::InvalidInput, (ptr.empty() ? "/" : ptr) + ": " + what);
}

const json &field(const json &j, const std::string &ptr, const char *key) {
    if (!j.is_object())
        schema(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(ptr + "/" + key, "missing");
    return *it;
}

const json *opt_field(const json &j, const char *key) {
    if (!j.is_object())
        return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string str(const json &j, const std::string &ptr) {
    if (!j.is_string())
        schema(ptr, "expected a string");
    return j.get<std::string>();
}

int integer(const json &j, const std::string &ptr) {
    if (!j.is_number_integer())
        schema(ptr, "expected an integer");
    return j.get<int>();
}

bool boolean(const json &j, const std::string &ptr) {
    if (!j.is_boolean())
        schema(ptr, "expected a boolean");
    return j.get<bool>();
}

const json &array(const json &j, const std::string &ptr) {
    if (!j.is_array())
        schema(ptr, "expected an array");
    return j;
}

std::vector<std::string> strings(const json &j, const std::string &ptr) {
    std::vector<std::string> out;
    const json &a = array(j, ptr);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(str(a[i], ptr + "/" + std::to_string(i)));
    return out;
}

std::vector<int> ints(const json &j, const std::string &ptr) {
    std::vector<int> out;
    const json &a = array(j, ptr);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(integer(a[i], ptr + "/" + std::to_string(i)));
    return out;
}

// wrap library errors raised while interpreting a value
template <class F>
auto at_ptr(const std::string &ptr, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.code() == ErrorCode::InvalidInput && std::string(e.what()).find(": /") != std::string::npos)
            throw;
        throw Error(e.code(), ptr + ": " + e.what());
    }
}

FragmentPtr explicit_fragment(const json &j) {
    FragmentBuilder b(FragmentKind::Explicit);
    const json &objs = array(field(j, "", "objects"), "/objects");
    for (std::size_t i = 0; i < objs.size(); ++i) {
        std::string p = "/objects/" + std::to_string(i);
        Object o;
        if (objs[i].is_string()) {
            o.name = objs[i].get<std::string>();
        } else {
            o.name = str(field(objs[i], p, "id"), p + "/id");
            if (auto d = opt_field(objs[i], "dim"))
                o.dim = integer(*d, p + "/dim");
        }
        if (b.find_object(o.name))
            schema(p, "duplicate object " + o.name);
        b.add_identity(b.add_object(o));
    }
    if (auto ms = opt_field(j, "morphisms")) {
        array(*ms, "/morphisms");
        for (std::size_t i = 0; i < ms->size(); ++i) {
            std::string p = "/morphisms/" + std::to_string(i);
            const json &m = (*ms)[i];
            Morphism mm;
            mm.name = str(field(m, p, "id"), p + "/id");
            auto src = b.find_object(str(field(m, p, "src"), p + "/src"));
            auto tgt = b.find_object(str(field(m, p, "tgt"), p + "/tgt"));
            if (!src)
                schema(p + "/src", "unknown object");
            if (!tgt)
                schema(p + "/tgt", "unknown object");
            if (b.find_morphism(mm.name))
                schema(p + "/id", "duplicate morphism " + mm.name);
            mm.src = *src;
            mm.tgt = *tgt;
            if (auto f = opt_field(m, "for"))
                mm.is_for = boolean(*f, p + "/for");
            if (auto f = opt_field(m, "back"))
                mm.is_back = boolean(*f, p + "/back");
            if (auto f = opt_field(m, "generator"))
                mm.is_generator = boolean(*f, p + "/generator");
            b.add_morphism(mm);
        }
    }
    if (auto cs = opt_field(j, "compose")) {
        array(*cs, "/compose");
        for (std::size_t i = 0; i < cs->size(); ++i) {
            std::string p = "/compose/" + std::to_string(i);
            auto names = strings((*cs)[i], p);
            if (names.size() != 3)
                schema(p, "expected [g, f, gf]");
            MorId ids[3];
            for (int k = 0; k < 3; ++k) {
                auto m = b.find_morphism(names[k]);
                if (!m)
                    schema(p + "/" + std::to_string(k), "unknown morphism " + names[k]);
                ids[k] = *m;
            }
            b.set_compose(ids[0], ids[1], ids[2]);
        }
    }
    if (auto w = opt_field(j, "window")) {
        Window &win = b.window();
        if (auto x = opt_field(*w, "objects_truncated"))
            win.objects_truncated = boolean(*x, "/window/objects_truncated");
        if (auto x = opt_field(*w, "composites_truncated"))
            win.composites_truncated = boolean(*x, "/window/composites_truncated");
    }
    b.infer_generators(true);
    return b.build();
}

}  // namespace

json read_json_file(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in)
        throw Error(ErrorCode::InvalidInput, "cannot open " + p.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::InvalidInput, p.string() + ": " + e.what());
    }
}

FragmentPtr fragment_from_json(const json &j) {
    const json *k = opt_field(j, "kind");
    if (!k)
        return explicit_fragment(j);
    std::string kind = str(*k, "/kind");
    if (kind == "G")
        return at_ptr("/alphabet", [&] { return build_G(strings(field(j, "", "alphabet"), "/alphabet")); });
    if (kind == "precube")
        return build_precube(integer(field(j, "", "dmax"), "/dmax"));
    if (kind == "labeled_precube")
        return build_labeled_precube(strings(field(j, "", "alphabet"), "/alphabet"),
                                     integer(field(j, "", "dmax"), "/dmax"));
    if (kind == "V") {
        std::vector<std::vector<int>> vecs;
        const json &vs = array(field(j, "", "vectors"), "/vectors");
        for (std::size_t i = 0; i < vs.size(); ++i)
            vecs.push_back(ints(vs[i], "/vectors/" + std::to_string(i)));
        return build_V(static_cast<std::size_t>(integer(field(j, "", "r"), "/r")),
                       ints(field(j, "", "bound"), "/bound"), vecs);
    }
    if (kind == "counter") {
        FragmentPtr base = fragment_from_json(field(j, "", "base"));
        return product_with_counter(base, static_cast<std::size_t>(integer(field(j, "", "r"), "/r")),
                                    ints(field(j, "", "bound"), "/bound"));
    }
    if (kind == "explicit")
        return explicit_fragment(j);
    schema("/kind", "unknown fragment kind " + kind);
}

json fragment_descriptor(const DCatFragment &F) {
    switch (F.kind()) {
    case FragmentKind::G:
        if (F.window().omitted.empty() && !F.alphabet().empty())
            return {{"kind", "G"}, {"alphabet", F.alphabet()}};
        if (F.num_objects() == 1)
            return {{"kind", "G"}, {"alphabet", json::array()}};
        break;
    case FragmentKind::Precube:
        return {{"kind", "precube"}, {"dmax", F.window().max_dim.value_or(0)}};
    case FragmentKind::LabeledPrecube:
        return {{"kind", "labeled_precube"}, {"alphabet", F.alphabet()}, {"dmax", F.window().max_dim.value_or(0)}};
    case FragmentKind::CounterProduct:
        return {{"kind", "counter"},
                {"base", fragment_descriptor(*F.base_fragment())},
                {"r", F.counter_rank()},
                {"bound", F.counter_bound()}};
    case FragmentKind::V: {
        std::set<std::vector<int>> vecs;
        for (std::size_t o = 0; o < F.num_objects(); ++o)
            if (F.object(make_id<ObjId>(o)).has_vec)
                vecs.insert(F.object(make_id<ObjId>(o)).vec);
        json vs = json::array();
        for (const auto &v : vecs)
            vs.push_back(v);
        return {{"kind", "V"}, {"r", F.counter_rank()}, {"bound", F.counter_bound()}, {"vectors", vs}};
    }
    case FragmentKind::Explicit:
        break;
    }
    return fragment_to_explicit_json(F);
}

json fragment_to_explicit_json(const DCatFragment &F) {
    json j;
    j["kind"] = "explicit";
    json objs = json::array();
    for (std::size_t o = 0; o < F.num_objects(); ++o)
        objs.push_back({{"id", F.name(make_id<ObjId>(o))}, {"dim", F.object(make_id<ObjId>(o)).dim}});
    j["objects"] = objs;
    json ms = json::array();
    for (std::size_t i = 0; i < F.num_morphisms(); ++i) {
        MorId m = make_id<MorId>(i);
        if (F.is_identity(m))
            continue;
        ms.push_back({{"id", F.name(m)},
                      {"src", F.name(F.src(m))},
                      {"tgt", F.name(F.tgt(m))},
                      {"for", F.is_for(m)},
                      {"back", F.is_back(m)},
                      {"generator", F.morphism(m).is_generator}});
    }
    j["morphisms"] = ms;
    json cs = json::array();
    for (const auto &e : F.compose_entries()) {
        if (F.is_identity(e.g) || F.is_identity(e.f))
            continue;
        cs.push_back({F.name(e.g), F.name(e.f), F.name(e.gf)});
    }
    j["compose"] = cs;
    j["window"] = {{"objects_truncated", F.window().objects_truncated},
                   {"composites_truncated", F.window().composites_truncated}};
    return j;
}

Digraph digraph_from_json(const json &j) {
    Digraph g;
    g.vertices = strings(field(j, "", "vertices"), "/vertices");
    const json &es = array(field(j, "", "edges"), "/edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = "/edges/" + std::to_string(i);
        g.edges.push_back({str(field(es[i], p, "id"), p + "/id"), str(field(es[i], p, "src"), p + "/src"),
                           str(field(es[i], p, "tgt"), p + "/tgt"), str(field(es[i], p, "label"), p + "/label")});
    }
    if (auto s = opt_field(j, "start"))
        g.starts = strings(*s, "/start");
    if (auto s = opt_field(j, "accept"))
        g.accepts = strings(*s, "/accept");
    return g;
}

CellData cells_from_json(const json &j) {
    CellData c;
    const json &cs = array(field(j, "", "cells"), "/cells");
    for (std::size_t n = 0; n < cs.size(); ++n)
        c.cells.push_back(strings(cs[n], "/cells/" + std::to_string(n)));
    if (auto fs = opt_field(j, "faces")) {
        if (!fs->is_object())
            schema("/faces", "expected an object");
        for (auto it = fs->begin(); it != fs->end(); ++it) {
            std::string p = "/faces/" + it.key();
            if (!it->is_object())
                schema(p, "expected an object");
            for (auto jt = it->begin(); jt != it->end(); ++jt)
                c.faces[it.key()][jt.key()] = str(*jt, p + "/" + jt.key());
        }
    }
    if (auto s = opt_field(j, "start"))
        c.starts = strings(*s, "/start");
    if (auto s = opt_field(j, "accept"))
        c.accepts = strings(*s, "/accept");
    return c;
}

PresheafAutomaton automaton_from_json(const json &j, const std::filesystem::path &base_dir) {
    if (auto f = opt_field(j, "format")) {
        std::string fmt = str(*f, "/format");
        if (fmt == "digraph") {
            Digraph g = digraph_from_json(j);
            if (auto a = opt_field(j, "alphabet"))
                return fsa_to_auto(g, strings(*a, "/alphabet"));
            return fsa_to_auto(g);
        }
        if (fmt == "cells") {
            int dmax = -1;
            if (auto d = opt_field(j, "dmax"))
                dmax = integer(*d, "/dmax");
            return precubical_from_cells(cells_from_json(j), dmax);
        }
        if (fmt != "elements")
            schema("/format", "unknown format " + fmt);
    }
    const json &fj = field(j, "", "fragment");
    FragmentPtr F = fj.is_string() ? fragment_from_json(read_json_file(base_dir / fj.get<std::string>()))
                                   : fragment_from_json(fj);
    AutomatonBuilder b(F);
    const json &es = array(field(j, "", "elements"), "/elements");
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = "/elements/" + std::to_string(i);
        std::string id = str(field(es[i], p, "id"), p + "/id");
        std::string base = str(field(es[i], p, "base"), p + "/base");
        auto o = F->find_object(base);
        if (!o)
            schema(p + "/base", "unknown object " + base);
        if (b.find(id))
            schema(p + "/id", "duplicate element " + id);
        b.add_element(id, *o);
    }
    auto elem = [&](const json &x, const std::string &p) {
        std::string n = str(x, p);
        auto e = b.find(n);
        if (!e)
            schema(p, "unknown element " + n);
        return *e;
    };
    if (auto as = opt_field(j, "act")) {
        array(*as, "/act");
        for (std::size_t i = 0; i < as->size(); ++i) {
            std::string p = "/act/" + std::to_string(i);
            const json &row = array((*as)[i], p);
            if (row.size() != 3)
                schema(p, "expected [phi, x, y]");
            ElemId x = elem(row[1], p + "/1");
            ElemId y = elem(row[2], p + "/2");
            // the base of x is the target of phi
            ObjId tgt;
            for (std::size_t k = 0; k < es.size(); ++k)
                if (es[k]["id"] == row[1])
                    tgt = *F->find_object(es[k]["base"].get<std::string>());
            MorId phi = at_ptr(p + "/0", [&] { return F->resolve_morphism(str(row[0], p + "/0"), tgt); });
            at_ptr(p, [&] {
                b.set_act(phi, x, y);
                return 0;
            });
        }
    }
    if (auto s = opt_field(j, "start")) {
        array(*s, "/start");
        for (std::size_t i = 0; i < s->size(); ++i)
            b.add_start(elem((*s)[i], "/start/" + std::to_string(i)));
    }
    if (auto s = opt_field(j, "accept")) {
        array(*s, "/accept");
        for (std::size_t i = 0; i < s->size(); ++i)
            b.add_accept(elem((*s)[i], "/accept/" + std::to_string(i)));
    }
    return b.build();
}

PresheafAutomaton load_automaton(const std::filesystem::path &p) {
    return automaton_from_json(read_json_file(p), p.parent_path());
}

json automaton_to_json(const PresheafAutomaton &X) {
    const DCatFragment &F = X.fragment();
    json j;
    j["fragment"] = fragment_descriptor(F);
    json es = json::array();
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        es.push_back({{"id", X.name(x)}, {"base", F.name(X.base(x))}});
    }
    j["elements"] = es;
    json as = json::array();
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        for (MorId phi : F.into(X.base(x))) {
            if (!F.morphism(phi).is_generator)
                continue;
            ElemId y = X.act(phi, x);
            if (y.valid())
                as.push_back({F.name(phi), X.name(x), X.name(y)});
        }
    }
    j["act"] = as;
    json s = json::array(), a = json::array();
    for (ElemId e : X.start())
        s.push_back(X.name(e));
    for (ElemId e : X.accept())
        a.push_back(X.name(e));
    j["start"] = s;
    j["accept"] = a;
    return j;
}

Path path_from_json(const json &j, const PresheafAutomaton &X) {
    std::string shape = str(field(j, "", "shape"), "/shape");
    auto nodes = strings(field(j, "", "nodes"), "/nodes");
    auto steps = strings(field(j, "", "steps"), "/steps");
    if (nodes.size() != steps.size() + 1 || shape.size() != steps.size())
        schema("", "path needs |nodes| = |steps| + 1 = |shape| + 1");
    Path p;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto e = X.find(nodes[i]);
        if (!e)
            schema("/nodes/" + std::to_string(i), "unknown element " + nodes[i]);
        p.nodes.push_back(*e);
    }
    for (std::size_t k = 0; k < steps.size(); ++k) {
        char c = shape[k];
        if (c != 'S' && c != 'T' && c != 'I')
            schema("/shape", std::string("unknown step kind ") + c);
        StepKind kind = static_cast<StepKind>(c);
        ObjId tgt = X.base(kind == StepKind::Down ? p.nodes[k] : p.nodes[k + 1]);
        std::string ptr = "/steps/" + std::to_string(k);
        p.shape.push_back(kind);
        p.steps.push_back(at_ptr(ptr, [&] { return X.fragment().resolve_morphism(steps[k], tgt); }));
    }
    return p;
}

json path_to_json(const PresheafAutomaton &X, const Path &p) {
    json nodes = json::array(), steps = json::array();
    for (ElemId n : p.nodes)
        nodes.push_back(X.name(n));
    for (MorId m : p.steps)
        steps.push_back(X.fragment().name(m));
    return {{"shape", shape_string(p)}, {"nodes", nodes}, {"steps", steps}};
}

TrackObject track_from_json(const json &j, const std::filesystem::path &base_dir) {
    if (auto pj = opt_field(j, "path")) {
        const json &fj = field(j, "", "fragment");
        FragmentPtr F = fj.is_string() ? fragment_from_json(read_json_file(base_dir / fj.get<std::string>()))
                                       : fragment_from_json(fj);
        PresheafAutomaton T = terminal_automaton(F);
        Path p = path_from_json(*pj, T);
        return track_of(F, p);
    }
    TrackObject t;
    t.automaton = automaton_from_json(j, base_dir);
    if (t.automaton.start().size() != 1 || t.automaton.accept().size() != 1)
        schema("", "a track has exactly one start and one accept element");
    return t;
}

TrackObject load_track(const std::filesystem::path &p) { return track_from_json(read_json_file(p), p.parent_path()); }

json track_to_json(const TrackObject &t) {
    json j = automaton_to_json(t.automaton);
    j["src_obj"] = t.automaton.fragment().name(t.src_obj());
    j["tgt_obj"] = t.automaton.fragment().name(t.tgt_obj());
    return j;
}

PresheafMap map_from_json(const json &j, const std::filesystem::path &base_dir) {
    auto load = [&](const char *key) {
        const json &x = field(j, "", key);
        if (x.is_string())
            return std::make_shared<const PresheafAutomaton>(load_automaton(base_dir / x.get<std::string>()));
        return std::make_shared<const PresheafAutomaton>(automaton_from_json(x, base_dir));
    };
    PresheafMap f{load("from"), load("to"), {}};
    f.assign.assign(f.from->size(), ElemId());
    const json &as = array(field(j, "", "assign"), "/assign");
    for (std::size_t i = 0; i < as.size(); ++i) {
        std::string p = "/assign/" + std::to_string(i);
        auto pr = strings(as[i], p);
        if (pr.size() != 2)
            schema(p, "expected [y, x]");
        auto y = f.from->find(pr[0]);
        auto x = f.to->find(pr[1]);
        if (!y)
            schema(p + "/0", "unknown element " + pr[0]);
        if (!x)
            schema(p + "/1", "unknown element " + pr[1]);
        f.assign[y->idx()] = *x;
    }
    for (std::size_t i = 0; i < f.assign.size(); ++i)
        if (!f.assign[i].valid())
            schema("/assign", "element " + f.from->name(make_id<ElemId>(i)) + " is not assigned");
    return f;
}

PetriNet petri_from_json(const json &j) {
    PetriNet n;
    n.places = strings(field(j, "", "places"), "/places");
    n.transitions = strings(field(j, "", "transitions"), "/transitions");
    std::set<std::string> ps(n.places.begin(), n.places.end()), ts(n.transitions.begin(), n.transitions.end());
    const json &fs = array(field(j, "", "flows"), "/flows");
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::string p = "/flows/" + std::to_string(i);
        auto pr = strings(fs[i], p);
        if (pr.size() != 2)
            schema(p, "expected a pair");
        if (ps.count(pr[0]) && ts.count(pr[1]))
            n.pre.emplace_back(pr[0], pr[1]);
        else if (ts.count(pr[0]) && ps.count(pr[1]))
            n.post.emplace_back(pr[0], pr[1]);
        else
            schema(p, "flow must relate a place and a transition");
    }
    n.labels.assign(n.transitions.size(), "");
    if (auto ls = opt_field(j, "labels")) {
        if (!ls->is_object())
            schema("/labels", "expected an object");
        for (auto it = ls->begin(); it != ls->end(); ++it) {
            auto t = std::find(n.transitions.begin(), n.transitions.end(), it.key());
            if (t == n.transitions.end())
                schema("/labels/" + it.key(), "unknown transition");
            n.labels[static_cast<std::size_t>(t - n.transitions.begin())] = str(*it, "/labels/" + it.key());
        }
    }
    if (auto m = opt_field(j, "m0")) {
        n.m0 = ints(*m, "/m0");
        if (n.m0.size() != n.places.size())
            schema("/m0", "one entry per place expected");
    }
    return n;
}

Vass vass_from_json(const json &j) {
    Vass v;
    v.Q = strings(field(j, "", "Q"), "/Q");
    const json &es = array(field(j, "", "E"), "/E");
    bool have_r = false;
    if (auto r = opt_field(j, "r")) {
        v.r = static_cast<std::size_t>(integer(*r, "/r"));
        have_r = true;
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = "/E/" + std::to_string(i);
        const json &e = array(es[i], p);
        if (e.size() != 3 && e.size() != 4)
            schema(p, "expected [src, vec, tgt] or [src, vec, tgt, name]");
        Vass::Edge ed;
        ed.src = str(e[0], p + "/0");
        ed.vec = ints(e[1], p + "/1");
        ed.tgt = str(e[2], p + "/2");
        ed.name = e.size() == 4 ? str(e[3], p + "/3") : "e" + std::to_string(i);
        if (!have_r) {
            v.r = ed.vec.size();
            have_r = true;
        }
        if (ed.vec.size() != v.r)
            schema(p + "/1", "vector of wrong rank");
        v.E.push_back(ed);
    }
    return v;
}

json vass_to_json(const Vass &v) {
    json es = json::array();
    for (const auto &e : v.E)
        es.push_back({e.src, e.vec, e.tgt, e.name});
    return {{"r", v.r}, {"Q", v.Q}, {"E", es}};
}

json language_to_json(const Language &L) {
    json members = json::array();
    for (const auto &[cert, t] : L.tracks()) {
        json m;
        m["certificate"] = cert;
        m["cells_by_dim"] = cells_by_dim(t.automaton);
        m["track"] = track_to_json(t);
        members.push_back(m);
    }
    return {{"max_len", L.max_len()}, {"count", L.size()}, {"members", members}};
}

std::string elements_dot(const PresheafAutomaton &X) {
    const DCatFragment &F = X.fragment();
    std::ostringstream os;
    auto q = [](const std::string &s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out + "\"";
    };
    os << "digraph elements {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        os << "  " << q(X.name(x)) << " [label=" << q(X.name(x) + " : " + F.name(X.base(x)));
        if (X.is_start(x) && X.is_accept(x))
            os << ", shape=doubleoctagon";
        else if (X.is_start(x))
            os << ", shape=box";
        else if (X.is_accept(x))
            os << ", shape=doublecircle";
        os << "];\n";
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        for (MorId phi : F.into(X.base(x))) {
            if (!F.morphism(phi).is_generator)
                continue;
            ElemId y = X.act(phi, x);
            if (!y.valid())
                continue;
            const char *colour = F.is_for(phi) ? "darkgreen" : (F.is_back(phi) ? "red" : "gray");
            os << "  " << q(X.name(y)) << " -> " << q(X.name(x)) << " [label=" << q(F.name(phi))
               << ", color=" << colour << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace pshaut
