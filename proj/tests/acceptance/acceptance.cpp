// One line per acceptance criterion. Exit status is the number of failures.

#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace pshaut;

namespace {

std::string fx(const std::string &n) { return std::string(PSHAUT_FIXTURES) + "/" + n; }

struct Check {
    bool ok = true;
    std::string why;
    void expect(bool c, const std::string &what) {
        if (!c && ok) {
            ok = false;
            why = what;
        }
    }
};

using Desc = std::set<std::vector<std::string>>;

std::vector<std::string> word_desc(const std::vector<std::string> &w) {
    std::vector<std::string> d{"_"};
    for (const auto &a : w) {
        d.push_back(a);
        d.push_back("_");
    }
    return d;
}

// 1. FSA languages against plain word enumeration
Check criterion1() {
    Check c;
    for (const char *f : {"fsa.json", "fsa_prose.json"}) {
        Digraph g = digraph_from_json(read_json_file(fx(f)));
        auto X = fsa_to_auto(g, {"a", "b"});
        auto L = lang_of(X, 8);
        auto words = oracle::digraph_words(g, 4);
        Desc expect;
        std::set<std::string> certs;
        for (const auto &w : words) {
            expect.insert(word_desc(w));
            auto t = track_of(X.fragment_ptr(), word_path(X.fragment(), w));
            certs.insert(canonical_certificate(t));
            c.expect(accepts(X, t), std::string(f) + ": oracle word not accepted");
        }
        c.expect(oracle::g_descriptors(L) == expect, std::string(f) + ": language differs from word oracle");
        auto lc = L.certificates();
        c.expect(std::set<std::string>(lc.begin(), lc.end()) == certs, std::string(f) + ": certificates differ");
        c.expect(L.size() == words.size(), std::string(f) + ": size");
    }
    Digraph g = digraph_from_json(read_json_file(fx("fsa.json")));
    auto X = fsa_to_auto(g, {"a", "b"});
    auto L = oracle::g_descriptors(lang_of(X, 8));
    for (const char *w : {"a", "ab", "aba", "abb", "abab", "abbb"}) {
        std::vector<std::string> word;
        for (const char *ch = w; *ch; ++ch)
            word.emplace_back(1, *ch);
        c.expect(L.count(word_desc(word)) == 1, std::string("listed word missing: ") + w);
    }
    // the same check when the bound counts letters instead of steps
    Desc eight;
    for (const auto &w : oracle::digraph_words(g, 8))
        eight.insert(word_desc(w));
    c.expect(oracle::g_descriptors(lang_of(X, 16)) == eight, "words up to 8 letters");
    return c;
}

// 2. the old square automaton has exactly four track shapes
Check criterion2() {
    Check c;
    auto X = load_automaton(fx("oldsq1.json"));
    c.expect(validate_automaton(X).ok(), "oldsq1 invalid");
    auto L = lang_of(X, 8);
    c.expect(L.size() == 4, "expected 4 tracks, got " + std::to_string(L.size()));
    std::multiset<std::vector<std::size_t>> sig;
    for (const auto &kv : L.tracks()) {
        sig.insert(cells_by_dim(kv.second.automaton));
        c.expect(accepts(X, kv.second), "member not accepted");
    }
    std::multiset<std::vector<std::size_t>> expect{{4, 4, 1}, {5, 5, 1}, {3, 2}, {4, 3}};
    c.expect(sig == expect, "cell signatures differ");
    return c;
}

// 3. the four paths through one square
Check criterion3() {
    Check c;
    auto X = load_automaton(fx("hdapaths.json"));
    auto p = [&](const char *f) { return path_from_json(read_json_file(fx(f)), X); };
    Path a = p("alpha.json"), b = p("beta.json"), g = p("gamma.json"), z = p("zeta.json");
    c.expect(path_equivalent(X, a, b).verdict == Verdict::Yes, "alpha ~ beta");
    c.expect(path_equivalent(X, a, z).verdict == Verdict::No, "alpha !~ zeta");
    c.expect(path_equivalent(X, a, g, 64).verdict == Verdict::Yes, "alpha ~ gamma");
    c.expect(refines(X, b, a), "beta refines alpha");
    c.expect(refines(X, b, g), "beta refines gamma");
    c.expect(!refines(X, a, g), "alpha does not refine gamma");
    c.expect(!refines(X, g, a), "gamma does not refine alpha");
    std::string cx = canonical_certificate(X);
    for (const Path *q : {&a, &b, &g})
        c.expect(canonical_certificate(track_of_path(X, *q)) == cx, "track certificate equals X's");
    auto tz = track_of_path(X, z), ta = track_of_path(X, a);
    c.expect(tz.automaton.size() == 5, "zeta track has 5 cells");
    c.expect(cells_by_dim(ta.automaton) == std::vector<std::size_t>{4, 4, 1}, "alpha track is the square");
    c.expect(iso_tracks(ta, track_of_path(X, g)), "alpha, gamma tracks isomorphic");
    c.expect(!iso_tracks(ta, tz), "alpha, zeta tracks not isomorphic");
    c.expect(subsumes(tz, ta), "zeta track subsumed by alpha track");
    return c;
}

// 4. tracks of concatenations
Check criterion4() {
    Check c;
    auto w = load_track(fx("omega_square.json"));
    c.expect(cells_by_dim(w.automaton) == std::vector<std::size_t>{6, 7, 2}, "omega track cells");
    std::mt19937 rng(4);
    auto G = build_G({"a", "b"});
    auto P = build_precube(2);
    for (int i = 0; i < 200; ++i) {
        const FragmentPtr &F = i % 2 ? P : G;
        Path a = oracle::random_fragment_path(F, 4, rng);
        Path b = oracle::random_fragment_path(F, 4, rng, make_id<ObjId>(a.target().idx()));
        auto whole = track_of(F, concat_paths(a, b));
        auto glued = concat_tracks(track_of(F, a), track_of(F, b));
        c.expect(iso_tracks(whole, glued), "concat iso #" + std::to_string(i));
        if (F == G) {
            auto da = oracle::g_track_descriptor(track_of(F, a)), db = oracle::g_track_descriptor(track_of(F, b));
            auto dw = oracle::g_track_descriptor(whole);
            c.expect(da && db && dw, "G track not linear");
            if (da && db && dw) {
                auto joined = *da;
                joined.insert(joined.end(), db->begin() + 1, db->end());
                c.expect(*dw == joined, "G concat descriptor #" + std::to_string(i));
            }
        }
    }
    return c;
}

// 5. language algebra over G({a,b})
Check criterion5() {
    Check c;
    std::vector<std::string> sigma{"a", "b"};
    auto G = build_G(sigma);
    std::mt19937 rng(5);
    std::map<std::size_t, Language> universes;
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 3 + i % 3;
        if (!universes.count(n))
            universes.emplace(n, make_universe(G, n));
        const Language &U = universes.at(n);
        auto all = oracle::g_universe(sigma, n);
        c.expect(oracle::g_descriptors(U) == all, "universe");
        std::vector<Desc> ds(3);
        std::vector<Language> ls;
        for (auto &d : ds) {
            for (const auto &x : all)
                if (rng() % 5 == 0)
                    d.insert(x);
            Language l(G, n);
            for (const auto &[cert, t] : U.tracks())
                if (d.count(*oracle::g_track_descriptor(t)))
                    l.insert(cert, t);
            ls.push_back(l);
        }
        const Language &A = ls[0], &B = ls[1], &C = ls[2];
        auto cat = [&](const Language &x, const Language &y) { return lang_concat(x, y, U); };
        auto one = identity_language(U);
        std::string tag = " #" + std::to_string(i);
        c.expect(oracle::g_descriptors(cat(A, B)) == oracle::g_concat(ds[0], ds[1], n), "concat vs oracle" + tag);
        c.expect(cat(cat(A, B), C) == cat(A, cat(B, C)), "associativity" + tag);
        c.expect(cat(A, lang_union(B, C)) == lang_union(cat(A, B), cat(A, C)), "left distributivity" + tag);
        c.expect(cat(lang_union(B, C), A) == lang_union(cat(B, A), cat(C, A)), "right distributivity" + tag);
        c.expect(cat(A, one) == A && cat(one, A) == A, "unit" + tag);
        Language empty(G, n);
        c.expect(cat(A, empty).empty() && cat(empty, A).empty(), "zero" + tag);
        c.expect(lang_union(A, B) == lang_union(B, A), "union commutes" + tag);
        auto ap = lang_plus(A, U);
        c.expect(lang_union(A, cat(ap, ap)) == ap, "plus is a fixpoint" + tag);
        c.expect(lang_union(A, cat(A, ap)) == ap, "plus unfolds" + tag);
        // induction: A + Y.Y <= Y implies A+ <= Y, with Y = (A u B)+
        auto y = lang_plus(lang_union(A, B), U);
        bool premise = is_subset(lang_union(A, cat(y, y)), y);
        c.expect(premise, "premise" + tag);
        c.expect(is_subset(ap, y), "plus is least" + tag);
        auto as = lang_star(A, U);
        c.expect(as == lang_union(one, ap), "star = 1 + plus" + tag);
        c.expect(lang_union(one, cat(A, as)) == as, "star unfolds" + tag);
        for (const Language *l : std::initializer_list<const Language *>{&A, &ap, &as, &y})
            c.expect(is_down_closed(*l, U), "down-closed" + tag);
        // the plus oracle: iterate descriptor concatenation
        Desc pd = ds[0], prev;
        while (pd != prev) {
            prev = pd;
            auto more = oracle::g_concat(pd, ds[0], n);
            pd.insert(more.begin(), more.end());
        }
        c.expect(oracle::g_descriptors(ap) == pd, "plus vs oracle" + tag);
    }
    return c;
}

// 6. paths over a fragment path versus maps out of its track
Check criterion6() {
    Check c;
    std::mt19937 rng(6);
    std::vector<std::string> sigma{"a", "b"};
    for (int i = 0; i < 100; ++i) {
        PresheafAutomaton X = i % 2 ? oracle::random_precubical(rng, 10)
                                    : fsa_to_auto(oracle::random_digraph(rng, 4, 6, sigma), sigma);
        Path w = oracle::random_fragment_path(X.fragment_ptr(), 4, rng);
        auto t = track_of(X.fragment_ptr(), w);
        SearchOptions o;
        o.preserve_marks = false;
        auto maps = find_morphisms(t.automaton, X, o);
        auto ls = lifts(X, w);
        std::string tag = " #" + std::to_string(i);
        c.expect(ls.size() == oracle::brute_force_lifts(X, w), "lifts vs brute force" + tag);
        c.expect(maps.size() == ls.size(), "maps vs lifts" + tag);
        std::set<std::vector<ElemId>> from_maps, from_lifts;
        for (const auto &m : maps) {
            std::vector<ElemId> nodes;
            for (ElemId s : t.section)
                nodes.push_back(m[s.idx()]);
            from_maps.insert(nodes);
        }
        for (const auto &p : ls)
            from_lifts.insert(p.nodes);
        c.expect(from_maps == from_lifts, "bijection" + tag);
    }
    return c;
}

// unfolding of a digraph automaton: a tree of depth k from the start vertex, its
// frontier glued into a copy of X
struct Unfolding {
    Digraph h;
    std::map<std::string, std::string> image;
    std::vector<std::string> tree_edges;
};

Unfolding unfold(const Digraph &g, int k) {
    Unfolding u;
    std::set<std::string> acc(g.accepts.begin(), g.accepts.end());
    auto add_vertex = [&](const std::string &n, const std::string &v) {
        u.h.vertices.push_back(n);
        u.image[n] = v;
        if (acc.count(v))
            u.h.accepts.push_back(n);
    };
    for (const auto &v : g.vertices)
        add_vertex("c:" + v, v);
    for (const auto &e : g.edges) {
        u.h.edges.push_back({"c:" + e.name, "c:" + e.src, "c:" + e.tgt, e.label});
        u.image["c:" + e.name] = e.name;
    }
    std::size_t next = 0;
    std::function<void(const std::string &, const std::string &, int)> grow = [&](const std::string &node,
                                                                                   const std::string &v, int d) {
        for (const auto &e : g.edges) {
            if (e.src != v)
                continue;
            std::string child = d + 1 < k ? "t" + std::to_string(next++) : "c:" + e.tgt;
            if (d + 1 < k)
                add_vertex(child, e.tgt);
            std::string en = "t" + std::to_string(next++);
            u.h.edges.push_back({en, node, child, e.label});
            u.image[en] = e.name;
            u.tree_edges.push_back(en);
            if (d + 1 < k)
                grow(child, e.tgt, d + 1);
        }
    };
    add_vertex("root", g.starts.front());
    u.h.starts.push_back("root");
    grow("root", g.starts.front(), 0);
    return u;
}

// drop a tree edge and everything only reachable through it
Digraph mutate(const Unfolding &u, const std::string &cut) {
    Digraph h = u.h;
    std::set<std::string> dead_v;
    std::set<std::string> dead_e{cut};
    bool changed = true;
    for (const auto &e : h.edges)
        if (e.name == cut && e.tgt.rfind("c:", 0) != 0)
            dead_v.insert(e.tgt);
    while (changed) {
        changed = false;
        for (const auto &e : h.edges)
            if (dead_v.count(e.src) && dead_e.insert(e.name).second) {
                if (e.tgt.rfind("c:", 0) != 0)
                    dead_v.insert(e.tgt);
                changed = true;
            }
    }
    auto erase_if = [](auto &xs, auto pred) { xs.erase(std::remove_if(xs.begin(), xs.end(), pred), xs.end()); };
    erase_if(h.edges, [&](const Digraph::Edge &e) { return dead_e.count(e.name) != 0; });
    erase_if(h.vertices, [&](const std::string &v) { return dead_v.count(v) != 0; });
    erase_if(h.accepts, [&](const std::string &v) { return dead_v.count(v) != 0; });
    return h;
}

PresheafMap map_of(const Digraph &h, const std::map<std::string, std::string> &image,
                   const std::shared_ptr<const PresheafAutomaton> &X, const std::vector<std::string> &sigma) {
    auto Y = std::make_shared<const PresheafAutomaton>(fsa_to_auto(h, sigma));
    PresheafMap f{Y, X, {}};
    for (std::size_t i = 0; i < Y->size(); ++i)
        f.assign.push_back(X->by_name(image.at(Y->name(make_id<ElemId>(i)))));
    return f;
}

// 7. open maps preserve languages; broken unfoldings are caught
Check criterion7() {
    Check c;
    std::mt19937 rng(7);
    std::vector<std::string> sigma{"a", "b"};
    int unfoldings = 0;
    while (unfoldings < 20) {
        Digraph g = oracle::random_digraph(rng, 3, 5, sigma);
        bool has_out = false;
        for (const auto &e : g.edges)
            has_out = has_out || e.src == g.starts.front();
        if (!has_out)
            continue;
        auto X = std::make_shared<const PresheafAutomaton>(fsa_to_auto(g, sigma));
        int k = 1 + static_cast<int>(rng() % 3);
        Unfolding u = unfold(g, k);
        if (u.h.edges.size() > 40)
            continue;
        std::string tag = " #" + std::to_string(unfoldings);
        PresheafMap f = map_of(u.h, u.image, X, sigma);
        c.expect(validate_map(f).ok(), "unfolding map not natural" + tag);
        c.expect(is_future_open(f).open, "unfolding not future open" + tag);
        auto rep = check_lang_preservation(f, 5);
        c.expect(rep.hypotheses_hold(), "hypotheses" + tag);
        c.expect(rep.checked && rep.equal, "languages differ" + tag);
        ++unfoldings;

        const std::string &cut = u.tree_edges[rng() % u.tree_edges.size()];
        PresheafMap m = map_of(mutate(u, cut), u.image, X, sigma);
        c.expect(validate_map(m).ok(), "mutated map not natural" + tag);
        auto r = is_future_open(m);
        c.expect(!r.open && r.counterexample, "mutation not detected" + tag);
        if (r.counterexample) {
            const auto &ce = *r.counterexample;
            const auto &Y = *m.from;
            c.expect(X->act(ce.phi, ce.x) == m.assign[ce.y.idx()], "counterexample x" + tag);
            for (ElemId yb : Y.co_act(ce.phi, ce.y))
                c.expect(m.assign[yb.idx()] != ce.x, "counterexample has a filler" + tag);
        }
    }
    return c;
}

// 8. the VASS figure
Check criterion8() {
    Check c;
    Vass v = vass_from_json(read_json_file(fx("vass_figure.json")));
    const int bound = 3;
    auto X = vass_to_presheaf(v, {bound});
    c.expect(validate_automaton(X).ok(), "invalid presheaf");
    const auto &F = X.fragment();
    std::set<std::pair<std::string, std::string>> arrows;
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        for (MorId phi : F.into(X.base(x)))
            if (!F.is_identity(phi) && (F.is_for(phi) || F.is_back(phi)) && X.act(phi, x).valid())
                arrows.insert({X.name(X.act(phi, x)), X.name(x)});
    }
    std::set<std::pair<std::string, std::string>> expect;
    auto at = [](const char *q, int n) { return std::string(q) + "@" + std::to_string(n); };
    for (int n = 0; n <= bound; ++n) {
        expect.insert({at("x", n), at("a", n)});
        expect.insert({at("z", n), at("b", n)});
        if (n + 2 <= bound)
            expect.insert({at("y", n + 2), at("a", n)});
        if (n + 1 <= bound)
            expect.insert({at("y", n + 1), at("b", n)});
    }
    c.expect(arrows == expect && arrows.size() == 13, "arrows: " + std::to_string(arrows.size()));
    c.expect(presheaf_to_vass(X) == v, "round trip");
    auto Xc = vass_to_counter_auto(v, {bound});
    Vass w = counter_auto_to_vass(Xc);
    c.expect(w.Q == v.Q && w.E.size() == v.E.size(), "counter round trip");

    // runs of length <= 4 from (x,0) as paths between vertex elements
    std::set<oracle::Run> from_paths;
    for (const Path &p : enumerate_paths(X, {X.by_name("x@0")}, 8, false)) {
        if (p.length() % 2)
            continue;
        oracle::Run r;
        for (std::size_t k = 0; k < p.nodes.size(); ++k) {
            const std::string &n = X.name(p.nodes[k]);
            auto at_pos = n.find('@');
            if (k % 2 == 0)
                r.configs.push_back({n.substr(0, at_pos), {std::stoi(n.substr(at_pos + 1))}});
            else
                r.edges.push_back(n.substr(0, at_pos));
        }
        from_paths.insert(r);
    }
    std::set<oracle::Run> runs;
    for (const auto &r : oracle::vass_runs(v, "x", {0}, 4)) {
        bool inside = true;
        for (const auto &cf : r.configs)
            inside = inside && cf.second[0] <= bound;
        if (inside)
            runs.insert(r);
    }
    c.expect(from_paths == runs, "runs: " + std::to_string(from_paths.size()) + " vs " + std::to_string(runs.size()));
    std::set<oracle::Run> lib;
    for (const auto &r : vass_run_oracle(v, {"x", {0}}, 4)) {
        oracle::Run o;
        bool inside = true;
        for (const auto &cf : r.configs) {
            o.configs.push_back({cf.q, cf.u});
            inside = inside && cf.u[0] <= bound;
        }
        for (std::size_t e : r.edges)
            o.edges.push_back(v.E[e].name);
        if (inside)
            lib.insert(o);
    }
    c.expect(from_paths == lib, "runs vs library oracle");
    return c;
}

// 9. interleavings of the Petri net encoding are its firing sequences
Check criterion9() {
    Check c;
    PetriNet net = petri_from_json(read_json_file(fx("prodcons.json")));
    for (int mode = 0; mode < 2; ++mode) {
        PetriOptions o;
        o.mode = mode == 0 ? PetriMode::Nac : PetriMode::LeD;
        o.d = 2;
        o.counter_bound = {3, 3};
        auto r = petri_to_hdac(net, o);
        std::string tag = mode == 0 ? " (nac)" : " (le_2)";
        c.expect(r.presentation.objects.size() == (mode == 0 ? 17u : 27u), "shape objects" + tag);
        const auto &X = r.automaton;
        c.expect(validate_automaton(X).ok(), "invalid" + tag);
        // brute force: every word of the mode at every counter value of the window
        std::set<std::string> names, expect_names;
        for (std::size_t i = 0; i < X.size(); ++i)
            names.insert(X.name(make_id<ElemId>(i)));
        std::vector<std::vector<std::size_t>> words{{}};
        for (std::size_t len = 1; len <= 2; ++len)
            for (std::size_t code = 0; code < (1u << len); ++code) {
                std::vector<std::size_t> w;
                for (std::size_t k = 0; k < len; ++k)
                    w.push_back((code >> k) & 1);
                if (mode == 0 && len == 2 && w[0] == w[1])
                    continue;
                words.push_back(w);
            }
        for (const auto &w : words)
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q)
                    expect_names.insert(hdac_element_name(net, w, {p, q}));
        c.expect(names == expect_names, "window elements" + tag);
        auto dim = [&](ElemId e) { return X.fragment().object(X.base(e)).dim; };
        std::vector<std::vector<std::string>> seqs;
        bool markings_ok = true;
        for (const Path &p : enumerate_paths(X, X.start(), 6, false)) {
            bool flat = true;
            for (ElemId n : p.nodes)
                flat = flat && dim(n) <= 1;
            if (!flat || dim(p.target()) != 0)
                continue;
            std::vector<std::string> seq;
            for (std::size_t k = 1; k < p.nodes.size(); k += 2) {
                const std::string &n = X.name(p.nodes[k]);
                seq.push_back(n.substr(1, n.find(';') - 1));
            }
            auto m = oracle::fire(net, net.m0, seq);
            std::vector<std::size_t> idx;
            for (const auto &t : seq)
                idx.push_back(static_cast<std::size_t>(
                    std::find(net.transitions.begin(), net.transitions.end(), t) - net.transitions.begin()));
            markings_ok = markings_ok && petri_fire_oracle(net, net.m0, idx) == m;
            markings_ok = markings_ok && m && X.name(p.target()) == hdac_element_name(net, {}, *m);
            seqs.push_back(seq);
        }
        auto expect = oracle::firing_sequences(net, net.m0, 3);
        std::set<std::vector<std::string>> got(seqs.begin(), seqs.end());
        c.expect(got.size() == seqs.size(), "two paths for one sequence" + tag);
        c.expect(got == expect, "sequences: " + std::to_string(got.size()) + " vs " + std::to_string(expect.size()) + tag);
        c.expect(markings_ok, "end markings" + tag);
    }
    return c;
}

}  // namespace

int main() {
    struct Crit {
        const char *name;
        std::function<Check()> run;
        long limit_ms;
    };
    std::vector<Crit> crits{
        {"FSA languages match the word oracle", criterion1, 1000},
        {"old square automaton has four tracks", criterion2, 5000},
        {"square paths: equivalence, refinement, tracks", criterion3, 1000},
        {"track of a concatenation is the glued track", criterion4, 30000},
        {"language algebra laws over G({a,b})", criterion5, 60000},
        {"paths over a shape biject with maps from its track", criterion6, 30000},
        {"open maps preserve languages, mutations are caught", criterion7, 30000},
        {"VASS encoding: arrows, round trip, runs", criterion8, 5000},
        {"Petri encoding: interleavings are firing sequences", criterion9, 30000},
    };
    int failed = 0;
    for (std::size_t i = 0; i < crits.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = crits[i].run();
        } catch (const std::exception &e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        c.expect(ms < crits[i].limit_ms, "over the time limit of " + std::to_string(crits[i].limit_ms) + " ms");
        std::cout << "criterion " << i + 1 << ": " << (c.ok ? "PASS" : "FAIL") << "  " << crits[i].name << "  ("
                  << ms << " ms)";
        if (!c.ok)
            std::cout << "  -- " << c.why;
        std::cout << std::endl;
        failed += !c.ok;
    }
    return failed;
}
