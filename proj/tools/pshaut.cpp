// pshaut: command-line front end for the presheaf automata library.
// Exit status: 0 success/true, 1 false/negative, 2 input error, 3 undecided.

#include "pshaut/io.hpp"
#include "pshaut/models/counter.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace pshaut;

namespace {

enum Exit { Ok = 0, Negative = 1, InputError = 2, Undecided = 3 };

struct Globals {
    std::string format = "json";
    unsigned seed = 0;
    std::string out;
};

Globals g;

void emit(const json &j) {
    std::ostringstream os;
    if (g.format == "text") {
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << it.key() << ": ";
            if (it->is_string())
                os << it->get<std::string>();
            else
                os << it->dump();
            os << "\n";
        }
    } else {
        os << j.dump(2) << "\n";
    }
    if (g.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(g.out);
        if (!f)
            throw Error(ErrorCode::InvalidInput, "cannot write " + g.out);
        f << os.str();
    }
}

json report_json(const ValidationReport &rep) {
    json vs = json::array();
    for (const auto &v : rep.violations)
        vs.push_back({{"kind", v.kind}, {"witness", v.witness}});
    return vs;
}

// path files may name their automaton; --auto wins
PresheafAutomaton automaton_for_path(const std::string &auto_file, const json &pj, const fs::path &path_file) {
    if (!auto_file.empty())
        return load_automaton(auto_file);
    auto it = pj.find("automaton");
    if (it == pj.end() || !it->is_string())
        throw Error(ErrorCode::InvalidInput, path_file.string() + ": no automaton given (use --auto)");
    return load_automaton(path_file.parent_path() / it->get<std::string>());
}

std::string detect_kind(const json &j) {
    if (j.contains("assign"))
        return "map";
    if (j.contains("places"))
        return "petri";
    if (j.contains("Q"))
        return "vass";
    if (j.contains("path"))
        return "track";
    if (j.contains("shape"))
        return "path";
    if (j.contains("format") || j.contains("elements"))
        return "automaton";
    return "fragment";
}

std::vector<int> parse_ints(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(std::stoi(tok));
    return out;
}

std::vector<std::string> parse_names(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(tok);
    return out;
}

int cmd_validate(const std::string &file, std::string kind, const std::string &auto_file, const std::string &dot) {
    json j = read_json_file(file);
    if (kind.empty())
        kind = detect_kind(j);
    json out{{"file", file}, {"kind", kind}};
    ValidationReport rep;
    fs::path dir = fs::path(file).parent_path();
    if (kind == "fragment") {
        FragmentPtr F = fragment_from_json(j);
        rep = validate_fragment(*F);
        out["objects"] = F->num_objects();
        out["morphisms"] = F->num_morphisms();
    } else if (kind == "automaton") {
        PresheafAutomaton X = automaton_from_json(j, dir);
        rep = validate_automaton(X);
        out["elements"] = X.size();
        out["cells_by_dim"] = cells_by_dim(X);
        if (!dot.empty()) {
            std::ofstream f(dot);
            f << elements_dot(X);
        }
    } else if (kind == "path") {
        PresheafAutomaton X = automaton_for_path(auto_file, j, file);
        Path p = path_from_json(j, X);
        rep = validate_path(X, p);
        out["length"] = p.length();
    } else if (kind == "track") {
        TrackObject t = track_from_json(j, dir);
        rep = validate_automaton(t.automaton);
        out["cells_by_dim"] = cells_by_dim(t.automaton);
        out["certificate"] = canonical_certificate(t);
    } else if (kind == "map") {
        PresheafMap f = map_from_json(j, dir);
        rep = validate_map(f);
    } else if (kind == "petri") {
        PetriNet n = petri_from_json(j);
        out["places"] = n.places.size();
        out["transitions"] = n.transitions.size();
    } else if (kind == "vass") {
        Vass v = vass_from_json(j);
        out["vertices"] = v.Q.size();
        out["edges"] = v.E.size();
    } else {
        throw Error(ErrorCode::InvalidInput, "unknown kind " + kind);
    }
    out["ok"] = rep.ok();
    out["violations"] = report_json(rep);
    emit(out);
    return rep.ok() ? Ok : Negative;
}

int cmd_paths(const std::string &auto_file, std::size_t maxlen, bool accepting, const std::string &from) {
    PresheafAutomaton X = load_automaton(auto_file);
    std::vector<ElemId> starts;
    if (!from.empty()) {
        for (const auto &n : parse_names(from))
            starts.push_back(X.by_name(n));
    } else if (accepting) {
        starts = X.start();
    } else {
        for (std::size_t i = 0; i < X.size(); ++i)
            starts.push_back(make_id<ElemId>(i));
    }
    json ps = json::array();
    for (const Path &p : enumerate_paths(X, starts, maxlen, accepting))
        ps.push_back(path_to_json(X, p));
    emit({{"count", ps.size()}, {"paths", ps}});
    return Ok;
}

int cmd_lang(const std::string &auto_file, const std::string &expr, const std::string &frag_file, std::size_t maxlen) {
    Language L;
    if (!expr.empty()) {
        if (frag_file.empty())
            throw Error(ErrorCode::InvalidInput, "--expr needs --fragment");
        // inline descriptor or a file holding one
        json fj;
        if (frag_file.front() == '{') {
            fj = json::parse(frag_file, nullptr, false);
            if (fj.is_discarded())
                throw Error(ErrorCode::InvalidInput, "--fragment: malformed JSON");
        } else {
            fj = read_json_file(frag_file);
        }
        FragmentPtr F = fragment_from_json(fj);
        Language U = make_universe(F, maxlen);
        RationalExpr e = parse_rational(expr, [](const std::string &ref) { return load_track(ref); });
        L = eval_rational(e, U);
    } else {
        L = lang_of(load_automaton(auto_file), maxlen);
    }
    emit(language_to_json(L));
    return Ok;
}

int cmd_member(const std::string &track, const std::string &auto_file) {
    TrackObject t = load_track(track);
    PresheafAutomaton X = load_automaton(auto_file);
    bool yes = accepts(X, t);
    emit({{"member", yes}});
    return yes ? Ok : Negative;
}

int cmd_subsumes(const std::string &sub, const std::string &sup) {
    bool yes = subsumes(load_track(sub), load_track(sup));
    emit({{"subsumes", yes}});
    return yes ? Ok : Negative;
}

int cmd_iso(const std::string &a, const std::string &b) {
    TrackObject ta = load_track(a), tb = load_track(b);
    bool yes = iso_tracks(ta, tb);
    emit({{"isomorphic", yes},
          {"certificate_a", canonical_certificate(ta)},
          {"certificate_b", canonical_certificate(tb)}});
    return yes ? Ok : Negative;
}

std::pair<Path, Path> load_path_pair(const std::string &auto_file, const std::string &p, const std::string &q,
                                     PresheafAutomaton &X) {
    json pj = read_json_file(p), qj = read_json_file(q);
    X = automaton_for_path(auto_file, pj, p);
    return {path_from_json(pj, X), path_from_json(qj, X)};
}

int cmd_refines(const std::string &auto_file, const std::string &p, const std::string &q) {
    PresheafAutomaton X;
    auto [a, b] = load_path_pair(auto_file, p, q, X);
    auto ms = path_morphisms(X, a, b);
    json maps = json::array();
    for (const auto &m : ms)
        maps.push_back(m.object_map);
    emit({{"refines", !ms.empty()}, {"morphisms", maps}});
    return ms.empty() ? Negative : Ok;
}

int cmd_equiv(const std::string &auto_file, const std::string &p, const std::string &q, std::size_t budget) {
    PresheafAutomaton X;
    auto [a, b] = load_path_pair(auto_file, p, q, X);
    EquivResult r = path_equivalent(X, a, b, budget);
    emit({{"verdict", verdict_name(r.verdict)}, {"reason", r.reason}, {"moves", r.moves}});
    switch (r.verdict) {
    case Verdict::Yes:
        return Ok;
    case Verdict::No:
        return Negative;
    case Verdict::Unknown:
        return Undecided;
    }
    return Undecided;
}

int cmd_concat(const std::string &a, const std::string &b) {
    TrackObject t = concat_tracks(load_track(a), load_track(b));
    json j = track_to_json(t);
    j["certificate"] = canonical_certificate(t);
    j["cells_by_dim"] = cells_by_dim(t.automaton);
    emit(j);
    return Ok;
}

int cmd_open(const std::string &map_file, const std::string &dir, std::size_t maxlen) {
    PresheafMap f = map_from_json(read_json_file(map_file), fs::path(map_file).parent_path());
    ValidationReport rep = validate_map(f);
    if (!rep.ok()) {
        emit({{"valid_map", false}, {"violations", report_json(rep)}});
        return InputError;
    }
    json out;
    bool all = true;
    auto one = [&](OpenDirection d, const char *name) {
        OpenResult r = check_open(f, d);
        json j{{"open", r.open}, {"triples_checked", r.triples_checked}};
        if (r.counterexample) {
            const auto &c = *r.counterexample;
            j["counterexample"] = {{"phi", f.from->fragment().name(c.phi)},
                                   {"y", f.from->name(c.y)},
                                   {"x", f.to->name(c.x)},
                                   {"message", describe(f, c)}};
        }
        if (maxlen > 0) {
            PreservationReport pr = check_lang_preservation(f, maxlen, d);
            j["language"] = {{"status", pr.status},
                             {"hypotheses_hold", pr.hypotheses_hold()},
                             {"checked", pr.checked},
                             {"equal", pr.equal},
                             {"size_from", pr.size_from},
                             {"size_to", pr.size_to}};
            if (pr.checked && !pr.equal)
                all = false;
        }
        all = all && r.open;
        out[name] = j;
    };
    if (dir == "future" || dir == "both")
        one(OpenDirection::Future, "future");
    if (dir == "past" || dir == "both")
        one(OpenDirection::Past, "past");
    out["window"] = fragment_descriptor(f.from->fragment());
    emit(out);
    return all ? Ok : Negative;
}

struct ConvertOpts {
    std::string from, to, input, bound, mode = "nac";
    int d = 1;
    int dim_bound = -1;
    bool nac_by_label = false;
};

int cmd_convert(const ConvertOpts &o) {
    json j = read_json_file(o.input);
    if (o.from == "fsa") {
        emit(automaton_to_json(automaton_from_json(j, fs::path(o.input).parent_path())));
    } else if (o.from == "vass") {
        Vass v = vass_from_json(j);
        std::vector<int> bound = parse_ints(o.bound);
        if (o.to == "counter")
            emit(automaton_to_json(vass_to_counter_auto(v, bound)));
        else
            emit(automaton_to_json(vass_to_presheaf(v, bound)));
    } else if (o.from == "petri") {
        PetriNet n = petri_from_json(j);
        PetriOptions po;
        po.mode = o.mode == "full" ? PetriMode::Full : (o.mode == "nac" ? PetriMode::Nac : PetriMode::LeD);
        if (o.mode != "full" && o.mode != "nac" && o.mode != "le_d")
            throw Error(ErrorCode::InvalidInput, "mode must be full, nac or le_d");
        po.d = o.d;
        po.counter_bound = parse_ints(o.bound);
        if (o.dim_bound >= 0)
            po.dim_bound = o.dim_bound;
        po.nac_by_label = o.nac_by_label;
        HdacResult r = petri_to_hdac(n, po);
        json out = automaton_to_json(r.automaton);
        out["shape_objects"] = r.presentation.objects.size();
        emit(out);
    } else if (o.from == "auto") {
        PresheafAutomaton X = automaton_from_json(j, fs::path(o.input).parent_path());
        if (o.to == "vass") {
            Vass v = X.fragment().kind() == FragmentKind::V ? presheaf_to_vass(X) : counter_auto_to_vass(X);
            emit(vass_to_json(v));
        } else if (o.to == "fsa") {
            Digraph d = auto_to_fsa(X);
            json es = json::array();
            for (const auto &e : d.edges)
                es.push_back({{"id", e.name}, {"src", e.src}, {"tgt", e.tgt}, {"label", e.label}});
            emit({{"format", "digraph"},
                  {"alphabet", X.fragment().alphabet()},
                  {"vertices", d.vertices},
                  {"edges", es},
                  {"start", d.starts},
                  {"accept", d.accepts}});
        } else {
            emit(automaton_to_json(X));
        }
    } else {
        throw Error(ErrorCode::InvalidInput, "unknown source model " + o.from);
    }
    return Ok;
}

int cmd_oracle(const std::string &which, const std::string &input, std::size_t maxlen, const std::string &start,
               const std::string &counter, const std::string &seq) {
    json j = read_json_file(input);
    if (which == "fsa-words") {
        json ws = json::array();
        for (const auto &w : fsa_words_oracle(digraph_from_json(j), maxlen))
            ws.push_back(w);
        emit({{"count", ws.size()}, {"words", ws}});
        return Ok;
    }
    if (which == "vass-runs") {
        Vass v = vass_from_json(j);
        std::vector<int> u = parse_ints(counter);
        if (u.empty())
            u.assign(v.r, 0);
        json rs = json::array();
        for (const auto &r : vass_run_oracle(v, {start, u}, maxlen)) {
            json cs = json::array();
            for (const auto &c : r.configs)
                cs.push_back({c.q, c.u});
            json es = json::array();
            for (std::size_t e : r.edges)
                es.push_back(v.E[e].name);
            rs.push_back({{"configs", cs}, {"edges", es}});
        }
        emit({{"count", rs.size()}, {"runs", rs}});
        return Ok;
    }
    if (which == "petri-fire") {
        PetriNet n = petri_from_json(j);
        std::vector<std::size_t> ts;
        for (const auto &t : parse_names(seq)) {
            auto it = std::find(n.transitions.begin(), n.transitions.end(), t);
            if (it == n.transitions.end())
                throw Error(ErrorCode::UnknownName, "transition " + t);
            ts.push_back(static_cast<std::size_t>(it - n.transitions.begin()));
        }
        std::vector<int> m = counter.empty() ? n.m0 : parse_ints(counter);
        auto r = petri_fire_oracle(n, m, ts);
        if (!r) {
            emit({{"blocked", true}});
            return Negative;
        }
        emit({{"blocked", false}, {"marking", *r}});
        return Ok;
    }
    throw Error(ErrorCode::InvalidInput, "unknown oracle " + which);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"pshaut: presheaf automata toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", g.seed, "seed for randomized heuristics (none are randomized at present)");
    app.add_option("-o,--out", g.out, "write the report to a file");

    std::function<int()> run;

    std::string file, kind, auto_file, dot, from, expr, frag, track, a, b, p, q, map_file, dir = "future";
    std::size_t maxlen = 8, budget = 64;
    bool accepting = false;

    auto *v = app.add_subcommand("validate", "validate a fragment, automaton, path, track, map or model file");
    v->add_option("file", file)->required();
    v->add_option("--kind", kind)->check(
        CLI::IsMember({"fragment", "automaton", "path", "track", "map", "petri", "vass"}));
    v->add_option("--auto", auto_file, "automaton for path files");
    v->add_option("--dot", dot, "write the category of elements in graphviz syntax");
    v->callback([&] { run = [&] { return cmd_validate(file, kind, auto_file, dot); }; });

    auto *pa = app.add_subcommand("paths", "enumerate paths");
    pa->add_option("--auto", auto_file)->required();
    pa->add_option("-L,--maxlen", maxlen);
    pa->add_flag("--accepting", accepting);
    pa->add_option("--from", from, "comma-separated start elements");
    pa->callback([&] { run = [&] { return cmd_paths(auto_file, maxlen, accepting, from); }; });

    auto *la = app.add_subcommand("lang", "bounded language of an automaton or a rational expression");
    la->add_option("--auto", auto_file);
    la->add_option("--expr", expr, "prefix rational expression, e.g. (plus (atom a.json))");
    la->add_option("--fragment", frag, "fragment descriptor for --expr");
    la->add_option("-L,--maxlen", maxlen);
    la->callback([&] { run = [&] { return cmd_lang(auto_file, expr, frag, maxlen); }; });

    auto *me = app.add_subcommand("member", "is the track accepted by the automaton");
    me->add_option("--track", track)->required();
    me->add_option("--auto", auto_file)->required();
    me->callback([&] { run = [&] { return cmd_member(track, auto_file); }; });

    auto *su = app.add_subcommand("subsumes", "is there a subsumption from --sub to --sup");
    su->add_option("--sub", a)->required();
    su->add_option("--sup", b)->required();
    su->callback([&] { run = [&] { return cmd_subsumes(a, b); }; });

    auto *is = app.add_subcommand("iso", "are two tracks isomorphic");
    is->add_option("--a", a)->required();
    is->add_option("--b", b)->required();
    is->callback([&] { run = [&] { return cmd_iso(a, b); }; });

    auto *re = app.add_subcommand("refines", "is there a path morphism --p -> --q");
    re->add_option("--auto", auto_file);
    re->add_option("--p", p)->required();
    re->add_option("--q", q)->required();
    re->callback([&] { run = [&] { return cmd_refines(auto_file, p, q); }; });

    auto *eq = app.add_subcommand("equiv", "bounded path equivalence");
    eq->add_option("--auto", auto_file);
    eq->add_option("--p", p)->required();
    eq->add_option("--q", q)->required();
    eq->add_option("--budget", budget);
    eq->callback([&] { run = [&] { return cmd_equiv(auto_file, p, q, budget); }; });

    auto *co = app.add_subcommand("concat", "concatenate two tracks");
    co->add_option("--a", a)->required();
    co->add_option("--b", b)->required();
    co->callback([&] { run = [&] { return cmd_concat(a, b); }; });

    std::size_t open_len = 0;
    auto *op = app.add_subcommand("open-check", "future/past openness of a map");
    op->add_option("--map", map_file)->required();
    op->add_option("--dir", dir)->check(CLI::IsMember({"future", "past", "both"}));
    op->add_option("-L,--maxlen", open_len, "also compare languages up to this length");
    op->callback([&] { run = [&] { return cmd_open(map_file, dir, open_len); }; });

    ConvertOpts co_opts;
    auto *cv = app.add_subcommand("convert", "encode a model as a presheaf automaton, or decode one");
    cv->add_option("--from", co_opts.from)->required()->check(CLI::IsMember({"fsa", "vass", "petri", "auto"}));
    cv->add_option("--to", co_opts.to, "vass|counter|fsa");
    cv->add_option("--input", co_opts.input)->required();
    cv->add_option("--bound", co_opts.bound, "comma-separated counter bound");
    cv->add_option("--mode", co_opts.mode)->check(CLI::IsMember({"full", "nac", "le_d"}));
    cv->add_option("--d", co_opts.d);
    cv->add_option("--dim-bound", co_opts.dim_bound);
    cv->add_flag("--nac-by-label", co_opts.nac_by_label);
    cv->callback([&] { run = [&] { return cmd_convert(co_opts); }; });

    std::string which, start, counter, seq;
    auto *orc = app.add_subcommand("oracle", "reference simulators");
    orc->add_option("which", which)->required()->check(CLI::IsMember({"fsa-words", "vass-runs", "petri-fire"}));
    orc->add_option("--input", file)->required();
    orc->add_option("-L,--maxlen", maxlen);
    orc->add_option("--start", start);
    orc->add_option("--counter", counter);
    orc->add_option("--seq", seq);
    orc->callback([&] { run = [&] { return cmd_oracle(which, file, maxlen, start, counter, seq); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : InputError;
    }
    try {
        return run();
    } catch (const Error &e) {
        std::cout << json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump(2) << "\n";
        return InputError;
    } catch (const std::exception &e) {
        std::cout << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump(2) << "\n";
        return InputError;
    }
}
