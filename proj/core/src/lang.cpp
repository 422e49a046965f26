#include "pshaut/lang.hpp"

#include "pshaut/morphsearch.hpp"

#include <cctype>
#include <unordered_set>

namespace pshaut {

std::vector<std::string> Language::certificates() const {
    std::vector<std::string> out;
    out.reserve(tracks_.size());
    for (const auto &kv : tracks_)
        out.push_back(kv.first);
    return out;
}

bool Language::insert(const TrackObject &t) { return insert(canonical_certificate(t), t); }

bool Language::insert(std::string cert, const TrackObject &t) {
    return tracks_.emplace(std::move(cert), t).second;
}

namespace {

std::string fragment_path_key(const Path &p) {
    std::string k = shape_string(p);
    k += '|';
    for (ElemId n : p.nodes)
        k += std::to_string(n.value) + ',';
    k += '|';
    for (MorId m : p.steps)
        k += std::to_string(m.value) + ',';
    return k;
}

void require_compatible(const Language &a, const Language &b) {
    if (!a.fragment_ptr() || !b.fragment_ptr())
        return;
    if (a.fragment_ptr() != b.fragment_ptr() && !same_fragment(*a.fragment_ptr(), *b.fragment_ptr()))
        throw Error(ErrorCode::InvalidInput, "languages over different fragments");
}

}  // namespace

Language make_universe(const FragmentPtr &frag, std::size_t max_len) {
    Language U(frag, max_len);
    PresheafAutomaton T = terminal_automaton(frag);
    std::vector<ElemId> all;
    for (std::size_t i = 0; i < T.size(); ++i)
        all.push_back(make_id<ElemId>(i));
    for_each_path(T, all, max_len, false, [&](const Path &p) {
        U.insert(track_of(frag, p));
        return true;
    });
    return U;
}

Language lang_of(const PresheafAutomaton &X, std::size_t max_len) {
    Language L(X.fragment_ptr(), max_len);
    // many accepting paths share a projection, and the track only depends on it
    std::unordered_set<std::string> seen;
    for_each_path(X, X.start(), max_len, true, [&](const Path &p) {
        Path w = project(X, p);
        if (seen.insert(fragment_path_key(w)).second)
            L.insert(track_of(X.fragment_ptr(), w));
        return true;
    });
    return L;
}

bool is_subset(const Language &a, const Language &b) {
    for (const auto &kv : a.tracks())
        if (!b.contains(kv.first))
            return false;
    return true;
}

Language down_closure(const Language &a, const Language &universe) {
    require_compatible(a, universe);
    Language out = a;
    for (const auto &[cert, g] : universe.tracks()) {
        if (out.contains(cert))
            continue;
        for (const auto &kv : a.tracks()) {
            const TrackObject &d = kv.second;
            if (g.src_obj() != d.src_obj() || g.tgt_obj() != d.tgt_obj())
                continue;
            if (subsumes(g, d)) {
                out.insert(cert, g);
                break;
            }
        }
    }
    return out;
}

bool is_down_closed(const Language &a, const Language &universe) {
    return down_closure(a, universe).size() == a.size();
}

Language lang_union(const Language &a, const Language &b) {
    require_compatible(a, b);
    Language out = a.fragment_ptr() ? a : Language(b.fragment_ptr(), b.max_len());
    for (const auto &[cert, t] : b.tracks())
        out.insert(cert, t);
    return out;
}

Language lang_concat(const Language &a, const Language &b, const Language &universe) {
    require_compatible(a, b);
    require_compatible(a, universe);
    Language prod(universe.fragment_ptr(), universe.max_len());
    for (const auto &ka : a.tracks()) {
        for (const auto &kb : b.tracks()) {
            if (ka.second.tgt_obj() != kb.second.src_obj())
                continue;
            TrackObject t = concat_tracks(ka.second, kb.second);
            std::string cert = canonical_certificate(t);
            if (universe.contains(cert))
                prod.insert(std::move(cert), t);
        }
    }
    return down_closure(prod, universe);
}

Language lang_plus(const Language &a, const Language &universe, std::size_t iters) {
    Language acc = down_closure(a, universe);
    Language power = acc;
    for (std::size_t i = 1; i < iters; ++i) {
        power = lang_concat(power, acc, universe);
        Language next = lang_union(acc, power);
        if (next.size() == acc.size())
            break;
        acc = std::move(next);
    }
    return acc;
}

Language identity_language(const Language &universe) {
    const FragmentPtr &frag = universe.fragment_ptr();
    if (frag->window().objects_truncated)
        throw Error(ErrorCode::StarOnInfiniteObjects, "identity language over a truncated object set");
    Language ids(frag, universe.max_len());
    for (std::size_t o = 0; o < frag->num_objects(); ++o)
        ids.insert(identity_track(frag, make_id<ObjId>(o)));
    return down_closure(ids, universe);
}

Language lang_star(const Language &a, const Language &universe, std::size_t iters) {
    if (universe.fragment_ptr()->window().objects_truncated)
        throw Error(ErrorCode::StarOnInfiniteObjects, "star needs a finite object set");
    return lang_union(identity_language(universe), lang_plus(a, universe, iters));
}

std::pair<std::set<ObjId>, std::set<ObjId>> src_tgt(const Language &a) {
    std::pair<std::set<ObjId>, std::set<ObjId>> out;
    for (const auto &kv : a.tracks()) {
        out.first.insert(kv.second.src_obj());
        out.second.insert(kv.second.tgt_obj());
    }
    return out;
}

Language localize(const Language &a, ObjId u, ObjId v) {
    Language out(a.fragment_ptr(), a.max_len());
    for (const auto &[cert, t] : a.tracks())
        if (t.src_obj() == u && t.tgt_obj() == v)
            out.insert(cert, t);
    return out;
}

namespace {

class Parser {
public:
    Parser(const std::string &s, const std::function<TrackObject(const std::string &)> &load)
        : s_(s), load_(load) {}

    RationalExpr parse_all() {
        RationalExpr e = parse();
        skip();
        if (pos_ != s_.size())
            fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorCode::InvalidInput, "rational expression at offset " + std::to_string(pos_) + ": " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    std::string token() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (b == pos_)
            fail("expected a token");
        return s_.substr(b, pos_ - b);
    }
    void expect(char c) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::shared_ptr<const RationalExpr> sub() { return std::make_shared<const RationalExpr>(parse()); }

    RationalExpr parse() {
        expect('(');
        std::string op = token();
        RationalExpr e;
        if (op == "empty") {
            e.op = RationalExpr::Op::Empty;
        } else if (op == "atom") {
            e.op = RationalExpr::Op::Atom;
            e.atom_ref = token();
            e.atom = std::make_shared<const TrackObject>(load_(e.atom_ref));
        } else if (op == "union" || op == "concat") {
            e.op = op == "union" ? RationalExpr::Op::Union : RationalExpr::Op::Concat;
            e.lhs = sub();
            e.rhs = sub();
        } else if (op == "plus" || op == "star") {
            e.op = op == "plus" ? RationalExpr::Op::Plus : RationalExpr::Op::Star;
            e.lhs = sub();
        } else {
            fail("unknown operator " + op);
        }
        expect(')');
        return e;
    }

    const std::string &s_;
    const std::function<TrackObject(const std::string &)> &load_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_rational(const std::string &text,
                            const std::function<TrackObject(const std::string &)> &load) {
    return Parser(text, load).parse_all();
}

std::string rational_to_string(const RationalExpr &e) {
    using Op = RationalExpr::Op;
    switch (e.op) {
    case Op::Empty:
        return "(empty)";
    case Op::Atom:
        return "(atom " + e.atom_ref + ")";
    case Op::Union:
        return "(union " + rational_to_string(*e.lhs) + " " + rational_to_string(*e.rhs) + ")";
    case Op::Concat:
        return "(concat " + rational_to_string(*e.lhs) + " " + rational_to_string(*e.rhs) + ")";
    case Op::Plus:
        return "(plus " + rational_to_string(*e.lhs) + ")";
    case Op::Star:
        return "(star " + rational_to_string(*e.lhs) + ")";
    }
    return "";
}

Language eval_rational(const RationalExpr &e, const Language &universe) {
    using Op = RationalExpr::Op;
    switch (e.op) {
    case Op::Empty:
        return Language(universe.fragment_ptr(), universe.max_len());
    case Op::Atom: {
        Language a(universe.fragment_ptr(), universe.max_len());
        a.insert(*e.atom);
        return down_closure(a, universe);
    }
    case Op::Union:
        return lang_union(eval_rational(*e.lhs, universe), eval_rational(*e.rhs, universe));
    case Op::Concat:
        return lang_concat(eval_rational(*e.lhs, universe), eval_rational(*e.rhs, universe), universe);
    case Op::Plus:
        return lang_plus(eval_rational(*e.lhs, universe), universe);
    case Op::Star:
        return lang_star(eval_rational(*e.lhs, universe), universe);
    }
    return Language(universe.fragment_ptr(), universe.max_len());
}

}  // namespace pshaut
