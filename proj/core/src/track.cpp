#include "pshaut/track.hpp"

#include "pshaut/morphsearch.hpp"
#include "union_find.hpp"

#include <algorithm>
#include <map>

namespace pshaut {

TrackObject track_of(const FragmentPtr &frag, const Path &omega) {
    const DCatFragment &F = *frag;
    const std::size_t n = omega.steps.size();
    if (omega.nodes.size() != n + 1 || omega.shape.size() != n)
        throw Error(ErrorCode::InvalidInput, "malformed path");
    Presentation pres;
    for (std::size_t i = 0; i <= n; ++i) {
        pres.objects.push_back(std::to_string(i));
        pres.G_ob.push_back(make_id<ObjId>(omega.nodes[i].idx()));
    }
    for (std::size_t k = 0; k < n; ++k) {
        MorId phi = omega.steps[k];
        std::string nm = std::to_string(k);
        switch (omega.shape[k]) {
        case StepKind::Up:
            if (!F.is_for(phi))
                throw Error(ErrorCode::PolarityMismatch, "upstep along " + F.name(phi));
            pres.morphisms.push_back({nm, k, k + 1});
            pres.G_mor.push_back(phi);
            break;
        case StepKind::Down:
            if (!F.is_back(phi))
                throw Error(ErrorCode::PolarityMismatch, "downstep along " + F.name(phi));
            pres.morphisms.push_back({nm, k + 1, k});
            pres.G_mor.push_back(phi);
            break;
        case StepKind::Iso: {
            auto inv = F.inverse(phi);
            if (!inv)
                throw Error(ErrorCode::PolarityMismatch, "invertible step along " + F.name(phi));
            pres.morphisms.push_back({nm, k, k + 1});
            pres.G_mor.push_back(phi);
            pres.morphisms.push_back({nm + "'", k + 1, k});
            pres.G_mor.push_back(*inv);
            break;
        }
        }
    }
    auto rep = validate_presentation(pres, F);
    if (!rep.ok())
        throw Error(ErrorCode::InvalidInput, "path does not type-check in the fragment");
    Materialized m = materialize(pres, frag, OverflowPolicy::Strict);
    TrackObject t;
    t.automaton = m.automaton.with_marks({m.unit.front()}, {m.unit.back()});
    t.section = m.unit;
    return t;
}

TrackObject track_of_path(const PresheafAutomaton &X, const Path &alpha) {
    return track_of(X.fragment_ptr(), project(X, alpha));
}

TrackObject identity_track(const FragmentPtr &frag, ObjId u) {
    PresheafAutomaton rep = representable(frag, u);
    ElemId id = rep.by_name(frag->name(frag->identity(u)));
    TrackObject t;
    t.automaton = rep.with_marks({id}, {id});
    t.section = {id};
    return t;
}

TrackObject elementary_track(const FragmentPtr &frag, MorId phi, Direction dir) {
    const DCatFragment &F = *frag;
    if (dir == Direction::Up && !F.is_for(phi))
        throw Error(ErrorCode::PolarityMismatch, F.name(phi) + " is not a formorphism");
    if (dir == Direction::Down && !F.is_back(phi))
        throw Error(ErrorCode::PolarityMismatch, F.name(phi) + " is not a backmorphism");
    ObjId u = F.tgt(phi);
    PresheafAutomaton rep = representable(frag, u);
    ElemId e_phi = rep.by_name(F.name(phi));
    ElemId e_id = rep.by_name(F.name(F.identity(u)));
    TrackObject t;
    if (dir == Direction::Up) {
        t.automaton = rep.with_marks({e_phi}, {e_id});
        t.section = {e_phi, e_id};
    } else {
        t.automaton = rep.with_marks({e_id}, {e_phi});
        t.section = {e_id, e_phi};
    }
    return t;
}

TrackObject concat_tracks(const TrackObject &a, const TrackObject &b) {
    const PresheafAutomaton &A = a.automaton, &B = b.automaton;
    if (!same_fragment(A.fragment(), B.fragment()))
        throw Error(ErrorCode::InvalidInput, "concatenation over different fragments");
    const DCatFragment &F = A.fragment();
    if (a.tgt_obj() != b.src_obj())
        throw Error(ErrorCode::EndpointMismatch,
                    "target " + F.name(a.tgt_obj()) + " differs from source " + F.name(b.src_obj()));
    const std::size_t na = A.size(), nb = B.size();
    detail::UnionFind uf(na + nb);
    ObjId u = a.tgt_obj();
    for (MorId psi : F.into(u)) {
        ElemId x = A.act(psi, a.top());
        ElemId y = B.act(psi, b.bottom());
        if (x.valid() && y.valid())
            uf.unite(x.idx(), na + y.idx());
        else if (x.valid() != y.valid())
            throw Error(ErrorCode::WindowOverflow, "gluing along " + F.name(psi) + " leaves the window");
    }
    std::vector<ElemId> elem_of_root(na + nb);
    std::vector<std::size_t> reps;
    AutomatonBuilder bld(A.fragment_ptr());
    for (std::size_t i = 0; i < na + nb; ++i) {
        std::size_t r = uf.find(i);
        if (elem_of_root[r].valid())
            continue;
        std::string nm = i < na ? "L/" + A.name(make_id<ElemId>(i)) : "R/" + B.name(make_id<ElemId>(i - na));
        ObjId base = i < na ? A.base(make_id<ElemId>(i)) : B.base(make_id<ElemId>(i - na));
        elem_of_root[r] = bld.add_element(nm, base);
        reps.push_back(i);
    }
    for (std::size_t k = 0; k < reps.size(); ++k) {
        std::size_t i = reps[k];
        ElemId x = make_id<ElemId>(k);
        const PresheafAutomaton &S = i < na ? A : B;
        std::size_t off = i < na ? 0 : na;
        ElemId xs = make_id<ElemId>(i - off);
        auto into = F.into(S.base(xs));
        for (std::size_t p = 0; p < into.size(); ++p) {
            ElemId y = S.action_row(xs)[p];
            if (y.valid())
                bld.set_act(into[p], x, elem_of_root[uf.find(off + y.idx())]);
        }
    }
    bld.add_start(elem_of_root[uf.find(a.bottom().idx())]);
    bld.add_accept(elem_of_root[uf.find(na + b.top().idx())]);
    TrackObject t;
    t.automaton = bld.build(false);
    return t;
}

bool iso_tracks(const TrackObject &a, const TrackObject &b) {
    SearchOptions opts;
    opts.preserve_marks = true;
    opts.injective = true;
    opts.bijective = true;
    opts.limit = 1;
    return !find_morphisms(a.automaton, b.automaton, opts).empty();
}

// ---------------------------------------------------------------- certificates

namespace {

class Canonizer {
public:
    explicit Canonizer(const PresheafAutomaton &X) : X_(X), n_(X.size()) {
        const DCatFragment &F = X.fragment();
        in_.assign(n_, {});
        for (std::size_t i = 0; i < n_; ++i) {
            ElemId x = make_id<ElemId>(i);
            auto into = F.into(X.base(x));
            for (std::size_t p = 0; p < into.size(); ++p) {
                ElemId y = X.action_row(x)[p];
                if (y.valid() && !F.is_identity(into[p]))
                    in_[y.idx()].push_back({static_cast<long>(into[p].value), static_cast<long>(i)});
            }
        }
    }

    std::string run() {
        if (n_ == 0)
            return "empty";
        std::map<std::tuple<std::string, bool, bool>, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < n_; ++i) {
            ElemId x = make_id<ElemId>(i);
            groups[{X_.fragment().name(X_.base(x)), X_.is_start(x), X_.is_accept(x)}].push_back(i);
        }
        Cells cells;
        for (auto &[k, v] : groups)
            cells.push_back(v);
        search(cells);
        return best_;
    }

private:
    using Cells = std::vector<std::vector<std::size_t>>;

    Cells refine(Cells cells) const {
        std::vector<long> cell_of(n_);
        while (true) {
            for (std::size_t c = 0; c < cells.size(); ++c)
                for (std::size_t x : cells[c])
                    cell_of[x] = static_cast<long>(c);
            Cells next;
            for (const auto &cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::map<std::vector<long>, std::vector<std::size_t>> by_sig;
                for (std::size_t x : cell)
                    by_sig[signature(x, cell_of)].push_back(x);
                for (auto &[sig, v] : by_sig)
                    next.push_back(std::move(v));
            }
            if (next.size() == cells.size())
                return next;
            cells = std::move(next);
        }
    }

    std::vector<long> signature(std::size_t x, const std::vector<long> &cell_of) const {
        std::vector<long> sig;
        for (ElemId y : X_.action_row(make_id<ElemId>(x)))
            sig.push_back(y.valid() ? cell_of[y.idx()] : -1);
        sig.push_back(-2);
        std::vector<std::pair<long, long>> ins;
        for (auto [phi, z] : in_[x])
            ins.push_back({phi, cell_of[static_cast<std::size_t>(z)]});
        std::sort(ins.begin(), ins.end());
        for (auto [a, b] : ins) {
            sig.push_back(a);
            sig.push_back(b);
        }
        return sig;
    }

    std::string encode(const Cells &cells) const {
        std::vector<std::size_t> label(n_);
        for (std::size_t c = 0; c < cells.size(); ++c)
            label[cells[c][0]] = c;
        std::string s;
        const DCatFragment &F = X_.fragment();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            ElemId x = make_id<ElemId>(cells[c][0]);
            s += F.name(X_.base(x));
            s += X_.is_start(x) ? "<" : "";
            s += X_.is_accept(x) ? ">" : "";
            s += ':';
            bool first = true;
            for (ElemId y : X_.action_row(x)) {
                if (!first)
                    s += '.';
                first = false;
                s += y.valid() ? std::to_string(label[y.idx()]) : "-";
            }
            s += ';';
        }
        return s;
    }

    // returns the encoding of the first leaf below this node
    std::string search(Cells cells) {
        cells = refine(std::move(cells));
        std::size_t target = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].size() > 1) {
                target = c;
                break;
            }
        }
        if (target == cells.size()) {
            std::string enc = encode(cells);
            if (best_.empty() || enc < best_)
                best_ = enc;
            return enc;
        }
        std::vector<std::string> first_leaves;
        std::string first;
        for (std::size_t x : cells[target]) {
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != target) {
                    child.push_back(cells[c]);
                    continue;
                }
                child.push_back({x});
                std::vector<std::size_t> rest;
                for (std::size_t z : cells[c])
                    if (z != x)
                        rest.push_back(z);
                child.push_back(rest);
            }
            // an earlier sibling with the same first leaf is related to x by an
            // automorphism, so this subtree repeats its leaves
            std::string leaf = probe(child);
            if (std::find(first_leaves.begin(), first_leaves.end(), leaf) != first_leaves.end())
                continue;
            first_leaves.push_back(leaf);
            std::string got = search(std::move(child));
            if (first.empty())
                first = got;
        }
        return first;
    }

    // first leaf reached by always individualising the first element
    std::string probe(Cells cells) const {
        while (true) {
            cells = refine(std::move(cells));
            std::size_t target = cells.size();
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].size() > 1) {
                    target = c;
                    break;
                }
            }
            if (target == cells.size())
                return encode(cells);
            std::size_t x = cells[target][0];
            std::vector<std::size_t> rest(cells[target].begin() + 1, cells[target].end());
            cells[target] = {x};
            cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(target) + 1, rest);
        }
    }

    const PresheafAutomaton &X_;
    std::size_t n_;
    std::vector<std::vector<std::pair<long, long>>> in_;
    std::string best_;
};

}  // namespace

std::string canonical_certificate(const PresheafAutomaton &X) { return Canonizer(X).run(); }

std::string canonical_certificate(const TrackObject &t) { return canonical_certificate(t.automaton); }

std::vector<std::size_t> cells_by_dim(const PresheafAutomaton &X) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < X.size(); ++i) {
        std::size_t d = static_cast<std::size_t>(X.fragment().object(X.base(make_id<ElemId>(i))).dim);
        if (out.size() <= d)
            out.resize(d + 1, 0);
        ++out[d];
    }
    return out;
}

Path fragment_path(const DCatFragment &F, const std::vector<std::string> &objects,
                   const std::vector<std::string> &steps, const std::string &shape) {
    if (objects.size() != steps.size() + 1 || shape.size() != steps.size())
        throw Error(ErrorCode::InvalidInput, "fragment path: length mismatch");
    Path p;
    for (const auto &o : objects)
        p.nodes.push_back(make_id<ElemId>(F.object_by_name(o).idx()));
    for (std::size_t k = 0; k < steps.size(); ++k) {
        char c = shape[k];
        StepKind kind = c == 'T' ? StepKind::Down : (c == 'I' ? StepKind::Iso : StepKind::Up);
        if (c != 'S' && c != 'T' && c != 'I')
            throw Error(ErrorCode::InvalidInput, std::string("unknown step kind ") + c);
        ObjId tgt = make_id<ObjId>(kind == StepKind::Down ? p.nodes[k].idx() : p.nodes[k + 1].idx());
        p.shape.push_back(kind);
        p.steps.push_back(F.resolve_morphism(steps[k], tgt));
    }
    return p;
}

}  // namespace pshaut
