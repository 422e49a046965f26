#include "pshaut/path.hpp"

#include "pshaut/track.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace pshaut {

std::string shape_string(const Path &p) {
    std::string s;
    for (StepKind k : p.shape)
        s += static_cast<char>(k);
    return s;
}

std::string path_to_string(const PresheafAutomaton &X, const Path &p) {
    const DCatFragment &F = X.fragment();
    std::string s = "(" + X.name(p.nodes.front());
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
        s += p.shape[k] == StepKind::Down ? " v" : (p.shape[k] == StepKind::Iso ? " ~" : " ^");
        s += F.name(p.steps[k]) + " " + X.name(p.nodes[k + 1]);
    }
    return s + ")";
}

const char *verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

Path constant_path(ElemId x) {
    Path p;
    p.nodes.push_back(x);
    return p;
}

Path step_path(const PresheafAutomaton &, ElemId from, MorId phi, ElemId to, StepKind kind) {
    Path p;
    p.shape = {kind};
    p.nodes = {from, to};
    p.steps = {phi};
    return p;
}

ValidationReport validate_path(const PresheafAutomaton &X, const Path &p) {
    ValidationReport rep;
    const DCatFragment &F = X.fragment();
    if (p.nodes.size() != p.shape.size() + 1 || p.steps.size() != p.shape.size()) {
        rep.add("path-length", {std::to_string(p.nodes.size()), std::to_string(p.steps.size())});
        return rep;
    }
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
        const std::string pos = std::to_string(k);
        MorId phi = p.steps[k];
        ElemId x = p.nodes[k], y = p.nodes[k + 1];
        if (!x.valid() || !y.valid() || x.idx() >= X.size() || y.idx() >= X.size()) {
            rep.add("step", {pos, "unknown node"});
            continue;
        }
        switch (p.shape[k]) {
        case StepKind::Up:
        case StepKind::Iso: {
            if (F.src(phi) != X.base(x) || F.tgt(phi) != X.base(y)) {
                rep.add("step", {pos, "typing", F.name(phi)});
                continue;
            }
            if (p.shape[k] == StepKind::Up && !F.is_for(phi))
                rep.add("step", {pos, "polarity", F.name(phi)});
            if (p.shape[k] == StepKind::Iso) {
                auto inv = F.inverse(phi);
                if (!inv || !F.is_for(phi) || !F.is_back(*inv))
                    rep.add("step", {pos, "not an invertible step", F.name(phi)});
            }
            if (X.act(phi, y) != x)
                rep.add("step", {pos, "action", F.name(phi)});
            break;
        }
        case StepKind::Down: {
            if (F.src(phi) != X.base(y) || F.tgt(phi) != X.base(x)) {
                rep.add("step", {pos, "typing", F.name(phi)});
                continue;
            }
            if (!F.is_back(phi))
                rep.add("step", {pos, "polarity", F.name(phi)});
            if (X.act(phi, x) != y)
                rep.add("step", {pos, "action", F.name(phi)});
            break;
        }
        }
    }
    return rep;
}

Path concat_paths(const Path &a, const Path &b) {
    if (a.target() != b.source())
        throw Error(ErrorCode::EndpointMismatch, "concatenation of paths with different endpoints");
    Path c = a;
    c.shape.insert(c.shape.end(), b.shape.begin(), b.shape.end());
    c.steps.insert(c.steps.end(), b.steps.begin(), b.steps.end());
    c.nodes.insert(c.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
    return c;
}

std::vector<Path> steps_of(const Path &p) {
    std::vector<Path> out;
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
        Path s;
        s.shape = {p.shape[k]};
        s.nodes = {p.nodes[k], p.nodes[k + 1]};
        s.steps = {p.steps[k]};
        out.push_back(std::move(s));
    }
    return out;
}

Path project(const PresheafAutomaton &X, const Path &p) {
    Path q = p;
    for (auto &n : q.nodes)
        n = make_id<ElemId>(X.base(n).idx());
    return q;
}

Path normalize_path(const DCatFragment &F, const Path &p) {
    Path q;
    q.nodes.push_back(p.nodes.front());
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
        if (F.is_identity(p.steps[k]))
            continue;
        q.shape.push_back(p.shape[k]);
        q.steps.push_back(p.steps[k]);
        q.nodes.push_back(p.nodes[k + 1]);
    }
    return q;
}

namespace {

struct Walker {
    const PresheafAutomaton &X;
    std::size_t maxlen;
    bool accepting_only;
    const std::function<bool(const Path &)> &visit;
    Path cur;
    bool stop = false;

    void run() {
        ElemId x = cur.nodes.back();
        if (!accepting_only || X.is_accept(x)) {
            if (!visit(cur)) {
                stop = true;
                return;
            }
        }
        if (cur.steps.size() >= maxlen)
            return;
        const DCatFragment &F = X.fragment();
        for (MorId phi : F.out_of(X.base(x))) {
            if (F.is_identity(phi) || !F.is_for(phi))
                continue;
            for (ElemId y : X.co_act(phi, x)) {
                push(StepKind::Up, phi, y);
                run();
                pop();
                if (stop)
                    return;
            }
        }
        for (MorId phi : F.into(X.base(x))) {
            if (F.is_identity(phi) || !F.is_back(phi))
                continue;
            ElemId y = X.act(phi, x);
            if (!y.valid())
                continue;
            push(StepKind::Down, phi, y);
            run();
            pop();
            if (stop)
                return;
        }
    }
    void push(StepKind k, MorId phi, ElemId y) {
        cur.shape.push_back(k);
        cur.steps.push_back(phi);
        cur.nodes.push_back(y);
    }
    void pop() {
        cur.shape.pop_back();
        cur.steps.pop_back();
        cur.nodes.pop_back();
    }
};

}  // namespace

void for_each_path(const PresheafAutomaton &X, const std::vector<ElemId> &from, std::size_t maxlen,
                   bool accepting_only, const std::function<bool(const Path &)> &visit) {
    std::vector<ElemId> starts = from;
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (ElemId s : starts) {
        if (accepting_only && !X.is_start(s))
            continue;
        Walker w{X, maxlen, accepting_only, visit, constant_path(s)};
        w.run();
        if (w.stop)
            return;
    }
}

std::vector<Path> enumerate_paths(const PresheafAutomaton &X, const std::vector<ElemId> &from,
                                  std::size_t maxlen, bool accepting_only) {
    std::vector<Path> out;
    for_each_path(X, from, maxlen, accepting_only, [&](const Path &p) {
        out.push_back(p);
        return true;
    });
    return out;
}

namespace {

void lift_rec(const PresheafAutomaton &X, const Path &omega, Path &cur, const std::function<void(const Path &)> &emit) {
    std::size_t k = cur.steps.size();
    if (k == omega.steps.size()) {
        emit(cur);
        return;
    }
    MorId phi = omega.steps[k];
    ElemId x = cur.nodes.back();
    auto go = [&](ElemId y) {
        cur.shape.push_back(omega.shape[k]);
        cur.steps.push_back(phi);
        cur.nodes.push_back(y);
        lift_rec(X, omega, cur, emit);
        cur.shape.pop_back();
        cur.steps.pop_back();
        cur.nodes.pop_back();
    };
    if (omega.shape[k] == StepKind::Down) {
        ElemId y = X.act(phi, x);
        if (y.valid())
            go(y);
    } else {
        std::vector<ElemId> ys(X.co_act(phi, x).begin(), X.co_act(phi, x).end());
        for (ElemId y : ys)
            go(y);
    }
}

}  // namespace

std::vector<Path> lifts(const PresheafAutomaton &X, const Path &omega) {
    std::vector<Path> out;
    ObjId o0 = make_id<ObjId>(omega.nodes.front().idx());
    for (ElemId x : X.fiber(o0)) {
        Path cur = constant_path(x);
        lift_rec(X, omega, cur, [&](const Path &p) { out.push_back(p); });
    }
    return out;
}

std::size_t count_lifts(const PresheafAutomaton &X, const Path &omega) {
    std::size_t n = 0;
    ObjId o0 = make_id<ObjId>(omega.nodes.front().idx());
    for (ElemId x : X.fiber(o0)) {
        Path cur = constant_path(x);
        lift_rec(X, omega, cur, [&](const Path &) { ++n; });
    }
    return n;
}

// ---------------------------------------------------------------- refinement

namespace {

// morphism in the codomain chain from position j0 to j1 (j0 <= j1) realising a
// domain step of kind k; nullopt if the segment does not fit
std::optional<MorId> segment_morphism(const DCatFragment &F, const Path &b, std::size_t j0, std::size_t j1,
                                      StepKind k, ObjId base_j0) {
    if (j0 == j1)
        return F.identity(base_j0);
    for (std::size_t j = j0; j < j1; ++j) {
        StepKind c = b.shape[j];
        if (k == StepKind::Up && c == StepKind::Down)
            return std::nullopt;
        if (k == StepKind::Down && c == StepKind::Up)
            return std::nullopt;
        if (k == StepKind::Iso && c != StepKind::Iso)
            return std::nullopt;
    }
    if (k != StepKind::Down) {
        MorId acc = b.steps[j0];
        for (std::size_t j = j0 + 1; j < j1; ++j) {
            auto c = F.try_compose(b.steps[j], acc);
            if (!c)
                return std::nullopt;
            acc = *c;
        }
        return acc;
    }
    auto back_step = [&](std::size_t j) -> std::optional<MorId> {
        if (b.shape[j] == StepKind::Down)
            return b.steps[j];
        return F.inverse(b.steps[j]);
    };
    auto acc = back_step(j0);
    for (std::size_t j = j0 + 1; j < j1 && acc; ++j) {
        auto s = back_step(j);
        if (!s)
            return std::nullopt;
        acc = F.try_compose(*acc, *s);
    }
    return acc;
}

void morph_rec(const PresheafAutomaton &X, const Path &a, const Path &b, std::vector<std::size_t> &F_map,
               std::vector<PathMorphism> &out) {
    const DCatFragment &F = X.fragment();
    std::size_t k = F_map.size();  // next domain position to place
    const std::size_t n = a.steps.size(), m = b.steps.size();
    if (k == n + 1) {
        out.push_back({F_map});
        return;
    }
    std::size_t lo = F_map.back();
    std::size_t first = k == n ? m : lo;
    for (std::size_t j = first; j <= m; ++j) {
        if (a.nodes[k] != b.nodes[j])
            continue;
        ObjId base_lo = X.base(b.nodes[lo]);
        auto seg = segment_morphism(F, b, lo, j, a.shape[k - 1], base_lo);
        if (!seg || *seg != a.steps[k - 1])
            continue;
        F_map.push_back(j);
        morph_rec(X, a, b, F_map, out);
        F_map.pop_back();
    }
}

}  // namespace

std::vector<PathMorphism> path_morphisms(const PresheafAutomaton &X, const Path &a, const Path &b) {
    std::vector<PathMorphism> out;
    if (a.nodes.front() != b.nodes.front() || a.nodes.back() != b.nodes.back())
        return out;
    if (a.steps.empty()) {
        if (b.steps.empty())
            out.push_back({{0}});
        return out;
    }
    std::vector<std::size_t> F_map{0};
    morph_rec(X, a, b, F_map, out);
    return out;
}

bool refines(const PresheafAutomaton &X, const Path &a, const Path &b) {
    return !path_morphisms(X, a, b).empty();
}

// ---------------------------------------------------------------- equivalence

namespace {

std::string path_key(const Path &p) {
    std::string s = shape_string(p);
    s += '|';
    for (ElemId n : p.nodes)
        s += std::to_string(n.value) + ',';
    s += '|';
    for (MorId m : p.steps)
        s += std::to_string(m.value) + ',';
    return s;
}

Path replace(const Path &p, std::size_t k, std::size_t len, const std::vector<StepKind> &shape,
             const std::vector<MorId> &steps, const std::vector<ElemId> &inner) {
    Path q;
    q.shape.assign(p.shape.begin(), p.shape.begin() + static_cast<std::ptrdiff_t>(k));
    q.steps.assign(p.steps.begin(), p.steps.begin() + static_cast<std::ptrdiff_t>(k));
    q.nodes.assign(p.nodes.begin(), p.nodes.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    q.shape.insert(q.shape.end(), shape.begin(), shape.end());
    q.steps.insert(q.steps.end(), steps.begin(), steps.end());
    q.nodes.insert(q.nodes.end(), inner.begin(), inner.end());
    q.nodes.push_back(p.nodes[k + len]);
    q.shape.insert(q.shape.end(), p.shape.begin() + static_cast<std::ptrdiff_t>(k + len), p.shape.end());
    q.steps.insert(q.steps.end(), p.steps.begin() + static_cast<std::ptrdiff_t>(k + len), p.steps.end());
    q.nodes.insert(q.nodes.end(), p.nodes.begin() + static_cast<std::ptrdiff_t>(k + len) + 1, p.nodes.end());
    return q;
}

// all paths one elementary move away (identity steps normalised away)
std::vector<Path> neighbours(const PresheafAutomaton &X, const Path &p) {
    const DCatFragment &F = X.fragment();
    std::vector<Path> out;
    auto emit = [&](Path q) { out.push_back(normalize_path(F, q)); };
    const std::size_t n = p.steps.size();
    // merge
    for (std::size_t k = 0; k + 1 < n; ++k) {
        StepKind s = p.shape[k];
        if (s != p.shape[k + 1])
            continue;
        std::optional<MorId> c;
        if (s == StepKind::Down)
            c = F.try_compose(p.steps[k], p.steps[k + 1]);
        else
            c = F.try_compose(p.steps[k + 1], p.steps[k]);
        if (!c)
            continue;
        emit(replace(p, k, 2, {s}, {*c}, {}));
    }
    // split
    for (std::size_t k = 0; k < n; ++k) {
        MorId phi = p.steps[k];
        ElemId x = p.nodes[k], y = p.nodes[k + 1];
        if (p.shape[k] == StepKind::Up) {
            for (MorId chi : F.out_of(F.src(phi))) {
                if (F.is_identity(chi) || !F.is_for(chi))
                    continue;
                for (MorId psi : F.hom(F.tgt(chi), F.tgt(phi))) {
                    if (F.is_identity(psi) || !F.is_for(psi))
                        continue;
                    auto c = F.try_compose(psi, chi);
                    if (!c || *c != phi)
                        continue;
                    ElemId z = X.act(psi, y);
                    if (!z.valid())
                        continue;
                    emit(replace(p, k, 1, {StepKind::Up, StepKind::Up}, {chi, psi}, {z}));
                }
            }
        } else if (p.shape[k] == StepKind::Down) {
            // phi: base y -> base x factors as phi1∘phi2 with phi1 into base x
            for (MorId phi1 : F.into(F.tgt(phi))) {
                if (F.is_identity(phi1) || !F.is_back(phi1))
                    continue;
                for (MorId phi2 : F.hom(F.src(phi), F.src(phi1))) {
                    if (F.is_identity(phi2) || !F.is_back(phi2))
                        continue;
                    auto c = F.try_compose(phi1, phi2);
                    if (!c || *c != phi)
                        continue;
                    ElemId z = X.act(phi1, x);
                    if (!z.valid())
                        continue;
                    emit(replace(p, k, 1, {StepKind::Down, StepKind::Down}, {phi1, phi2}, {z}));
                }
            }
        }
    }
    // flip invertible steps between I and S/T
    for (std::size_t k = 0; k < n; ++k) {
        MorId phi = p.steps[k];
        auto inv = F.inverse(phi);
        if (!inv || F.is_identity(phi))
            continue;
        if (p.shape[k] == StepKind::Iso) {
            emit(replace(p, k, 1, {StepKind::Up}, {phi}, {}));
            if (F.is_back(*inv))
                emit(replace(p, k, 1, {StepKind::Down}, {*inv}, {}));
        } else if (p.shape[k] == StepKind::Up && F.is_back(*inv)) {
            emit(replace(p, k, 1, {StepKind::Iso}, {phi}, {}));
        } else if (p.shape[k] == StepKind::Down && F.is_for(*inv)) {
            emit(replace(p, k, 1, {StepKind::Iso}, {*inv}, {}));
        }
    }
    return out;
}

}  // namespace

EquivResult path_equivalent(const PresheafAutomaton &X, const Path &a, const Path &b, std::size_t budget) {
    const DCatFragment &F = X.fragment();
    EquivResult res;
    if (a.source() != b.source() || a.target() != b.target()) {
        res.verdict = Verdict::No;
        res.reason = "endpoints differ";
        return res;
    }
    Path na = normalize_path(F, a), nb = normalize_path(F, b);
    if (na == nb) {
        res.verdict = Verdict::Yes;
        res.reason = "equal up to identity steps";
        return res;
    }
    TrackObject ta = track_of(X.fragment_ptr(), project(X, na));
    TrackObject tb = track_of(X.fragment_ptr(), project(X, nb));
    if (canonical_certificate(ta) != canonical_certificate(tb)) {
        res.verdict = Verdict::No;
        res.reason = "tracks non-isomorphic";
        return res;
    }
    const std::size_t state_cap = 200000;
    const std::string target = path_key(nb);
    std::unordered_set<std::string> seen{path_key(na)};
    std::deque<std::pair<Path, std::size_t>> queue{{na, 0}};
    while (!queue.empty()) {
        auto [p, d] = queue.front();
        queue.pop_front();
        if (d >= budget)
            continue;
        for (Path &q : neighbours(X, p)) {
            std::string k = path_key(q);
            if (k == target) {
                res.verdict = Verdict::Yes;
                res.reason = "connected by elementary moves";
                res.moves = d + 1;
                return res;
            }
            if (seen.size() >= state_cap)
                continue;
            if (seen.insert(k).second)
                queue.emplace_back(std::move(q), d + 1);
        }
    }
    res.verdict = Verdict::Unknown;
    res.reason = "budget exhausted";
    return res;
}

}  // namespace pshaut
