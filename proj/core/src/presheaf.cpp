#include "pshaut/presheaf.hpp"

#include "union_find.hpp"

#include <algorithm>
#include <map>

namespace pshaut {

namespace {

std::uint64_t key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

bool cube_like(const DCatFragment &F) {
    if (F.kind() == FragmentKind::Precube || F.kind() == FragmentKind::LabeledPrecube)
        return true;
    if (F.kind() == FragmentKind::CounterProduct && F.base_fragment())
        return cube_like(*F.base_fragment());
    return false;
}

}  // namespace

PresheafAutomaton::PresheafAutomaton(FragmentPtr frag) : frag_(std::move(frag)) {
    fiber_.assign(frag_->num_objects(), {});
}

std::optional<ElemId> PresheafAutomaton::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

ElemId PresheafAutomaton::by_name(std::string_view name) const {
    if (auto e = find(name))
        return *e;
    throw Error(ErrorCode::UnknownName, "element '" + std::string(name) + "'");
}

ElemId PresheafAutomaton::act(MorId phi, ElemId x) const {
    const DCatFragment &F = *frag_;
    if (F.tgt(phi) != base(x))
        throw Error(ErrorCode::NotComposable,
                    "cannot act by " + F.name(phi) + " on " + name(x) + " over " + F.name(base(x)));
    return act_[x.idx()][F.into_position(phi)];
}

std::span<const ElemId> PresheafAutomaton::co_act(MorId phi, ElemId y) const {
    auto it = co_act_.find(key(phi.value, y.value));
    if (it == co_act_.end())
        return {};
    return it->second;
}

void PresheafAutomaton::index() {
    const DCatFragment &F = *frag_;
    fiber_.assign(F.num_objects(), {});
    by_name_.clear();
    co_act_.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        fiber_[elems_[i].base.idx()].push_back(x);
        if (!by_name_.emplace(elems_[i].name, x).second)
            throw Error(ErrorCode::InvalidInput, "duplicate element '" + elems_[i].name + "'");
    }
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        auto into = F.into(elems_[i].base);
        for (std::size_t p = 0; p < into.size(); ++p) {
            ElemId y = act_[i][p];
            if (y.valid())
                co_act_[key(into[p].value, y.value)].push_back(x);
        }
    }
    is_start_.assign(elems_.size(), false);
    is_accept_.assign(elems_.size(), false);
    std::sort(start_.begin(), start_.end());
    start_.erase(std::unique(start_.begin(), start_.end()), start_.end());
    std::sort(accept_.begin(), accept_.end());
    accept_.erase(std::unique(accept_.begin(), accept_.end()), accept_.end());
    for (ElemId s : start_)
        is_start_.at(s.idx()) = true;
    for (ElemId a : accept_)
        is_accept_.at(a.idx()) = true;
}

PresheafAutomaton PresheafAutomaton::with_marks(std::vector<ElemId> start, std::vector<ElemId> accept) const {
    PresheafAutomaton out = *this;
    out.start_ = std::move(start);
    out.accept_ = std::move(accept);
    out.index();
    return out;
}

PresheafAutomaton PresheafAutomaton::with_names(std::vector<std::string> names) const {
    if (names.size() != elems_.size())
        throw Error(ErrorCode::InvalidInput, "with_names: wrong number of names");
    PresheafAutomaton out = *this;
    for (std::size_t i = 0; i < names.size(); ++i)
        out.elems_[i].name = std::move(names[i]);
    out.index();
    return out;
}

// ---------------------------------------------------------------- builder

AutomatonBuilder::AutomatonBuilder(FragmentPtr frag) : X_(std::move(frag)) {}

AutomatonBuilder AutomatonBuilder::from(const PresheafAutomaton &X) {
    AutomatonBuilder b(X.frag_);
    b.X_ = X;
    b.starts_ = X.start_;
    b.accepts_ = X.accept_;
    return b;
}

ElemId AutomatonBuilder::add_element(std::string name, ObjId base) {
    if (!base.valid() || base.idx() >= X_.frag_->num_objects())
        throw Error(ErrorCode::InvalidInput, "element '" + name + "' over unknown object");
    ElemId id = make_id<ElemId>(X_.elems_.size());
    X_.by_name_[name] = id;
    X_.elems_.push_back({std::move(name), base});
    X_.act_.emplace_back(X_.frag_->into(base).size(), ElemId());
    return id;
}

std::optional<ElemId> AutomatonBuilder::find(std::string_view name) const {
    auto it = X_.by_name_.find(std::string(name));
    if (it == X_.by_name_.end())
        return std::nullopt;
    return it->second;
}

void AutomatonBuilder::set_act(MorId phi, ElemId x, ElemId y) {
    const DCatFragment &F = *X_.frag_;
    if (F.tgt(phi) != X_.elems_.at(x.idx()).base)
        throw Error(ErrorCode::NotComposable, "act(" + F.name(phi) + ", " + X_.elems_[x.idx()].name +
                                                  "): element lies over " + F.name(X_.elems_[x.idx()].base));
    if (y.valid() && y.idx() >= X_.elems_.size())
        throw Error(ErrorCode::InvalidInput, "act target out of range");
    X_.act_[x.idx()][F.into_position(phi)] = y;
}

PresheafAutomaton AutomatonBuilder::build(bool derive) {
    const DCatFragment &F = *X_.frag_;
    if (derive) {
        for (std::size_t i = 0; i < X_.elems_.size(); ++i) {
            ElemId x = make_id<ElemId>(i);
            auto into = F.into(X_.elems_[i].base);
            for (std::size_t p = 0; p < into.size(); ++p) {
                if (X_.act_[i][p].valid())
                    continue;
                MorId phi = into[p];
                if (F.is_identity(phi)) {
                    X_.act_[i][p] = x;
                    continue;
                }
                const auto &word = F.generator_word(phi);
                if (!word || word->size() < 2)
                    continue;
                ElemId y = x;
                for (MorId g : *word) {
                    y = X_.act_[y.idx()][F.into_position(g)];
                    if (!y.valid())
                        break;
                }
                X_.act_[i][p] = y;
            }
        }
    }
    X_.start_ = starts_;
    X_.accept_ = accepts_;
    X_.index();
    return X_;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_automaton(const PresheafAutomaton &X) {
    ValidationReport rep;
    const DCatFragment &F = X.fragment();
    const bool partial_ok = F.window().composites_truncated;
    const char *law = cube_like(F) ? "cubical-identity" : "functoriality";
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        auto into = F.into(X.base(x));
        for (std::size_t p = 0; p < into.size(); ++p) {
            ElemId y = X.action_row(x)[p];
            if (!y.valid()) {
                if (!partial_ok)
                    rep.add("partial-action", {X.name(x), F.name(into[p])});
                continue;
            }
            if (X.base(y) != F.src(into[p]))
                rep.add("base", {X.name(x), F.name(into[p]), X.name(y)});
            if (F.is_identity(into[p]) && y != x)
                rep.add("identity", {X.name(x), F.name(into[p])});
        }
    }
    if (!rep.ok())
        return rep;
    for (const auto &e : F.compose_entries()) {
        if (F.is_identity(e.g) || F.is_identity(e.f))
            continue;
        for (ElemId x : X.fiber(F.tgt(e.g))) {
            ElemId a = X.act(e.g, x);
            if (!a.valid())
                continue;
            ElemId b = X.act(e.f, a);
            ElemId c = X.act(e.gf, x);
            if (b.valid() && c.valid() && b != c)
                rep.add(law, {X.name(x), F.name(e.g), F.name(e.f)});
            else if (b.valid() != c.valid() && !partial_ok)
                rep.add("partial-action", {X.name(x), F.name(e.g), F.name(e.f)});
        }
    }
    return rep;
}

ElemId act_path(const PresheafAutomaton &X, const std::vector<MorId> &word, ElemId x) {
    const DCatFragment &F = X.fragment();
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (F.src(word[i]) != F.tgt(word[i + 1]))
            throw Error(ErrorCode::NotComposable, F.name(word[i]) + " after " + F.name(word[i + 1]));
    ElemId y = x;
    for (MorId g : word) {
        y = X.act(g, y);
        if (!y.valid())
            throw Error(ErrorCode::NotInWindow, "action of " + F.name(g) + " leaves the window");
    }
    return y;
}

// ---------------------------------------------------------------- constructions

PresheafAutomaton representable(const FragmentPtr &frag, ObjId u) {
    const DCatFragment &F = *frag;
    AutomatonBuilder b(frag);
    std::map<MorId, ElemId> of;
    for (MorId psi : F.into(u))
        of[psi] = b.add_element(F.name(psi), F.src(psi));
    for (MorId psi : F.into(u)) {
        for (MorId phi : F.into(F.src(psi))) {
            auto c = F.try_compose(psi, phi);
            if (c)
                b.set_act(phi, of[psi], of.at(*c));
        }
    }
    return b.build(false);
}

PresheafAutomaton terminal_automaton(const FragmentPtr &frag) {
    const DCatFragment &F = *frag;
    AutomatonBuilder b(frag);
    for (std::size_t o = 0; o < F.num_objects(); ++o)
        b.add_element(F.name(make_id<ObjId>(o)), make_id<ObjId>(o));
    for (std::size_t m = 0; m < F.num_morphisms(); ++m) {
        MorId phi = make_id<MorId>(m);
        b.set_act(phi, make_id<ElemId>(F.tgt(phi).idx()), make_id<ElemId>(F.src(phi).idx()));
    }
    return b.build(false);
}

PresheafAutomaton coproduct(const FragmentPtr &frag, const std::vector<const PresheafAutomaton *> &xs) {
    AutomatonBuilder b(frag);
    std::vector<std::size_t> offset;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (xs[k]->fragment_ptr() != frag)
            throw Error(ErrorCode::InvalidInput, "coproduct over different fragments");
        offset.push_back(b.size());
        for (std::size_t i = 0; i < xs[k]->size(); ++i) {
            ElemId x = make_id<ElemId>(i);
            b.add_element(std::to_string(k) + "/" + xs[k]->name(x), xs[k]->base(x));
        }
    }
    const DCatFragment &F = *frag;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const PresheafAutomaton &X = *xs[k];
        for (std::size_t i = 0; i < X.size(); ++i) {
            ElemId x = make_id<ElemId>(i);
            ElemId xo = make_id<ElemId>(offset[k] + i);
            auto into = F.into(X.base(x));
            for (std::size_t p = 0; p < into.size(); ++p) {
                ElemId y = X.action_row(x)[p];
                if (y.valid())
                    b.set_act(into[p], xo, make_id<ElemId>(offset[k] + y.idx()));
            }
        }
        for (ElemId s : X.start())
            b.add_start(make_id<ElemId>(offset[k] + s.idx()));
        for (ElemId a : X.accept())
            b.add_accept(make_id<ElemId>(offset[k] + a.idx()));
    }
    return b.build(false);
}

ValidationReport validate_presentation(const Presentation &pres, const DCatFragment &F) {
    ValidationReport rep;
    if (pres.G_ob.size() != pres.objects.size() || pres.G_mor.size() != pres.morphisms.size()) {
        rep.add("presentation-shape", {"G does not cover the shape"});
        return rep;
    }
    for (std::size_t k = 0; k < pres.morphisms.size(); ++k) {
        const auto &m = pres.morphisms[k];
        if (m.src >= pres.objects.size() || m.tgt >= pres.objects.size()) {
            rep.add("presentation-shape", {m.name});
            continue;
        }
        MorId g = pres.G_mor[k];
        if (F.src(g) != pres.G_ob[m.src] || F.tgt(g) != pres.G_ob[m.tgt])
            rep.add("presentation-typing", {m.name, F.name(g)});
    }
    auto eval = [&](const std::vector<std::size_t> &w) -> std::optional<MorId> {
        if (w.empty())
            return std::nullopt;
        MorId acc = pres.G_mor.at(w.back());
        for (std::size_t i = w.size() - 1; i-- > 0;) {
            auto c = F.try_compose(pres.G_mor.at(w[i]), acc);
            if (!c)
                return std::nullopt;
            acc = *c;
        }
        return acc;
    };
    for (const auto &[l, r] : pres.relations) {
        try {
            auto a = eval(l), b = eval(r);
            if (!a || !b || *a != *b)
                rep.add("presentation-relation", {std::to_string(l.size()), std::to_string(r.size())});
        } catch (const Error &) {
            rep.add("presentation-relation", {"not composable"});
        }
    }
    return rep;
}

Materialized materialize(const Presentation &pres, const FragmentPtr &frag, OverflowPolicy policy) {
    const DCatFragment &F = *frag;
    auto rep = validate_presentation(pres, F);
    for (const auto &v : rep.violations)
        if (v.kind != "presentation-relation")
            throw Error(ErrorCode::InvalidInput, "presentation: " + v.kind);

    const std::size_t ne = pres.objects.size();
    std::vector<std::size_t> offset(ne + 1, 0);
    for (std::size_t e = 0; e < ne; ++e)
        offset[e + 1] = offset[e] + F.into(pres.G_ob[e]).size();
    const std::size_t np = offset[ne];
    auto pair_id = [&](std::size_t e, MorId psi) { return offset[e] + F.into_position(psi); };

    detail::UnionFind uf(np);
    std::vector<bool> escaped(np, false);
    for (std::size_t k = 0; k < pres.morphisms.size(); ++k) {
        const auto &sm = pres.morphisms[k];
        MorId g = pres.G_mor[k];
        for (MorId psi : F.into(pres.G_ob[sm.src])) {
            auto partner = F.try_compose(g, psi);
            std::size_t a = pair_id(sm.src, psi);
            if (!partner) {
                if (policy == OverflowPolicy::Strict)
                    throw Error(ErrorCode::WindowOverflow, F.name(g) + " after " + F.name(psi));
                escaped[a] = true;
                continue;
            }
            uf.unite(a, pair_id(sm.tgt, *partner));
        }
    }
    // pair -> (shape object, morphism)
    std::vector<std::pair<std::size_t, MorId>> pair_of(np);
    for (std::size_t e = 0; e < ne; ++e) {
        auto into = F.into(pres.G_ob[e]);
        for (std::size_t p = 0; p < into.size(); ++p)
            pair_of[offset[e] + p] = {e, into[p]};
    }
    std::vector<bool> class_escaped(np, false);
    for (std::size_t p = 0; p < np; ++p)
        if (escaped[p])
            class_escaped[uf.find(p)] = true;
    // classes in order of their least pair
    std::vector<ElemId> elem_of_root(np, ElemId());
    Materialized out;
    AutomatonBuilder b(frag);
    for (std::size_t p = 0; p < np; ++p) {
        std::size_t r = uf.find(p);
        if (class_escaped[r] || elem_of_root[r].valid())
            continue;
        auto [e, psi] = pair_of[p];
        elem_of_root[r] = b.add_element(pres.objects[e] + ":" + F.name(psi), F.src(psi));
        out.representative.push_back(pair_of[p]);
    }
    for (std::size_t i = 0; i < out.representative.size(); ++i) {
        auto [e, psi] = out.representative[i];
        ElemId x = make_id<ElemId>(i);
        for (MorId phi : F.into(F.src(psi))) {
            auto c = F.try_compose(psi, phi);
            if (!c) {
                if (policy == OverflowPolicy::Strict)
                    throw Error(ErrorCode::WindowOverflow, F.name(psi) + " after " + F.name(phi));
                continue;
            }
            ElemId y = elem_of_root[uf.find(pair_id(e, *c))];
            if (y.valid())
                b.set_act(phi, x, y);
        }
    }
    out.automaton = b.build(false);
    out.unit.resize(ne);
    for (std::size_t e = 0; e < ne; ++e)
        out.unit[e] = elem_of_root[uf.find(pair_id(e, F.identity(pres.G_ob[e])))];
    return out;
}

Presentation elements_presentation(const PresheafAutomaton &X) {
    const DCatFragment &F = X.fragment();
    Presentation pres;
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        pres.objects.push_back(X.name(x));
        pres.G_ob.push_back(X.base(x));
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
        ElemId x = make_id<ElemId>(i);
        for (MorId phi : F.into(X.base(x))) {
            if (!F.morphism(phi).is_generator)
                continue;
            ElemId y = X.act(phi, x);
            if (!y.valid())
                continue;
            pres.morphisms.push_back({F.name(phi) + "@" + X.name(x), y.idx(), i});
            pres.G_mor.push_back(phi);
        }
    }
    return pres;
}

}  // namespace pshaut
