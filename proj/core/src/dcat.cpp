#include "pshaut/dcat.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace pshaut {

const char *error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotInWindow: return "NotInWindow";
    case ErrorCode::AlphabetContainsEmptySymbol: return "AlphabetContainsEmptySymbol";
    case ErrorCode::WindowOverflow: return "WindowOverflow";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::PolarityMismatch: return "PolarityMismatch";
    case ErrorCode::StarOnInfiniteObjects: return "StarOnInfiniteObjects";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::CubicalIdentityViolation: return "CubicalIdentityViolation";
    case ErrorCode::NotAVassImage: return "NotAVassImage";
    case ErrorCode::FullModeInfinite: return "FullModeInfinite";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Error";
}

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::string join_ints(const std::vector<int> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

std::string word_name(const std::vector<std::string> &word) {
    std::string s = "[";
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            s += ',';
        s += word[i];
    }
    return s + "]";
}

std::string counter_name(const std::vector<int> &v) { return join_ints(v); }

std::vector<std::vector<int>> counter_vectors(const std::vector<int> &bound) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(bound.size(), 0);
    while (true) {
        out.push_back(cur);
        // mixed-radix increment, last coordinate fastest
        int k = static_cast<int>(bound.size()) - 1;
        while (k >= 0 && cur[k] == bound[k]) {
            cur[k] = 0;
            --k;
        }
        if (k < 0)
            break;
        ++cur[k];
    }
    return out;
}

static std::size_t counter_index(const std::vector<int> &w, const std::vector<int> &bound) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < bound.size(); ++k)
        idx = idx * static_cast<std::size_t>(bound[k] + 1) + static_cast<std::size_t>(w[k]);
    return idx;
}

static bool within(const std::vector<int> &w, const std::vector<int> &bound) {
    for (std::size_t k = 0; k < bound.size(); ++k)
        if (w[k] < 0 || w[k] > bound[k])
            return false;
    return true;
}

std::string compose_patterns(const std::string &g, const std::string &f) {
    std::string out = g;
    std::size_t j = 0;
    for (char &c : out) {
        if (c == '*') {
            assert(j < f.size());
            c = f[j++];
        }
    }
    assert(j == f.size());
    return out;
}

std::string face_pattern(int n, int eps, const std::vector<int> &positions) {
    std::string p(static_cast<std::size_t>(n), '*');
    for (int i : positions) {
        if (i < 1 || i > n)
            throw Error(ErrorCode::UnknownName, "face index " + std::to_string(i) +
                                                    " out of range for dimension " + std::to_string(n));
        p[static_cast<std::size_t>(i - 1)] = eps ? '1' : '0';
    }
    return p;
}

// ---------------------------------------------------------------- fragment

std::optional<ObjId> DCatFragment::find_object(std::string_view name) const {
    auto it = obj_by_name_.find(std::string(name));
    if (it == obj_by_name_.end())
        return std::nullopt;
    return it->second;
}

std::optional<MorId> DCatFragment::find_morphism(std::string_view name) const {
    auto it = mor_by_name_.find(std::string(name));
    if (it == mor_by_name_.end())
        return std::nullopt;
    return it->second;
}

ObjId DCatFragment::object_by_name(std::string_view name) const {
    if (auto o = find_object(name))
        return *o;
    throw Error(ErrorCode::UnknownName, "object '" + std::string(name) + "'");
}

MorId DCatFragment::morphism_by_name(std::string_view name) const {
    if (auto m = find_morphism(name))
        return *m;
    throw Error(ErrorCode::UnknownName, "morphism '" + std::string(name) + "'");
}

// "d0_1", "d1_12", "d0_1,2"
static std::optional<std::pair<int, std::vector<int>>> parse_face_alias(std::string_view s) {
    if (s.size() < 4 || s[0] != 'd' || (s[1] != '0' && s[1] != '1') || s[2] != '_')
        return std::nullopt;
    int eps = s[1] - '0';
    std::vector<int> pos;
    std::string_view rest = s.substr(3);
    bool has_comma = rest.find(',') != std::string_view::npos;
    std::string cur;
    for (char c : rest) {
        if (c == ',') {
            if (cur.empty())
                return std::nullopt;
            pos.push_back(std::stoi(cur));
            cur.clear();
        } else if (c >= '0' && c <= '9') {
            if (has_comma)
                cur += c;
            else
                pos.push_back(c - '0');
        } else {
            return std::nullopt;
        }
    }
    if (has_comma) {
        if (cur.empty())
            return std::nullopt;
        pos.push_back(std::stoi(cur));
    }
    if (pos.empty())
        return std::nullopt;
    return std::make_pair(eps, pos);
}

MorId DCatFragment::resolve_morphism(std::string_view name, std::optional<ObjId> tgt_hint) const {
    if (auto m = find_morphism(name))
        return *m;
    if (kind_ == FragmentKind::CounterProduct && base_) {
        std::optional<ObjId> base_tgt;
        if (tgt_hint)
            base_tgt = base_->find_object(object(*tgt_hint).name);
        MorId b = base_->resolve_morphism(name, base_tgt);
        if (auto pm = product_morphism(b, std::vector<int>(rank_, 0)))
            return *pm;
    }
    if ((kind_ == FragmentKind::Precube || kind_ == FragmentKind::LabeledPrecube) && tgt_hint) {
        if (auto alias = parse_face_alias(name)) {
            const Object &t = object(*tgt_hint);
            std::string pat = face_pattern(t.dim, alias->first, alias->second);
            std::string full = kind_ == FragmentKind::Precube ? "d[" + pat + "]"
                                                             : "d[" + pat + "|" + word_name(t.word).substr(1);
            if (auto m = find_morphism(full))
                return *m;
        }
    }
    throw Error(ErrorCode::UnknownName, "morphism '" + std::string(name) + "'");
}

std::span<const MorId> DCatFragment::hom(ObjId v, ObjId u) const {
    auto it = hom_.find(pair_key(v.value, u.value));
    if (it == hom_.end())
        return {};
    return it->second;
}

std::optional<MorId> DCatFragment::try_compose(MorId g, MorId f) const {
    if (tgt(f) != src(g))
        throw Error(ErrorCode::NotComposable, name(g) + " after " + name(f));
    auto it = compose_.find(pair_key(g.value, f.value));
    if (it == compose_.end())
        return std::nullopt;
    return it->second;
}

MorId DCatFragment::compose(MorId g, MorId f) const {
    if (auto gf = try_compose(g, f))
        return *gf;
    throw Error(ErrorCode::NotInWindow, name(g) + " after " + name(f));
}

std::optional<MorId> DCatFragment::product_morphism(MorId base_phi, const std::vector<int> &w) const {
    if (kind_ != FragmentKind::CounterProduct || w.size() != rank_ || !within(w, bound_))
        return std::nullopt;
    std::size_t per = 1;
    for (int b : bound_)
        per *= static_cast<std::size_t>(b + 1);
    return make_id<MorId>(base_phi.idx() * per + counter_index(w, bound_));
}

// ---------------------------------------------------------------- builder

FragmentBuilder::FragmentBuilder(FragmentKind kind) { frag_.kind_ = kind; }

FragmentBuilder FragmentBuilder::from(const DCatFragment &frag) {
    FragmentBuilder b(frag.kind_);
    b.frag_ = frag;
    return b;
}

ObjId FragmentBuilder::add_object(Object obj) {
    if (frag_.obj_by_name_.count(obj.name))
        throw Error(ErrorCode::InvalidInput, "duplicate object '" + obj.name + "'");
    ObjId id = make_id<ObjId>(frag_.objects_.size());
    frag_.obj_by_name_[obj.name] = id;
    frag_.objects_.push_back(std::move(obj));
    frag_.identity_.push_back(MorId());
    return id;
}

MorId FragmentBuilder::add_identity(ObjId o) {
    if (frag_.identity_.at(o.idx()).valid())
        return frag_.identity_[o.idx()];
    Morphism m;
    m.name = "id[" + frag_.objects_[o.idx()].name + "]";
    m.src = m.tgt = o;
    m.is_identity = m.is_for = m.is_back = true;
    m.pattern = std::string(static_cast<std::size_t>(frag_.objects_[o.idx()].dim), '*');
    return add_morphism(std::move(m));
}

MorId FragmentBuilder::add_morphism(Morphism m) {
    if (frag_.mor_by_name_.count(m.name))
        throw Error(ErrorCode::InvalidInput, "duplicate morphism '" + m.name + "'");
    if (!m.src.valid() || !m.tgt.valid() || m.src.idx() >= frag_.objects_.size() ||
        m.tgt.idx() >= frag_.objects_.size())
        throw Error(ErrorCode::InvalidInput, "morphism '" + m.name + "' has unknown endpoints");
    if (m.is_identity && m.src != m.tgt)
        throw Error(ErrorCode::InvalidInput, "identity '" + m.name + "' with src != tgt");
    MorId id = make_id<MorId>(frag_.morphisms_.size());
    if (m.is_identity) {
        if (frag_.identity_[m.src.idx()].valid())
            throw Error(ErrorCode::InvalidInput, "second identity for object " + frag_.objects_[m.src.idx()].name);
        frag_.identity_[m.src.idx()] = id;
    }
    frag_.mor_by_name_[m.name] = id;
    frag_.morphisms_.push_back(std::move(m));
    return id;
}

void FragmentBuilder::set_compose(MorId g, MorId f, MorId gf) {
    frag_.compose_[pair_key(g.value, f.value)] = gf;
}

void FragmentBuilder::set_counter_info(FragmentPtr base, std::size_t rank, std::vector<int> bound) {
    frag_.base_ = std::move(base);
    frag_.rank_ = rank;
    frag_.bound_ = std::move(bound);
}

std::optional<MorId> FragmentBuilder::find_morphism(std::string_view name) const {
    return frag_.find_morphism(name);
}
std::optional<ObjId> FragmentBuilder::find_object(std::string_view name) const {
    return frag_.find_object(name);
}

FragmentPtr FragmentBuilder::build() {
    DCatFragment &F = frag_;
    const std::size_t no = F.objects_.size();
    for (std::size_t o = 0; o < no; ++o)
        add_identity(make_id<ObjId>(o));
    const std::size_t nm = F.morphisms_.size();

    // identities act as units unless the table says otherwise
    for (std::size_t i = 0; i < nm; ++i) {
        MorId f = make_id<MorId>(i);
        const Morphism &m = F.morphisms_[i];
        F.compose_.try_emplace(pair_key(F.identity_[m.tgt.idx()].value, f.value), f);
        F.compose_.try_emplace(pair_key(f.value, F.identity_[m.src.idx()].value), f);
    }

    F.entries_.clear();
    F.entries_.reserve(F.compose_.size());
    for (const auto &[key, gf] : F.compose_)
        F.entries_.push_back({make_id<MorId>(key >> 32), make_id<MorId>(key & 0xffffffffu), gf});
    std::sort(F.entries_.begin(), F.entries_.end(), [](const auto &a, const auto &b) {
        return std::tie(a.g, a.f) < std::tie(b.g, b.f);
    });

    auto by_name = [&F](MorId a, MorId b) {
        return F.morphisms_[a.idx()].name < F.morphisms_[b.idx()].name;
    };
    F.into_.assign(no, {});
    F.out_.assign(no, {});
    F.hom_.clear();
    for (std::size_t i = 0; i < nm; ++i) {
        MorId m = make_id<MorId>(i);
        F.into_[F.morphisms_[i].tgt.idx()].push_back(m);
        F.out_[F.morphisms_[i].src.idx()].push_back(m);
        F.hom_[pair_key(F.morphisms_[i].src.value, F.morphisms_[i].tgt.value)].push_back(m);
    }
    for (auto &v : F.into_)
        std::sort(v.begin(), v.end(), by_name);
    for (auto &v : F.out_)
        std::sort(v.begin(), v.end(), by_name);
    for (auto &[k, v] : F.hom_)
        std::sort(v.begin(), v.end(), by_name);
    F.into_pos_.assign(nm, 0);
    for (const auto &v : F.into_)
        for (std::size_t p = 0; p < v.size(); ++p)
            F.into_pos_[v[p].idx()] = p;

    F.inverse_.assign(nm, std::nullopt);
    for (std::size_t i = 0; i < nm; ++i) {
        MorId m = make_id<MorId>(i);
        const Morphism &mm = F.morphisms_[i];
        if (mm.is_identity) {
            F.inverse_[i] = m;
            continue;
        }
        for (MorId g : F.hom(mm.tgt, mm.src)) {
            auto a = F.compose_.find(pair_key(g.value, m.value));
            auto b = F.compose_.find(pair_key(m.value, g.value));
            if (a != F.compose_.end() && b != F.compose_.end() && a->second == F.identity_[mm.src.idx()] &&
                b->second == F.identity_[mm.tgt.idx()]) {
                F.inverse_[i] = g;
                break;
            }
        }
    }

    bool any_gen = std::any_of(F.morphisms_.begin(), F.morphisms_.end(),
                               [](const Morphism &m) { return m.is_generator; });
    if (infer_generators_ || !any_gen) {
        std::vector<bool> composite(nm, false);
        for (const auto &e : F.entries_)
            if (!F.morphisms_[e.g.idx()].is_identity && !F.morphisms_[e.f.idx()].is_identity)
                composite[e.gf.idx()] = true;
        for (std::size_t i = 0; i < nm; ++i)
            F.morphisms_[i].is_generator = !F.morphisms_[i].is_identity && !composite[i];
    }

    // shortest generator words by BFS; a word lists the outermost factor first
    F.gen_word_.assign(nm, std::nullopt);
    std::deque<MorId> queue;
    for (std::size_t i = 0; i < nm; ++i) {
        if (F.morphisms_[i].is_identity)
            F.gen_word_[i] = std::vector<MorId>{};
    }
    for (std::size_t i = 0; i < nm; ++i) {
        if (F.morphisms_[i].is_generator && !F.morphisms_[i].is_identity) {
            F.gen_word_[i] = std::vector<MorId>{make_id<MorId>(i)};
            queue.push_back(make_id<MorId>(i));
        }
    }
    std::vector<MorId> gens_out;
    while (!queue.empty()) {
        MorId c = queue.front();
        queue.pop_front();
        for (MorId g : F.out_[F.morphisms_[c.idx()].tgt.idx()]) {
            if (!F.morphisms_[g.idx()].is_generator)
                continue;
            auto it = F.compose_.find(pair_key(g.value, c.value));
            if (it == F.compose_.end() || F.gen_word_[it->second.idx()])
                continue;
            std::vector<MorId> w;
            w.push_back(g);
            const auto &cw = *F.gen_word_[c.idx()];
            w.insert(w.end(), cw.begin(), cw.end());
            F.gen_word_[it->second.idx()] = std::move(w);
            queue.push_back(it->second);
        }
    }

    return std::make_shared<const DCatFragment>(F);
}

// ---------------------------------------------------------------- validation

std::optional<std::pair<bool, bool>> expected_polarity(const DCatFragment &frag, MorId mid) {
    const Morphism &m = frag.morphism(mid);
    if (m.is_identity)
        return std::make_pair(true, true);
    switch (frag.kind()) {
    case FragmentKind::Explicit:
        return std::nullopt;
    case FragmentKind::G:
        if (m.pattern == "s")
            return std::make_pair(true, false);
        if (m.pattern == "t")
            return std::make_pair(false, true);
        return std::nullopt;
    case FragmentKind::Precube:
    case FragmentKind::LabeledPrecube:
        return std::make_pair(m.pattern.find('1') == std::string::npos, m.pattern.find('0') == std::string::npos);
    case FragmentKind::CounterProduct: {
        const auto &base = frag.base_fragment();
        auto bp = expected_polarity(*base, m.base);
        if (!bp)
            bp = std::make_pair(base->is_for(m.base), base->is_back(m.base));
        bool zero = std::all_of(m.counter.begin(), m.counter.end(), [](int x) { return x == 0; });
        return std::make_pair(bp->first && zero, bp->second && zero);
    }
    case FragmentKind::V: {
        const auto &base = frag.base_fragment();
        const Morphism &bm = base->morphism(m.base);
        const Object &s = frag.object(m.src), &t = frag.object(m.tgt);
        if (bm.is_identity)
            return std::make_pair(false, false);  // non-identity iso of the codiscrete factor
        const std::vector<int> &u = base->object(bm.tgt).vec;
        bool match_for = true, match_back = true;
        for (std::size_t k = 0; k < u.size(); ++k) {
            int minus = u[k] < 0 ? -u[k] : 0, plus = u[k] > 0 ? u[k] : 0;
            match_for = match_for && s.counter[k] == minus + t.counter[k];
            match_back = match_back && s.counter[k] == plus + t.counter[k];
        }
        if (bm.pattern == "s")
            return std::make_pair(match_for, false);
        return std::make_pair(false, match_back);
    }
    }
    return std::nullopt;
}

ValidationReport validate_fragment(const DCatFragment &F) {
    ValidationReport rep;
    const bool partial_ok = F.window().composites_truncated;
    for (std::size_t o = 0; o < F.num_objects(); ++o) {
        MorId id = F.identity(make_id<ObjId>(o));
        if (!F.is_for(id) || !F.is_back(id))
            rep.add("identity-polarity", {F.name(id)});
    }
    for (const auto &e : F.compose_entries()) {
        if (F.tgt(e.f) != F.src(e.g) || F.src(e.gf) != F.src(e.f) || F.tgt(e.gf) != F.tgt(e.g))
            rep.add("compose-typing", {F.name(e.g), F.name(e.f), F.name(e.gf)});
    }
    for (std::size_t i = 0; i < F.num_morphisms(); ++i) {
        MorId f = make_id<MorId>(i);
        auto a = F.try_compose(F.identity(F.tgt(f)), f);
        auto b = F.try_compose(f, F.identity(F.src(f)));
        if (!a || *a != f || !b || *b != f)
            rep.add("unit", {F.name(f)});
    }
    for (const auto &e : F.compose_entries()) {
        if (F.tgt(e.f) != F.src(e.g))
            continue;
        for (MorId h : F.out_of(F.tgt(e.g))) {
            auto hg = F.try_compose(h, e.g);
            if (!hg)
                continue;
            auto lhs = F.try_compose(*hg, e.f);
            auto rhs = F.try_compose(h, e.gf);
            if (lhs && rhs && *lhs != *rhs)
                rep.add("associativity", {F.name(h), F.name(e.g), F.name(e.f)});
            else if (lhs.has_value() != rhs.has_value() && !partial_ok)
                rep.add("associativity-partial", {F.name(h), F.name(e.g), F.name(e.f)});
        }
    }
    for (const auto &e : F.compose_entries()) {
        if (F.is_for(e.g) && F.is_for(e.f) && !F.is_for(e.gf))
            rep.add("polarity-closure", {"for", F.name(e.g), F.name(e.f), F.name(e.gf)});
        if (F.is_back(e.g) && F.is_back(e.f) && !F.is_back(e.gf))
            rep.add("polarity-closure", {"back", F.name(e.g), F.name(e.f), F.name(e.gf)});
    }
    for (std::size_t i = 0; i < F.num_morphisms(); ++i) {
        MorId m = make_id<MorId>(i);
        if (auto inv = F.inverse(m)) {
            if (F.is_for(m) != F.is_back(*inv))
                rep.add("inverse-polarity", {F.name(m), F.name(*inv)});
        }
        if (auto exp = expected_polarity(F, m)) {
            if (exp->first != F.is_for(m) || exp->second != F.is_back(m))
                rep.add("polarity", {F.name(m)});
        }
    }
    return rep;
}

bool same_fragment(const DCatFragment &a, const DCatFragment &b) {
    if (&a == &b)
        return true;
    if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms())
        return false;
    for (std::size_t o = 0; o < a.num_objects(); ++o)
        if (a.name(make_id<ObjId>(o)) != b.name(make_id<ObjId>(o)))
            return false;
    for (std::size_t m = 0; m < a.num_morphisms(); ++m) {
        MorId id = make_id<MorId>(m);
        if (a.name(id) != b.name(id) || a.src(id) != b.src(id) || a.tgt(id) != b.tgt(id))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- builders

FragmentPtr build_G(const std::vector<std::string> &sigma_in) {
    std::set<std::string> sigma(sigma_in.begin(), sigma_in.end());
    for (const auto &a : sigma) {
        if (a == "_" || a.empty() || a == "\xE2\x88\x85")
            throw Error(ErrorCode::AlphabetContainsEmptySymbol, "alphabet contains the empty-word symbol");
    }
    FragmentBuilder b(FragmentKind::G);
    b.set_alphabet({sigma.begin(), sigma.end()});
    Object empty;
    empty.name = "_";
    empty.kind = ObjKind::Symbol;
    ObjId e = b.add_object(empty);
    b.add_identity(e);
    for (const auto &a : sigma) {
        Object o;
        o.name = a;
        o.kind = ObjKind::Symbol;
        o.dim = 1;
        o.word = {a};
        ObjId oa = b.add_object(o);
        b.add_identity(oa);
        Morphism s;
        s.name = "s[" + a + "]";
        s.src = e;
        s.tgt = oa;
        s.is_for = true;
        s.is_generator = true;
        s.pattern = "s";
        b.add_morphism(s);
        Morphism t = s;
        t.name = "t[" + a + "]";
        t.is_for = false;
        t.is_back = true;
        t.pattern = "t";
        b.add_morphism(t);
    }
    return b.build();
}

namespace {

void all_patterns(int n, std::string &cur, std::vector<std::string> &out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (char c : {'*', '0', '1'}) {
        cur.push_back(c);
        all_patterns(n, cur, out);
        cur.pop_back();
    }
}

std::vector<std::string> patterns_of(int n) {
    std::vector<std::string> out;
    std::string cur;
    all_patterns(n, cur, out);
    return out;
}

int stars(const std::string &p) { return static_cast<int>(std::count(p.begin(), p.end(), '*')); }

void fill_cube_morphism(Morphism &m, const std::string &pat) {
    m.pattern = pat;
    m.is_identity = stars(pat) == static_cast<int>(pat.size());
    m.is_for = pat.find('1') == std::string::npos;
    m.is_back = pat.find('0') == std::string::npos;
    m.is_generator = static_cast<int>(pat.size()) - stars(pat) == 1;
}

}  // namespace

FragmentPtr build_precube(int dmax) {
    if (dmax < 0)
        throw Error(ErrorCode::InvalidInput, "dmax must be >= 0");
    FragmentBuilder b(FragmentKind::Precube);
    std::vector<ObjId> objs;
    for (int n = 0; n <= dmax; ++n) {
        Object o;
        o.name = "[" + std::to_string(n) + "]";
        o.kind = ObjKind::Cube;
        o.dim = n;
        objs.push_back(b.add_object(o));
    }
    for (int n = 0; n <= dmax; ++n) {
        for (const auto &pat : patterns_of(n)) {
            Morphism m;
            fill_cube_morphism(m, pat);
            m.name = m.is_identity ? "id[" + std::to_string(n) + "]" : "d[" + pat + "]";
            m.src = objs[static_cast<std::size_t>(stars(pat))];
            m.tgt = objs[static_cast<std::size_t>(n)];
            b.add_morphism(m);
        }
    }
    // composition: g over [n] with m stars, f over [m]
    FragmentPtr tmp_ptr = b.build();
    const DCatFragment &tmp = *tmp_ptr;
    for (std::size_t gi = 0; gi < tmp.num_morphisms(); ++gi) {
        MorId g = make_id<MorId>(gi);
        for (MorId f : tmp.into(tmp.src(g))) {
            std::string pat = compose_patterns(tmp.morphism(g).pattern, tmp.morphism(f).pattern);
            int n = static_cast<int>(pat.size());
            std::string nm = stars(pat) == n ? "id[" + std::to_string(n) + "]" : "d[" + pat + "]";
            b.set_compose(g, f, *tmp.find_morphism(nm));
        }
    }
    b.window().max_dim = dmax;
    b.window().objects_truncated = true;
    return b.build();
}

FragmentPtr build_labeled_precube(const std::vector<std::string> &sigma_in, int dmax) {
    if (dmax < 0)
        throw Error(ErrorCode::InvalidInput, "dmax must be >= 0");
    std::set<std::string> sset(sigma_in.begin(), sigma_in.end());
    std::vector<std::string> sigma(sset.begin(), sset.end());
    FragmentBuilder b(FragmentKind::LabeledPrecube);
    b.set_alphabet(sigma);
    std::vector<std::vector<std::string>> words{{}};
    std::vector<std::vector<std::string>> layer{{}};
    for (int n = 1; n <= dmax; ++n) {
        std::vector<std::vector<std::string>> next;
        for (const auto &w : layer)
            for (const auto &a : sigma) {
                auto w2 = w;
                w2.push_back(a);
                next.push_back(w2);
            }
        words.insert(words.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    for (const auto &w : words) {
        Object o;
        o.name = word_name(w);
        o.kind = ObjKind::Word;
        o.dim = static_cast<int>(w.size());
        o.word = w;
        b.add_object(o);
    }
    auto mor_name = [](const std::string &pat, const std::vector<std::string> &tw) {
        if (stars(pat) == static_cast<int>(pat.size()))
            return "id" + word_name(tw);
        std::string wn = word_name(tw);
        return "d[" + pat + "|" + wn.substr(1);
    };
    for (const auto &w : words) {
        ObjId t = *b.find_object(word_name(w));
        for (const auto &pat : patterns_of(static_cast<int>(w.size()))) {
            std::vector<std::string> sw;
            for (std::size_t i = 0; i < pat.size(); ++i)
                if (pat[i] == '*')
                    sw.push_back(w[i]);
            Morphism m;
            fill_cube_morphism(m, pat);
            m.name = mor_name(pat, w);
            m.src = *b.find_object(word_name(sw));
            m.tgt = t;
            b.add_morphism(m);
        }
    }
    FragmentPtr tmp_ptr = b.build();
    const DCatFragment &tmp = *tmp_ptr;
    for (std::size_t gi = 0; gi < tmp.num_morphisms(); ++gi) {
        MorId g = make_id<MorId>(gi);
        const auto &tw = tmp.object(tmp.tgt(g)).word;
        for (MorId f : tmp.into(tmp.src(g))) {
            std::string pat = compose_patterns(tmp.morphism(g).pattern, tmp.morphism(f).pattern);
            b.set_compose(g, f, *tmp.find_morphism(mor_name(pat, tw)));
        }
    }
    b.window().max_dim = dmax;
    b.window().max_word_len = dmax;
    b.window().objects_truncated = !sigma.empty();
    return b.build();
}

FragmentPtr product_with_counter(const FragmentPtr &frag, std::size_t r, const std::vector<int> &bound) {
    if (bound.size() != r)
        throw Error(ErrorCode::InvalidInput, "counter bound has wrong rank");
    for (int x : bound)
        if (x < 0)
            throw Error(ErrorCode::InvalidInput, "counter bound must be >= 0");
    FragmentBuilder b(FragmentKind::CounterProduct);
    b.set_alphabet(frag->alphabet());
    for (std::size_t o = 0; o < frag->num_objects(); ++o)
        b.add_object(frag->object(make_id<ObjId>(o)));
    const auto counters = counter_vectors(bound);
    const std::vector<int> zero(r, 0);
    for (std::size_t i = 0; i < frag->num_morphisms(); ++i) {
        const Morphism &bm = frag->morphism(make_id<MorId>(i));
        for (const auto &w : counters) {
            bool is_zero = w == zero;
            Morphism m;
            m.name = "(" + bm.name + ";" + counter_name(w) + ")";
            m.src = bm.src;
            m.tgt = bm.tgt;
            m.is_identity = bm.is_identity && is_zero;
            m.is_for = bm.is_for && is_zero;
            m.is_back = bm.is_back && is_zero;
            m.pattern = bm.pattern;
            m.base = make_id<MorId>(i);
            m.counter = w;
            if (bm.is_generator && is_zero)
                m.is_generator = true;
            if (bm.is_identity) {
                int nz = 0;
                for (int x : w)
                    nz += x;
                if (nz == 1)
                    m.is_generator = true;
            }
            b.add_morphism(m);
        }
    }
    b.set_counter_info(frag, r, bound);
    // compose through the product index arithmetic
    FragmentPtr tmp_ptr = b.build();
    const DCatFragment &tmp = *tmp_ptr;
    bool truncated = frag->window().composites_truncated;
    for (std::size_t gi = 0; gi < tmp.num_morphisms(); ++gi) {
        MorId g = make_id<MorId>(gi);
        const Morphism &gm = tmp.morphism(g);
        for (MorId f : tmp.into(gm.src)) {
            const Morphism &fm = tmp.morphism(f);
            auto bc = frag->try_compose(gm.base, fm.base);
            std::vector<int> w(r);
            for (std::size_t k = 0; k < r; ++k)
                w[k] = gm.counter[k] + fm.counter[k];
            auto pm = bc ? tmp.product_morphism(*bc, w) : std::nullopt;
            if (pm)
                b.set_compose(g, f, *pm);
            else
                truncated = true;
        }
    }
    b.window() = frag->window();
    b.window().max_counter = bound;
    b.window().composites_truncated = truncated;
    return b.build();
}

FragmentPtr build_V(std::size_t r, const std::vector<int> &counter_bound,
                    const std::vector<std::vector<int>> &vec_universe) {
    if (counter_bound.size() != r)
        throw Error(ErrorCode::InvalidInput, "counter bound has wrong rank");
    std::set<std::vector<int>> uni;
    for (const auto &u : vec_universe) {
        if (u.size() != r)
            throw Error(ErrorCode::InvalidInput, "edge vector has wrong rank");
        uni.insert(u);
    }
    // base: G(Z^r) restricted to the universe
    FragmentBuilder gb(FragmentKind::G);
    Object e;
    e.name = "_";
    e.kind = ObjKind::Symbol;
    ObjId eo = gb.add_object(e);
    gb.add_identity(eo);
    std::vector<ObjId> uobjs;
    for (const auto &u : uni) {
        Object o;
        o.name = counter_name(u);
        o.kind = ObjKind::Symbol;
        o.dim = 1;
        o.has_vec = true;
        o.vec = u;
        ObjId uo = gb.add_object(o);
        uobjs.push_back(uo);
        gb.add_identity(uo);
        Morphism s;
        s.name = "s[" + o.name + "]";
        s.src = eo;
        s.tgt = uo;
        s.is_for = true;
        s.is_generator = true;
        s.pattern = "s";
        gb.add_morphism(s);
        Morphism t = s;
        t.name = "t[" + o.name + "]";
        t.is_for = false;
        t.is_back = true;
        t.pattern = "t";
        gb.add_morphism(t);
    }
    FragmentPtr base = gb.build();

    FragmentBuilder b(FragmentKind::V);
    const auto counters = counter_vectors(counter_bound);
    const std::size_t C = counters.size();
    // object index = base_obj * C + counter index
    for (std::size_t bo = 0; bo < base->num_objects(); ++bo) {
        const Object &bobj = base->object(make_id<ObjId>(bo));
        for (const auto &v : counters) {
            Object o;
            o.kind = ObjKind::VPair;
            o.has_vec = bobj.has_vec;
            o.vec = bobj.vec;
            o.counter = v;
            o.dim = bobj.dim;
            o.name = "(" + (bobj.has_vec ? counter_name(bobj.vec) : std::string("_")) + "|" + counter_name(v) + ")";
            b.add_object(o);
        }
    }
    for (std::size_t bm = 0; bm < base->num_morphisms(); ++bm) {
        const Morphism &m0 = base->morphism(make_id<MorId>(bm));
        for (std::size_t wi = 0; wi < C; ++wi) {
            for (std::size_t vi = 0; vi < C; ++vi) {
                Morphism m;
                m.name = "(" + m0.name + ";" + counter_name(counters[wi]) + ">" + counter_name(counters[vi]) + ")";
                m.src = make_id<ObjId>(m0.src.idx() * C + wi);
                m.tgt = make_id<ObjId>(m0.tgt.idx() * C + vi);
                m.base = make_id<MorId>(bm);
                m.pattern = m0.pattern;
                m.is_identity = m0.is_identity && wi == vi;
                m.is_generator = !m.is_identity;
                b.add_morphism(m);
            }
        }
    }
    b.set_counter_info(base, r, counter_bound);
    FragmentPtr tmp_ptr = b.build();
    const DCatFragment &tmp = *tmp_ptr;
    for (std::size_t i = 0; i < tmp.num_morphisms(); ++i) {
        MorId m = make_id<MorId>(i);
        auto pol = expected_polarity(tmp, m);
        b.morphism(m).is_for = pol->first;
        b.morphism(m).is_back = pol->second;
    }
    for (std::size_t gi = 0; gi < tmp.num_morphisms(); ++gi) {
        MorId g = make_id<MorId>(gi);
        const Morphism &gm = tmp.morphism(g);
        for (MorId f : tmp.into(gm.src)) {
            const Morphism &fm = tmp.morphism(f);
            auto bc = base->try_compose(gm.base, fm.base);
            if (!bc)
                continue;
            std::size_t wi = fm.src.idx() % C, vi = gm.tgt.idx() % C;
            b.set_compose(g, f, make_id<MorId>(bc->idx() * C * C + wi * C + vi));
        }
    }
    // record the for/back morphisms that fall outside the counter window
    for (std::size_t ui = 0; ui < uobjs.size(); ++ui) {
        const auto &u = base->object(uobjs[ui]).vec;
        for (const auto &v : counters) {
            std::vector<int> minus(r), plus(r);
            for (std::size_t k = 0; k < r; ++k) {
                minus[k] = v[k] + (u[k] < 0 ? -u[k] : 0);
                plus[k] = v[k] + (u[k] > 0 ? u[k] : 0);
            }
            std::string un = counter_name(u);
            if (!within(minus, counter_bound))
                b.window().omitted.push_back("(s[" + un + "];" + counter_name(minus) + ">" + counter_name(v) + ")");
            if (!within(plus, counter_bound))
                b.window().omitted.push_back("(t[" + un + "];" + counter_name(plus) + ">" + counter_name(v) + ")");
        }
    }
    b.window().max_counter = counter_bound;
    b.window().objects_truncated = true;
    return b.build();
}

}  // namespace pshaut
