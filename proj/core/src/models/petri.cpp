#include "pshaut/models/petri.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace pshaut {

namespace {

std::size_t index_of(const std::vector<std::string> &v, const std::string &x, const char *what) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end())
        throw Error(ErrorCode::UnknownName, std::string(what) + " " + x);
    return static_cast<std::size_t>(it - v.begin());
}

std::string label_of(const PetriNet &net, std::size_t t) {
    if (t < net.labels.size() && !net.labels[t].empty())
        return net.labels[t];
    return net.transitions[t];
}

std::vector<std::vector<std::size_t>> shape_words(const PetriNet &net, const PetriOptions &opts) {
    const std::size_t nt = net.transitions.size();
    std::size_t maxlen = 0;
    switch (opts.mode) {
    case PetriMode::Full:
        if (!opts.dim_bound)
            throw Error(ErrorCode::FullModeInfinite, "mode full needs a dimension bound");
        maxlen = static_cast<std::size_t>(*opts.dim_bound);
        break;
    case PetriMode::Nac:
        maxlen = nt;
        break;
    case PetriMode::LeD:
        if (opts.d < 0 || static_cast<std::size_t>(opts.d) > nt)
            throw Error(ErrorCode::InvalidInput, "le_d needs 0 <= d <= |T|");
        maxlen = static_cast<std::size_t>(opts.d);
        break;
    }
    if (opts.dim_bound)
        maxlen = std::min(maxlen, static_cast<std::size_t>(std::max(*opts.dim_bound, 0)));
    std::vector<std::vector<std::size_t>> out{{}};
    std::vector<std::vector<std::size_t>> layer{{}};
    for (std::size_t n = 1; n <= maxlen; ++n) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto &w : layer)
            for (std::size_t t = 0; t < nt; ++t) {
                if (opts.mode == PetriMode::Nac) {
                    bool clash = false;
                    for (std::size_t s : w)
                        clash = clash || (opts.nac_by_label ? label_of(net, s) == label_of(net, t) : s == t);
                    if (clash)
                        continue;
                }
                auto w2 = w;
                w2.push_back(t);
                next.push_back(std::move(w2));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::vector<std::string> labels_of(const PetriNet &net, const std::vector<std::size_t> &w) {
    std::vector<std::string> out;
    for (std::size_t t : w)
        out.push_back(label_of(net, t));
    return out;
}

std::string word_str(const PetriNet &net, const std::vector<std::size_t> &w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + net.transitions[w[i]];
    return s;
}

}  // namespace

std::vector<int> petri_pre(const PetriNet &net, std::size_t t) {
    std::vector<int> a(net.places.size(), 0);
    for (const auto &[p, tr] : net.pre)
        if (tr == net.transitions.at(t))
            a[index_of(net.places, p, "place")] = 1;
    return a;
}

std::vector<int> petri_post(const PetriNet &net, std::size_t t) {
    std::vector<int> b(net.places.size(), 0);
    for (const auto &[tr, p] : net.post)
        if (tr == net.transitions.at(t))
            b[index_of(net.places, p, "place")] = 1;
    return b;
}

std::string hdac_element_name(const PetriNet &net, const std::vector<std::size_t> &word, const std::vector<int> &v) {
    return "(" + word_str(net, word) + ";" + counter_name(v) + ")";
}

HdacResult petri_to_hdac(const PetriNet &net, const PetriOptions &opts) {
    for (const auto &[p, t] : net.pre) {
        index_of(net.places, p, "place");
        index_of(net.transitions, t, "transition");
    }
    for (const auto &[t, p] : net.post) {
        index_of(net.places, p, "place");
        index_of(net.transitions, t, "transition");
    }
    const std::size_t np = net.places.size();
    if (opts.counter_bound.size() != np)
        throw Error(ErrorCode::InvalidInput, "counter bound needs one entry per place");
    HdacResult res;
    res.words = shape_words(net, opts);
    std::size_t maxlen = 0;
    std::set<std::string> sigma;
    for (std::size_t t = 0; t < net.transitions.size(); ++t)
        sigma.insert(label_of(net, t));
    for (const auto &w : res.words)
        maxlen = std::max(maxlen, w.size());
    FragmentPtr base = build_labeled_precube({sigma.begin(), sigma.end()}, static_cast<int>(maxlen));
    FragmentPtr F = product_with_counter(base, np, opts.counter_bound);
    const std::vector<int> zero(np, 0);

    Presentation &pres = res.presentation;
    std::map<std::vector<std::size_t>, std::size_t> word_obj;
    for (const auto &w : res.words) {
        word_obj[w] = pres.objects.size();
        pres.objects.push_back("(" + word_str(net, w) + ")");
        pres.G_ob.push_back(F->object_by_name(word_name(labels_of(net, w))));
    }
    auto counter_mor = [&](MorId bm, const std::vector<int> &w) {
        auto m = F->product_morphism(bm, w);
        if (!m)
            throw Error(ErrorCode::WindowOverflow, "counter " + counter_name(w) + " exceeds the bound");
        return *m;
    };
    for (const auto &w : res.words) {
        const std::size_t n = w.size();
        const auto lw = labels_of(net, w);
        for (std::size_t i = 0; i < n; ++i) {
            auto face = w;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            ObjId face_obj = F->object_by_name(word_name(labels_of(net, face)));
            for (int eps = 0; eps <= 1; ++eps) {
                std::size_t e = pres.objects.size();
                pres.objects.push_back("(" + word_str(net, w) + ";" + std::to_string(i + 1) + "," +
                                       std::to_string(eps) + ")");
                pres.G_ob.push_back(face_obj);
                // phi: boundary -> face word, carrying the tokens a(t_i) or b(t_i)
                pres.morphisms.push_back({"phi" + pres.objects[e], e, word_obj.at(face)});
                pres.G_mor.push_back(counter_mor(base->identity(face_obj),
                                                 eps == 0 ? petri_pre(net, w[i]) : petri_post(net, w[i])));
                // psi: boundary -> word, the face inclusion
                std::string pat = face_pattern(static_cast<int>(n), eps, {static_cast<int>(i + 1)});
                MorId bm = base->morphism_by_name("d[" + pat + "|" + word_name(lw).substr(1));
                pres.morphisms.push_back({"psi" + pres.objects[e], e, word_obj.at(w)});
                pres.G_mor.push_back(counter_mor(bm, zero));
            }
        }
    }
    ValidationReport rep = validate_presentation(pres, *F);
    if (!rep.ok())
        throw Error(ErrorCode::InvalidInput, "internal: HDAC presentation does not type-check (" +
                                                 rep.violations.front().kind + ")");
    Materialized m = materialize(pres, F, OverflowPolicy::Drop);
    std::vector<std::string> names(m.automaton.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
        const auto &[e, mor] = m.representative[c];
        const Morphism &mm = F->morphism(mor);
        if (e >= res.words.size() || !F->base_fragment()->is_identity(mm.base))
            throw Error(ErrorCode::InvalidInput, "internal: unexpected class representative");
        names[c] = hdac_element_name(net, res.words[e], mm.counter);
    }
    res.automaton = m.automaton.with_names(std::move(names));
    if (net.m0.size() == np) {
        if (auto s = res.automaton.find(hdac_element_name(net, {}, net.m0)))
            res.automaton = res.automaton.with_marks({*s}, {});
    }
    return res;
}

std::optional<std::vector<int>> petri_fire_oracle(const PetriNet &net, const std::vector<int> &marking,
                                                  const std::vector<std::size_t> &seq) {
    std::vector<int> m = marking;
    for (std::size_t t : seq) {
        auto a = petri_pre(net, t), b = petri_post(net, t);
        for (std::size_t p = 0; p < m.size(); ++p)
            if (m[p] < a[p])
                return std::nullopt;
        for (std::size_t p = 0; p < m.size(); ++p)
            m[p] += b[p] - a[p];
    }
    return m;
}

}  // namespace pshaut
