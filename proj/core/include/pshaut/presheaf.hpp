#pragma once

#include "pshaut/dcat.hpp"

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pshaut {

struct Element {
    std::string name;
    ObjId base;
};

// Presheaf automaton over a fragment. act(phi, x) is stored for every phi into
// base(x); entries may be undefined (invalid ElemId) only when the fragment's
// window cuts composites off.
class PresheafAutomaton {
public:
    PresheafAutomaton() = default;
    explicit PresheafAutomaton(FragmentPtr frag);

    const FragmentPtr &fragment_ptr() const { return frag_; }
    const DCatFragment &fragment() const { return *frag_; }

    std::size_t size() const { return elems_.size(); }
    const Element &element(ElemId e) const { return elems_.at(e.idx()); }
    const std::string &name(ElemId e) const { return element(e).name; }
    ObjId base(ElemId e) const { return element(e).base; }
    std::optional<ElemId> find(std::string_view name) const;
    ElemId by_name(std::string_view name) const;  // throws UnknownName
    std::span<const ElemId> fiber(ObjId o) const { return fiber_.at(o.idx()); }

    // X[phi](x); invalid id when outside the window. Throws NotComposable when
    // base(x) != tgt(phi).
    ElemId act(MorId phi, ElemId x) const;
    // {x | act(phi, x) = y}, ascending
    std::span<const ElemId> co_act(MorId phi, ElemId y) const;

    const std::vector<ElemId> &start() const { return start_; }
    const std::vector<ElemId> &accept() const { return accept_; }
    bool is_start(ElemId e) const { return is_start_.at(e.idx()); }
    bool is_accept(ElemId e) const { return is_accept_.at(e.idx()); }

    PresheafAutomaton with_marks(std::vector<ElemId> start, std::vector<ElemId> accept) const;
    PresheafAutomaton with_names(std::vector<std::string> names) const;

    // raw action table access (position = fragment().into_position(phi))
    const std::vector<ElemId> &action_row(ElemId x) const { return act_.at(x.idx()); }

private:
    friend class AutomatonBuilder;
    void index();

    FragmentPtr frag_;
    std::vector<Element> elems_;
    std::vector<std::vector<ElemId>> fiber_;
    std::vector<std::vector<ElemId>> act_;
    std::unordered_map<std::uint64_t, std::vector<ElemId>> co_act_;
    std::unordered_map<std::string, ElemId> by_name_;
    std::vector<ElemId> start_, accept_;
    std::vector<bool> is_start_, is_accept_;
};

class AutomatonBuilder {
public:
    explicit AutomatonBuilder(FragmentPtr frag);
    // copy of an existing automaton, for mutation experiments
    static AutomatonBuilder from(const PresheafAutomaton &X);

    ElemId add_element(std::string name, ObjId base);
    std::optional<ElemId> find(std::string_view name) const;
    std::size_t size() const { return X_.elems_.size(); }
    // act(phi, x) = y
    void set_act(MorId phi, ElemId x, ElemId y);
    void add_start(ElemId e) { starts_.push_back(e); }
    void add_accept(ElemId e) { accepts_.push_back(e); }
    // Fill unset entries from generator words. Entries set explicitly are kept
    // as given; validate_automaton reports any disagreement.
    PresheafAutomaton build(bool derive = true);

private:
    PresheafAutomaton X_;
    std::vector<ElemId> starts_, accepts_;
};

ValidationReport validate_automaton(const PresheafAutomaton &X);

// word lists the outermost factor first: composite word[0]∘word[1]∘...
ElemId act_path(const PresheafAutomaton &X, const std::vector<MorId> &word, ElemId x);

PresheafAutomaton representable(const FragmentPtr &frag, ObjId u);
PresheafAutomaton terminal_automaton(const FragmentPtr &frag);
PresheafAutomaton coproduct(const FragmentPtr &frag, const std::vector<const PresheafAutomaton *> &xs);

struct Presentation {
    struct ShapeMorphism {
        std::string name;
        std::size_t src = 0, tgt = 0;
    };
    std::vector<std::string> objects;
    std::vector<ShapeMorphism> morphisms;
    // pairs of parallel words of shape morphisms (outermost first)
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> relations;
    std::vector<ObjId> G_ob;
    std::vector<MorId> G_mor;
};

ValidationReport validate_presentation(const Presentation &pres, const DCatFragment &frag);

// Strict rejects presentations needing composites outside the window; Drop
// discards colimit classes that touch such composites (used for counter windows).
enum class OverflowPolicy { Strict, Drop };

struct Materialized {
    PresheafAutomaton automaton;
    // class of (e, id_{G(e)}) per shape object; invalid if dropped
    std::vector<ElemId> unit;
    // least (shape object, morphism) pair of each class
    std::vector<std::pair<std::size_t, MorId>> representative;
};

Materialized materialize(const Presentation &pres, const FragmentPtr &frag,
                         OverflowPolicy policy = OverflowPolicy::Strict);

// Presentation by the category of elements, projected to the fragment.
Presentation elements_presentation(const PresheafAutomaton &X);

}  // namespace pshaut
