#pragma once

#include "pshaut/types.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pshaut {

struct Violation {
    std::string kind;
    std::vector<std::string> witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string kind, std::vector<std::string> witness) {
        violations.push_back({std::move(kind), std::move(witness)});
    }
};

enum class FragmentKind { Explicit, G, Precube, LabeledPrecube, CounterProduct, V };

enum class ObjKind { Custom, Symbol, Cube, Word, VPair };

struct Object {
    std::string name;
    ObjKind kind = ObjKind::Custom;
    int dim = 0;                     // cube dimension, word length, 1 for letters of G
    std::vector<std::string> word;   // letters (Word), the single letter (Symbol)
    bool has_vec = false;            // VPair: edge object (u,v) rather than (empty,v)
    std::vector<int> vec;            // VPair: u
    std::vector<int> counter;        // VPair: v
};

struct Morphism {
    std::string name;
    ObjId src, tgt;
    bool is_for = false;
    bool is_back = false;
    bool is_identity = false;
    bool is_generator = false;
    std::string pattern;        // face pattern over the target, for cube-like fragments
    MorId base;                 // product / V: morphism of the base fragment
    std::vector<int> counter;   // product: counter component
};

// Truncation descriptor. objects_truncated: the object set is a proper window of an
// infinite category. composites_truncated: some composites of listed morphisms are absent.
struct Window {
    std::optional<int> max_dim;
    std::optional<int> max_word_len;
    std::vector<int> max_counter;
    bool objects_truncated = false;
    bool composites_truncated = false;
    std::vector<std::string> omitted;
};

class DCatFragment {
public:
    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_morphisms() const { return morphisms_.size(); }
    const Object &object(ObjId o) const { return objects_.at(o.idx()); }
    const Morphism &morphism(MorId m) const { return morphisms_.at(m.idx()); }
    const std::string &name(ObjId o) const { return object(o).name; }
    const std::string &name(MorId m) const { return morphism(m).name; }
    ObjId src(MorId m) const { return morphism(m).src; }
    ObjId tgt(MorId m) const { return morphism(m).tgt; }
    bool is_for(MorId m) const { return morphism(m).is_for; }
    bool is_back(MorId m) const { return morphism(m).is_back; }
    bool is_identity(MorId m) const { return morphism(m).is_identity; }

    std::optional<ObjId> find_object(std::string_view name) const;
    std::optional<MorId> find_morphism(std::string_view name) const;
    ObjId object_by_name(std::string_view name) const;    // throws UnknownName
    MorId morphism_by_name(std::string_view name) const;  // throws UnknownName

    // Resolves a morphism name, also accepting face aliases like "d0_1" or "d1_12"
    // (and product forms with omitted zero counter) given the target object.
    MorId resolve_morphism(std::string_view name, std::optional<ObjId> tgt_hint) const;

    MorId identity(ObjId o) const { return identity_.at(o.idx()); }
    std::span<const MorId> hom(ObjId v, ObjId u) const;
    std::span<const MorId> into(ObjId u) const { return into_.at(u.idx()); }
    std::span<const MorId> out_of(ObjId v) const { return out_.at(v.idx()); }
    // position of m inside into(tgt(m))
    std::size_t into_position(MorId m) const { return into_pos_.at(m.idx()); }

    // g∘f. Throws NotComposable / NotInWindow.
    MorId compose(MorId g, MorId f) const;
    // nullopt when the composite is outside the fragment. Throws NotComposable.
    std::optional<MorId> try_compose(MorId g, MorId f) const;
    std::optional<MorId> inverse(MorId m) const { return inverse_.at(m.idx()); }

    // Generator word w with m = w[0]∘w[1]∘...; empty for identities. nullopt if
    // m is not reachable from generators inside the fragment.
    const std::optional<std::vector<MorId>> &generator_word(MorId m) const {
        return gen_word_.at(m.idx());
    }

    const Window &window() const { return window_; }
    FragmentKind kind() const { return kind_; }
    const std::vector<std::string> &alphabet() const { return alphabet_; }

    // product_with_counter / build_V bookkeeping
    const std::shared_ptr<const DCatFragment> &base_fragment() const { return base_; }
    std::size_t counter_rank() const { return rank_; }
    const std::vector<int> &counter_bound() const { return bound_; }
    // (phi, w) in a counter product, nullopt if w is outside the bound
    std::optional<MorId> product_morphism(MorId base_phi, const std::vector<int> &w) const;

    struct ComposeEntry {
        MorId g, f, gf;
    };
    const std::vector<ComposeEntry> &compose_entries() const { return entries_; }

private:
    friend class FragmentBuilder;

    FragmentKind kind_ = FragmentKind::Explicit;
    std::vector<Object> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<MorId> identity_;
    std::unordered_map<std::string, ObjId> obj_by_name_;
    std::unordered_map<std::string, MorId> mor_by_name_;
    std::unordered_map<std::uint64_t, MorId> compose_;
    std::vector<ComposeEntry> entries_;
    std::vector<std::vector<MorId>> into_, out_;
    std::unordered_map<std::uint64_t, std::vector<MorId>> hom_;
    std::vector<std::size_t> into_pos_;
    std::vector<std::optional<MorId>> inverse_;
    std::vector<std::optional<std::vector<MorId>>> gen_word_;
    Window window_;
    std::vector<std::string> alphabet_;
    std::shared_ptr<const DCatFragment> base_;
    std::size_t rank_ = 0;
    std::vector<int> bound_;
};

using FragmentPtr = std::shared_ptr<const DCatFragment>;

class FragmentBuilder {
public:
    explicit FragmentBuilder(FragmentKind kind = FragmentKind::Explicit);
    // copy of an existing fragment, for mutation experiments
    static FragmentBuilder from(const DCatFragment &frag);

    ObjId add_object(Object obj);
    // adds id for the object if missing; returns it
    MorId add_identity(ObjId o);
    MorId add_morphism(Morphism m);
    void set_compose(MorId g, MorId f, MorId gf);
    Morphism &morphism(MorId m) { return frag_.morphisms_.at(m.idx()); }
    Window &window() { return frag_.window_; }
    void set_alphabet(std::vector<std::string> sigma) { frag_.alphabet_ = std::move(sigma); }
    void set_counter_info(FragmentPtr base, std::size_t rank, std::vector<int> bound);
    // infer generators (non-identity morphisms that are not composites of two
    // non-identity morphisms) when no morphism was flagged
    void infer_generators(bool on) { infer_generators_ = on; }
    std::optional<MorId> find_morphism(std::string_view name) const;
    std::optional<ObjId> find_object(std::string_view name) const;

    FragmentPtr build();

private:
    DCatFragment frag_;
    bool infer_generators_ = false;
};

// Expected polarity of a morphism from the structure of builder-made fragments.
// nullopt for explicit fragments.
std::optional<std::pair<bool, bool>> expected_polarity(const DCatFragment &frag, MorId m);

ValidationReport validate_fragment(const DCatFragment &frag);

// identical object and morphism tables (same builder inputs)
bool same_fragment(const DCatFragment &a, const DCatFragment &b);

FragmentPtr build_G(const std::vector<std::string> &sigma);
FragmentPtr build_precube(int dmax);
FragmentPtr build_labeled_precube(const std::vector<std::string> &sigma, int dmax);
FragmentPtr product_with_counter(const FragmentPtr &frag, std::size_t r, const std::vector<int> &bound);
FragmentPtr build_V(std::size_t r, const std::vector<int> &counter_bound,
                    const std::vector<std::vector<int>> &vec_universe);

// helpers shared with model encoders
std::string word_name(const std::vector<std::string> &word);
std::string counter_name(const std::vector<int> &v);
// all vectors 0 <= v <= bound in lexicographic order
std::vector<std::vector<int>> counter_vectors(const std::vector<int> &bound);
// "0*1" composed with "*": fill the stars of g with the entries of f in order
std::string compose_patterns(const std::string &g, const std::string &f);
// pattern of d^eps_A over [n]: positions in A (1-based) fixed at eps
std::string face_pattern(int n, int eps, const std::vector<int> &positions);

}  // namespace pshaut
