#pragma once

#include "pshaut/track.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pshaut {

// A finite set of track objects keyed by canonical certificate. Languages are
// always taken relative to a budget: tracks of paths with at most max_len steps.
class Language {
public:
    Language() = default;
    Language(FragmentPtr frag, std::size_t max_len) : frag_(std::move(frag)), max_len_(max_len) {}

    const FragmentPtr &fragment_ptr() const { return frag_; }
    std::size_t max_len() const { return max_len_; }
    std::size_t size() const { return tracks_.size(); }
    bool empty() const { return tracks_.empty(); }
    bool contains(const std::string &cert) const { return tracks_.count(cert) != 0; }
    const std::map<std::string, TrackObject> &tracks() const { return tracks_; }
    std::vector<std::string> certificates() const;

    // returns false if an isomorphic track was already present
    bool insert(const TrackObject &t);
    bool insert(std::string cert, const TrackObject &t);

    bool operator==(const Language &o) const { return certificates() == o.certificates(); }

private:
    FragmentPtr frag_;
    std::size_t max_len_ = 0;
    std::map<std::string, TrackObject> tracks_;
};

// All tracks of fragment paths with at most max_len non-identity steps.
Language make_universe(const FragmentPtr &frag, std::size_t max_len);

// Tracks of accepting paths of X with at most max_len steps.
Language lang_of(const PresheafAutomaton &X, std::size_t max_len);

bool is_subset(const Language &a, const Language &b);
// members of the universe subsumed by some member of a, together with a
Language down_closure(const Language &a, const Language &universe);
bool is_down_closed(const Language &a, const Language &universe);

Language lang_union(const Language &a, const Language &b);
// products outside the universe are dropped
Language lang_concat(const Language &a, const Language &b, const Language &universe);
Language lang_plus(const Language &a, const Language &universe, std::size_t iters = 64);
// StarOnInfiniteObjects when the object set of the fragment is truncated
Language lang_star(const Language &a, const Language &universe, std::size_t iters = 64);
Language identity_language(const Language &universe);

std::pair<std::set<ObjId>, std::set<ObjId>> src_tgt(const Language &a);
Language localize(const Language &a, ObjId u, ObjId v);

struct RationalExpr {
    enum class Op { Empty, Atom, Union, Concat, Plus, Star };
    Op op = Op::Empty;
    std::string atom_ref;   // as written in the source text
    std::shared_ptr<const TrackObject> atom;
    std::shared_ptr<const RationalExpr> lhs, rhs;
};

// Prefix syntax: (empty) (atom REF) (union E E) (concat E E) (plus E) (star E).
// load resolves an atom reference to a track.
RationalExpr parse_rational(const std::string &text,
                            const std::function<TrackObject(const std::string &)> &load);
std::string rational_to_string(const RationalExpr &e);

// every node is down-closed in the universe
Language eval_rational(const RationalExpr &e, const Language &universe);

}  // namespace pshaut
