#pragma once

#include "pshaut/path.hpp"

#include <string>
#include <vector>

namespace pshaut {

// Simple automaton: exactly one start (bottom) and one accept (top) element.
struct TrackObject {
    PresheafAutomaton automaton;
    // track_of only: class of (position i, id) for each path position
    std::vector<ElemId> section;

    ElemId bottom() const { return automaton.start().front(); }
    ElemId top() const { return automaton.accept().front(); }
    ObjId src_obj() const { return automaton.base(bottom()); }
    ObjId tgt_obj() const { return automaton.base(top()); }
};

// omega is a path in the fragment (terminal automaton numbering)
TrackObject track_of(const FragmentPtr &frag, const Path &omega);
// track of the image of a path in X
TrackObject track_of_path(const PresheafAutomaton &X, const Path &alpha);

TrackObject identity_track(const FragmentPtr &frag, ObjId u);
enum class Direction { Up, Down };
TrackObject elementary_track(const FragmentPtr &frag, MorId phi, Direction dir);  // PolarityMismatch
TrackObject concat_tracks(const TrackObject &a, const TrackObject &b);               // EndpointMismatch

bool iso_tracks(const TrackObject &a, const TrackObject &b);

// Invariant under isomorphism of marked automata. Also usable on arbitrary automata.
std::string canonical_certificate(const PresheafAutomaton &X);
std::string canonical_certificate(const TrackObject &t);

// number of elements per object dimension (Object::dim), index = dim
std::vector<std::size_t> cells_by_dim(const PresheafAutomaton &X);

// helper: a fragment path from object names and step morphism names
Path fragment_path(const DCatFragment &F, const std::vector<std::string> &objects,
                   const std::vector<std::string> &steps, const std::string &shape);

}  // namespace pshaut
