#pragma once

#include "pshaut/presheaf.hpp"

#include <vector>

namespace pshaut {

struct TrackObject;

struct SearchOptions {
    bool preserve_marks = true;
    bool injective = false;
    bool bijective = false;  // implies injective; inverse naturality checked explicitly
    std::size_t limit = 0;   // 0: all
};

// element map Y -> X, indexed by element of Y
using ElementMap = std::vector<ElemId>;

std::vector<ElementMap> find_morphisms(const PresheafAutomaton &Y, const PresheafAutomaton &X,
                                       const SearchOptions &opts);

// independent full check of naturality, bases and (optionally) marks
bool is_morphism(const PresheafAutomaton &Y, const PresheafAutomaton &X, const ElementMap &m, bool marks);

bool accepts(const PresheafAutomaton &X, const TrackObject &g);
// g ⊑ d: a mark-preserving map g -> d exists
bool subsumes(const TrackObject &g, const TrackObject &d);

}  // namespace pshaut
