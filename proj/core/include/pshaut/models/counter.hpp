#pragma once

#include "pshaut/models/vass.hpp"

namespace pshaut {

// Over product_with_counter(build_G({"a"}), r, bound): vertices (q,v), edges (e,v)
// for v <= bound. Edges whose source or target configuration leaves the window are
// left out.
PresheafAutomaton vass_to_counter_auto(const Vass &v, const std::vector<int> &bound);

// Inverse on the image. NotAVassImage when the counter action on vertices or
// edges is not free (cycles, fixed points, collisions) or the edge vectors
// cannot be read off.
Vass counter_auto_to_vass(const PresheafAutomaton &X);

// The quotient automaton: vertices {x}x{0..n-1} and {y}x{0..m}, edges {v}xN with
// s(v,k) = (x, k mod n) and t(v,k) = (y, min(k,m)); edges truncated at bound.
PresheafAutomaton quotient_counter_auto(int n, int m, int bound);

}  // namespace pshaut
