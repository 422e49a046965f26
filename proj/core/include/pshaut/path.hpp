#pragma once

#include "pshaut/presheaf.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pshaut {

// S: upstep along a formorphism, T: downstep along a backmorphism,
// I: invertible step (stored in the S direction).
enum class StepKind : char { Up = 'S', Down = 'T', Iso = 'I' };

// A path in an automaton. Paths in a fragment are paths in its terminal
// automaton, whose i-th element lies over the i-th object.
struct Path {
    std::vector<StepKind> shape;
    std::vector<ElemId> nodes;
    std::vector<MorId> steps;

    std::size_t length() const { return steps.size(); }
    ElemId source() const { return nodes.front(); }
    ElemId target() const { return nodes.back(); }
    bool operator==(const Path &) const = default;
};

std::string shape_string(const Path &p);
std::string path_to_string(const PresheafAutomaton &X, const Path &p);

Path constant_path(ElemId x);
// a single step; the kind is taken from the polarity of phi (S preferred)
Path step_path(const PresheafAutomaton &X, ElemId from, MorId phi, ElemId to, StepKind kind);

ValidationReport validate_path(const PresheafAutomaton &X, const Path &p);

Path concat_paths(const Path &a, const Path &b);  // EndpointMismatch
std::vector<Path> steps_of(const Path &p);

// the image in the fragment (nodes become object indices)
Path project(const PresheafAutomaton &X, const Path &p);
// drop identity steps
Path normalize_path(const DCatFragment &F, const Path &p);

// Visit all paths with at most maxlen non-identity steps starting in `from`.
// Upsteps (via co_act) come before downsteps (via act), morphisms in hom order.
// With accepting_only, only paths from start to accept elements are reported.
// The visitor returns false to stop.
void for_each_path(const PresheafAutomaton &X, const std::vector<ElemId> &from, std::size_t maxlen,
                   bool accepting_only, const std::function<bool(const Path &)> &visit);
std::vector<Path> enumerate_paths(const PresheafAutomaton &X, const std::vector<ElemId> &from,
                                  std::size_t maxlen, bool accepting_only);

// paths in X lying over the fragment path omega (same shape and steps)
std::vector<Path> lifts(const PresheafAutomaton &X, const Path &omega);
std::size_t count_lifts(const PresheafAutomaton &X, const Path &omega);

struct PathMorphism {
    std::vector<std::size_t> object_map;
};

// basepoint-preserving functors F between the linear shapes with a = b∘F
std::vector<PathMorphism> path_morphisms(const PresheafAutomaton &X, const Path &a, const Path &b);
bool refines(const PresheafAutomaton &X, const Path &a, const Path &b);

enum class Verdict { Yes, No, Unknown };
const char *verdict_name(Verdict v);

struct EquivResult {
    Verdict verdict = Verdict::Unknown;
    std::string reason;
    std::size_t moves = 0;
};

EquivResult path_equivalent(const PresheafAutomaton &X, const Path &a, const Path &b, std::size_t budget = 64);

}  // namespace pshaut
