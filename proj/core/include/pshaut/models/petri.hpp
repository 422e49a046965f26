#pragma once

#include "pshaut/presheaf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pshaut {

struct PetriNet {
    std::vector<std::string> places, transitions;
    // (place, transition) input arcs and (transition, place) output arcs
    std::vector<std::pair<std::string, std::string>> pre, post;
    std::vector<std::string> labels;  // per transition; empty: the transition name
    std::vector<int> m0;
};

// a(t), b(t) in {0,1}^P
std::vector<int> petri_pre(const PetriNet &net, std::size_t t);
std::vector<int> petri_post(const PetriNet &net, std::size_t t);

enum class PetriMode { Full, Nac, LeD };

struct PetriOptions {
    PetriMode mode = PetriMode::Nac;
    int d = 1;                        // LeD
    std::vector<int> counter_bound;   // per place
    std::optional<int> dim_bound;     // required for Full; caps the other modes
    bool nac_by_label = false;        // restrict nac words by labels instead of transitions
};

struct HdacResult {
    Presentation presentation;
    PresheafAutomaton automaton;
    // transition words used as shape objects, in shape order
    std::vector<std::vector<std::size_t>> words;
};

// Start mark (;m0) when m0 lies in the window; accept marks are left to the caller.
// FullModeInfinite for mode Full without dim_bound.
HdacResult petri_to_hdac(const PetriNet &net, const PetriOptions &opts);

std::string hdac_element_name(const PetriNet &net, const std::vector<std::size_t> &word, const std::vector<int> &v);

// token game; nullopt when a transition is not enabled
std::optional<std::vector<int>> petri_fire_oracle(const PetriNet &net, const std::vector<int> &marking,
                                                  const std::vector<std::size_t> &seq);

}  // namespace pshaut
