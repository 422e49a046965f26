#pragma once

#include "pshaut/path.hpp"

#include <string>
#include <vector>

namespace pshaut {

// Edge-labelled digraph with start/accept marks on vertices or edges.
struct Digraph {
    struct Edge {
        std::string name, src, tgt, label;
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<std::string> starts, accepts;
};

// over build_G(sigma); labels outside sigma raise UnknownLabel
PresheafAutomaton fsa_to_auto(const Digraph &g, const std::vector<std::string> &sigma);
// sigma = sorted distinct labels
PresheafAutomaton fsa_to_auto(const Digraph &g);
Digraph auto_to_fsa(const PresheafAutomaton &X);

// Words read along edge walks from a start vertex to an accept vertex, with at
// most max_letters letters. Plain digraph search, no presheaf machinery.
std::vector<std::vector<std::string>> fsa_words_oracle(const Digraph &g, std::size_t max_letters);

// the alternating path _ -s[a]-> a -t[a]-> _ ... in the fragment G(sigma)
Path word_path(const DCatFragment &G, const std::vector<std::string> &word);

}  // namespace pshaut
