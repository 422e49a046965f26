#pragma once

#include "pshaut/path.hpp"

#include <string>
#include <vector>

namespace pshaut {

struct Vass {
    struct Edge {
        std::string name, src;
        std::vector<int> vec;
        std::string tgt;
        bool operator==(const Edge &) const = default;
    };
    std::size_t r = 0;
    std::vector<std::string> Q;
    std::vector<Edge> E;
    bool operator==(const Vass &) const = default;
};

struct VassConfig {
    std::string q;
    std::vector<int> u;
    bool operator==(const VassConfig &) const = default;
};

struct VassRun {
    std::vector<VassConfig> configs;
    std::vector<std::size_t> edges;  // indices into Vass::E
    bool operator==(const VassRun &) const = default;
};

std::vector<int> positive_part(const std::vector<int> &u);
std::vector<int> negative_part(const std::vector<int> &u);

// Over build_V(r, bound, edge vectors). Vertex elements "q@v", edge elements "e@v".
PresheafAutomaton vass_to_presheaf(const Vass &v, const std::vector<int> &bound);
// reads Q and E off the counter-0 fibre
Vass presheaf_to_vass(const PresheafAutomaton &X);

// direct simulation, runs in DFS order (edges in list order)
std::vector<VassRun> vass_run_oracle(const Vass &v, const VassConfig &start, std::size_t maxlen);

// decode a path of vass_to_presheaf / vass_to_counter_auto into a run (even length,
// vertex elements at even positions)
VassRun path_to_run(const Vass &v, const PresheafAutomaton &X, const Path &p);

}  // namespace pshaut
