#pragma once

#include "pshaut/presheaf.hpp"

#include <map>
#include <string>
#include <vector>

namespace pshaut {

struct CellData {
    // cells[n] lists the n-cells
    std::vector<std::vector<std::string>> cells;
    // faces[cell]["d0_1"] = face cell, for every generator d^eps_i
    std::map<std::string, std::map<std::string, std::string>> faces;
    std::vector<std::string> starts, accepts;
};

// over build_precube(dmax) with dmax = top dimension (or larger if given).
// Throws CubicalIdentityViolation naming the offending cell.
PresheafAutomaton precubical_from_cells(const CellData &data, int dmax = -1);

}  // namespace pshaut
