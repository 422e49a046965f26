#include "pshaut/models/precubical.hpp"

#include <algorithm>

namespace pshaut {

PresheafAutomaton precubical_from_cells(const CellData &data, int dmax) {
    int top = static_cast<int>(data.cells.size()) - 1;
    FragmentPtr P = build_precube(std::max(dmax, std::max(top, 0)));
    AutomatonBuilder b(P);
    for (std::size_t n = 0; n < data.cells.size(); ++n) {
        ObjId o = P->object_by_name("[" + std::to_string(n) + "]");
        for (const auto &c : data.cells[n]) {
            if (b.find(c))
                throw Error(ErrorCode::InvalidInput, "duplicate cell " + c);
            b.add_element(c, o);
        }
    }
    auto cell = [&](const std::string &c) {
        auto e = b.find(c);
        if (!e)
            throw Error(ErrorCode::UnknownName, "cell " + c);
        return *e;
    };
    for (std::size_t n = 1; n < data.cells.size(); ++n) {
        ObjId o = P->object_by_name("[" + std::to_string(n) + "]");
        for (const auto &c : data.cells[n]) {
            auto it = data.faces.find(c);
            for (int eps = 0; eps <= 1; ++eps) {
                for (std::size_t i = 1; i <= n; ++i) {
                    std::string key = "d" + std::to_string(eps) + "_" + std::to_string(i);
                    const std::string *face = nullptr;
                    if (it != data.faces.end()) {
                        auto jt = it->second.find(key);
                        if (jt != it->second.end())
                            face = &jt->second;
                    }
                    if (!face)
                        throw Error(ErrorCode::InvalidInput, "cell " + c + " lacks face " + key);
                    b.set_act(P->resolve_morphism(key, o), cell(c), cell(*face));
                }
            }
        }
    }
    for (const auto &s : data.starts)
        b.add_start(cell(s));
    for (const auto &s : data.accepts)
        b.add_accept(cell(s));
    PresheafAutomaton X = b.build();
    ValidationReport rep = validate_automaton(X);
    if (!rep.ok()) {
        const Violation &v = rep.violations.front();
        std::string w;
        for (const auto &s : v.witness)
            w += (w.empty() ? "" : " ") + s;
        throw Error(ErrorCode::CubicalIdentityViolation, v.kind + ": " + w);
    }
    return X;
}

}  // namespace pshaut
