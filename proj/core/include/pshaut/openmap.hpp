#pragma once

#include "pshaut/lang.hpp"
#include "pshaut/morphsearch.hpp"

#include <memory>
#include <optional>
#include <string>

namespace pshaut {

struct PresheafMap {
    std::shared_ptr<const PresheafAutomaton> from, to;
    ElementMap assign;  // indexed by element of from
};

// naturality and bases; marks are not required
ValidationReport validate_map(const PresheafMap &f);
// g∘f
PresheafMap compose_maps(const PresheafMap &g, const PresheafMap &f);
PresheafMap identity_map(std::shared_ptr<const PresheafAutomaton> X);

enum class OpenDirection { Future, Past };

// phi: V -> U, y over V in Y, x over U in X with X[phi](x) = f(y) and no
// y' over U with Y[phi](y') = y and f(y') = x
struct OpenCounterexample {
    MorId phi;
    ElemId y, x;
};

struct OpenResult {
    bool open = true;
    std::optional<OpenCounterexample> counterexample;
    std::size_t triples_checked = 0;
};

OpenResult check_open(const PresheafMap &f, OpenDirection dir);
inline OpenResult is_future_open(const PresheafMap &f) { return check_open(f, OpenDirection::Future); }
inline OpenResult is_past_open(const PresheafMap &f) { return check_open(f, OpenDirection::Past); }

std::string describe(const PresheafMap &f, const OpenCounterexample &c);

struct PreservationReport {
    OpenDirection dir = OpenDirection::Future;
    // "theorem" for future, "conjectured mirror" for past
    std::string status;
    bool morphism_ok = false;  // natural and mark preserving
    bool open = false;
    bool initial_ok = false;   // future: start(X) ⊆ f(start(Y)); past: accept(X) ⊆ f(accept(Y))
    bool final_ok = false;     // future: accept(Y) = f⁻¹(accept(X)); past: start(Y) = f⁻¹(start(X))
    bool hypotheses_hold() const { return morphism_ok && open && initial_ok && final_ok; }
    bool checked = false;      // languages were compared
    bool equal = false;
    std::size_t size_from = 0, size_to = 0;
    std::optional<OpenCounterexample> counterexample;
};

PreservationReport check_lang_preservation(const PresheafMap &f, std::size_t max_len,
                                           OpenDirection dir = OpenDirection::Future);

}  // namespace pshaut
