#pragma once

#include "pshaut/lang.hpp"
#include "pshaut/models/fsa.hpp"
#include "pshaut/models/petri.hpp"
#include "pshaut/models/precubical.hpp"
#include "pshaut/models/vass.hpp"
#include "pshaut/openmap.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace pshaut {

using json = nlohmann::ordered_json;

// Schema errors are InvalidInput with a JSON pointer to the offending value.
json read_json_file(const std::filesystem::path &p);

// {"kind":"G","alphabet":[..]}, {"kind":"precube","dmax":n}, {"kind":"labeled_precube",...},
// {"kind":"V","r":..,"bound":[..],"vectors":[[..]]}, {"kind":"counter","base":{..},"r":..,"bound":[..]}
// or the explicit {"objects","morphisms","compose","window"} form.
FragmentPtr fragment_from_json(const json &j);
json fragment_descriptor(const DCatFragment &F);
json fragment_to_explicit_json(const DCatFragment &F);

// automaton.json; "fragment" may be inline or a file name relative to base_dir.
// "format":"digraph" and "format":"cells" select the FSA and precubical encoders.
PresheafAutomaton automaton_from_json(const json &j, const std::filesystem::path &base_dir = {});
PresheafAutomaton load_automaton(const std::filesystem::path &p);
json automaton_to_json(const PresheafAutomaton &X);

Digraph digraph_from_json(const json &j);
CellData cells_from_json(const json &j);

// {"shape":"ST..","nodes":[element names],"steps":[morphism names]}
Path path_from_json(const json &j, const PresheafAutomaton &X);
json path_to_json(const PresheafAutomaton &X, const Path &p);

// Either {"fragment":..,"path":{..}} with object names as nodes, or an automaton
// with one start and one accept element.
TrackObject track_from_json(const json &j, const std::filesystem::path &base_dir = {});
TrackObject load_track(const std::filesystem::path &p);
json track_to_json(const TrackObject &t);

PresheafMap map_from_json(const json &j, const std::filesystem::path &base_dir = {});

PetriNet petri_from_json(const json &j);
Vass vass_from_json(const json &j);
json vass_to_json(const Vass &v);

json language_to_json(const Language &L);

// category of elements in graphviz syntax, generators only
std::string elements_dot(const PresheafAutomaton &X);

}  // namespace pshaut
