#ifndef RUELLE_MAP_IO_HPP
#define RUELLE_MAP_IO_HPP

#include <string>
#include <utility>

#include <json.hpp>

#include "ruelle/family_sweep.hpp"
#include "ruelle/torus_map.hpp"

namespace ruelle {

struct MapDefinition {
    TorusMap map;
    TrigPolynomial g;
};

// Map definition file:
//   {"linear": [[a,b],[c,d]],
//    "displacement": [[{"k":[k1,k2],"re":..,"im":..}, ...], [ ... ]],
//    "g": [{"k":[k1,k2],"re":..,"im":..}, ...]}
// The matrix entries must be exact JSON integers; coefficients are doubles.
// "displacement" and "g" are optional (zero displacement, g = 1). Unknown
// keys anywhere are ParseError.
MapDefinition parse_map_definition(const nlohmann::json& j);
MapDefinition load_map_file(const std::string& path);

TrigPolynomial parse_trig_polynomial(const nlohmann::json& arr, const std::string& where);
nlohmann::json trig_polynomial_to_json(const TrigPolynomial& p);

// Sweep plan file: {"linear": ..., "base_displacement": [..,..],
//  "direction": [..,..], "g": [...], "g_direction": [...],
//  "t_values": [...], "pipeline": {"trace_order":..,"cutoff":..,"gamma":..,
//  "sigma":..,"r_min":..,"r_grid":[...],"newton_tol":..}}
SweepPlan load_sweep_plan(const std::string& path);

// Atomic write: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace ruelle

#endif
