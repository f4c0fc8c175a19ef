#pragma once

// JSON encodings of regions, functions, kernels, integrands and reports.
//
//   region:   {"type":"interval","lo":0,"hi":1}
//             {"type":"ball","center":[0],"radius":1}
//             {"type":"annulus","center":[0],"r_in":0.5,"r_out":2}
//             {"type":"box","lo":[...],"hi":[...]}
//             {"type":"union","parts":[...]}
//             {"type":"difference","outer":{...},"hole":{...}}
//   function: {"dim":1,"pieces":[{"value":2,"region":{...}}, ...]}
//   kernel:   {"type":"indicator","R":1} | {"type":"radial","expr":"exp(-r)"}
//             {"type":"field","expr":"min(abs(x1),2)"}
//             {"type":"table","r":[...],"values":[...],"mode":"step"|"linear"}
//   witness:  {"i":1,"j":2,"y":[1,1],"h":1,"k":1}   (1-based coordinates)

#include <string>

#include <json.hpp>

#include "rlab/functionals.hpp"
#include "rlab/necessity.hpp"

namespace rlab::io {

using nlohmann::json;

json to_json(const Region& r);
Region region_from_json(const json& j);

json to_json(const SimpleFunction& f);
SimpleFunction function_from_json(const json& j);

json to_json(const Kernel& k);
Kernel kernel_from_json(const json& j);

/// `spec` is either an expression string (with `arity`) or
/// {"table":{"axes":[[...],...],"values":[...]}}.
Integrand integrand_from_json(const json& spec, std::size_t arity);

json to_json(const IntegralEstimate& e);
json to_json(const SupermodularityWitness& w);
SupermodularityWitness witness_from_json(const json& j);
json to_json(const CounterexampleReport& r);

/// Columns: R_or_pair,lhs,rhs,gap,I_eps,I_R,stderr.
std::string to_csv(const CounterexampleReport& r);

/// Reads and parses a JSON file; throws ConstructionError on failure.
json load_json_file(const std::string& path);

}  // namespace rlab::io
