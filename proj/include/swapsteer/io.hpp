#pragma once

// JSON serialisation. Complex numbers are [re, im]; matrices are row-major
// lists of rows. State files:
//   {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}
//   {"dims": [dA, dB], "vector": [[re, im], ...]}

#include <string>

#include "json.hpp"
#include "swapsteer/criteria.hpp"
#include "swapsteer/network.hpp"
#include "swapsteer/sohs.hpp"

namespace swapsteer {

using Json = nlohmann::ordered_json;

Json to_json(const CMatrix& m);
Json to_json(const CVector& v);
Json to_json(const RVector& v);
CMatrix cmatrix_from_json(const Json& j);
CVector cvector_from_json(const Json& j);
RVector rvector_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho);
/// Accepts either state form; kets are turned into projectors.
DensityMatrix state_from_json(const Json& j);

/// kParse on unreadable files or malformed JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

DensityMatrix load_state(const std::string& path);
void save_state(const std::string& path, const DensityMatrix& rho);
/// Unitaries stored as bare matrices, {"matrix": ...}.
CMatrix load_matrix(const std::string& path);

Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json to_json(const PptReport& r);
Json to_json(const CcnReport& r);
Json to_json(const WitnessSpec& spec);
WitnessSpec witness_from_json(const Json& j);
Json to_json(const CorrelationTable& t);
Json to_json(const Scenario& s);
Json to_json(const ProductStrategy& s);
Json to_json(const BoundResult& r);

}  // namespace swapsteer
