#pragma once

#include <string>

#include "json.hpp"
#include "monotone/fibered.hpp"
#include "monotone/hermitian.hpp"
#include "monotone/interval.hpp"
#include "monotone/loewner.hpp"
#include "monotone/witness.hpp"

// JSON views of every result type. Emission is deterministic: object keys
// come out sorted (nlohmann's default map) and doubles use the shortest
// round-tripping decimal form, so equal values always produce equal bytes.
// Readers throw ParseError on malformed or incomplete documents.

namespace monotone {

using json = nlohmann::json;

// Shortest decimal string that parses back to exactly the same double.
std::string shortest_double(double v);

json json_of(const HermitianMatrix& m);
HermitianMatrix hermitian_from_json(const json& j);

json json_of(const Interval& I);
Interval interval_from_json(const json& j);

json json_of(const PsdCertificate& c);
PsdCertificate certificate_from_json(const json& j);

json json_of(const MonotonicityVerdict& v);

json json_of(const GapSearchResult& r);

json json_of(const WitnessPair& w);
WitnessPair witness_from_json(const json& j);

json json_of(const WitnessCheck& c);

json json_of(const FiberedAlgebra& A);
FiberedAlgebra algebra_from_json(const json& j);

json json_of(const AmonotoneResult& r);

// Violations are truncated to the first 16; violation_count keeps the total.
json json_of(const MclassReport& r);

json json_of(const RelationReport& r);

// Wrapper for file and string input that maps nlohmann's errors to
// ParseError.
json parse_json(const std::string& text, const std::string& what);
json load_json_file(const std::string& path);

}
