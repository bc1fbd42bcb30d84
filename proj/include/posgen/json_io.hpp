#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "posgen/criteria.hpp"
#include "posgen/duality.hpp"
#include "posgen/semigroup.hpp"

namespace posgen {

using Json = nlohmann::ordered_json;

/// Malformed payload; the message names the offending field path.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"n": int, "re": [[...]], "im": [[...]]}, row-major.
Json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j, const std::string& path = "$");

/// {"n": int, "rep": <CMatrix of size n^2>, "vec": "column-stacking"}.
Json superop_to_json(const Superoperator& s);
Superoperator superop_from_json(const Json& j, const std::string& path = "$");

/// {"n", "kind", "superop" | "H" [, "V"]}; unknown fields are rejected.
Json generator_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const Json& j, const std::string& path = "$");

DensityMatrix density_from_json(const Json& j, const std::string& path = "$");

Json cone_verdict_to_json(const ConeVerdict& v);
Json contraction_to_json(const ContractionVerdict& v);
Json condition_to_json(const ConditionResult& r);
Json theorem1_to_json(const Theorem1Report& r);
Json theorem2_to_json(const Theorem2Report& r);
Json kossakowski_to_json(const KossakowskiReport& r);

}  // namespace posgen
