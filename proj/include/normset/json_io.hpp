#ifndef NORMSET_JSON_IO_HPP
#define NORMSET_JSON_IO_HPP

#include <json.hpp>

#include "normset/functional.hpp"
#include "normset/params.hpp"
#include "normset/vector.hpp"

namespace normset {

using Json = nlohmann::json;

// Rationals travel as canonical "p/q" strings throughout.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

// {"leaf":{...}} / {"weighted":{...}} / {"elltwo":{...}} / {"special":{...}}
// / {"cset":{...}} / "zero"
Json tree_to_json(const FPtr& f);
FPtr tree_from_json(const Json& j);

Json params_to_json(const ParameterSystem& p);
ParameterSystem params_from_json(const Json& j);

} // namespace normset

#endif
