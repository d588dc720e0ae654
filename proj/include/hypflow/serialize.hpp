#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "hypflow/objective.hpp"
#include "hypflow/space.hpp"

namespace hypflow {

// Space documents:  {"format":1,"type":"graph","vertices":[0,..,n-1],
//                    "edges":[[u,v,w],...]}  (+ optional "kind",
//                    "declared_delta")  or  {"format":1,"type":"halfplane"}.
SpacePtr space_from_json(const nlohmann::json& j);
SpacePtr load_space_file(const std::string& path);

// Points: {"vertex":id} | {"edge":[u,v],"offset":x} | {"u":..,"v":..}.
nlohmann::json point_to_json(const Point& p);
Point point_from_json(const Space& space, const nlohmann::json& j);

// Objective descriptors:
//   {"type":"distance","p":<point>,"a":1.0}
//   {"type":"sqdist","p":<point>,"K":1.0,"R":10.0}
//   {"type":"sum","terms":[...]}
Objective objective_from_json(const SpacePtr& space, const nlohmann::json& j);

}  // namespace hypflow
