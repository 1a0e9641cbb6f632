#pragma once

// JSON encodings of the library's data.

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "rokhlin/circle_fn.hpp"
#include "rokhlin/dimension_drop.hpp"
#include "rokhlin/finite_action.hpp"
#include "rokhlin/matrix_models.hpp"
#include "rokhlin/return_times.hpp"
#include "rokhlin/rotation_towers.hpp"
#include "rokhlin/towers.hpp"

namespace rokhlin::io {

using nlohmann::json;

json to_json(const PLFunction& f);
PLFunction pl_from_json(const json& j);

/// Tower systems over PL functions ("pl" elements) or over functions on a
/// finite set ("vector" elements).
using AnySystem = std::variant<TowerSystem<PLFunction>, TowerSystem<FiniteFunction>>;

json to_json(const TowerSystem<PLFunction>& sys);
json to_json(const TowerSystem<FiniteFunction>& sys);
json to_json(const AnySystem& sys);
AnySystem system_from_json(const json& j);

/// Either a finite group action, a circle rotation, or a single permutation
/// generating a Z-action.
struct ActionSpec {
    std::optional<FiniteAction> finite;
    std::optional<ParsedReal> rotation;
    std::optional<std::vector<int>> permutation;
};

json to_json(const FiniteAction& action);
json rotation_action_json(const ParsedReal& theta);
ActionSpec action_from_json(const json& j);

json to_json(const RotationCertificate& c);
json to_json(const CertifiedBound& b);
json to_json(const RokhlinReport& r);

json to_json(const SpliceMap& mu);
SpliceMap splice_from_json(const json& j);

json to_json(const ElementaryPolynomial& e);

json to_json(const ReturnDecomposition& dec);
ReturnDecomposition decomposition_from_json(const json& j);

json to_json(const DimDropPath& path);
DimDropPath path_from_json(const json& j);

}  // namespace rokhlin::io
