#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crg/matrix.hpp"

namespace crg {

using Json = nlohmann::json;

/// {"conductor": N, "coeffs": [["p","q"], ...]}
Json to_json(const Cyclotomic& x);
Cyclotomic cyclotomic_from_json(const Json& j);

/// Array of rows of cyclotomic objects.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

struct GroupSpec {
    std::string name;
    long conductor = 1;
    std::size_t dimension = 0;
    std::vector<Matrix> generators;
};

/// {"name", "conductor", "dimension", "generators"}; throws std::invalid_argument on malformed input.
GroupSpec group_spec_from_json(const Json& j);
Json to_json(const GroupSpec& spec);
GroupSpec load_group_spec(const std::string& path);

}  // namespace crg
