#pragma once

// JSON state files:
//   {"dims": [2, 2], "kind": "pure",  "amplitudes": [[re, im], ...]}
//   {"dims": [2, 2], "kind": "mixed", "matrix": [[[re, im], ...], ...]}
// Amplitudes and matrix rows follow the row-major product basis.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include "minlab/qcore.hpp"

namespace minlab {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed state description (bad JSON, wrong shapes, invalid values).
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using StateInput = std::variant<PureState, DensityOperator>;

[[nodiscard]] StateInput parse_state_json(const std::string& text);
[[nodiscard]] StateInput load_state_file(const std::filesystem::path& path);

[[nodiscard]] std::string state_to_json(const StateInput& state);

[[nodiscard]] DensityOperator as_density(const StateInput& state);
[[nodiscard]] const DimensionProfile& profile_of(const StateInput& state);

}  // namespace minlab
