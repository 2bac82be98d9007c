#ifndef TFDCS_MODEL_JSON_HPP
#define TFDCS_MODEL_JSON_HPP

#include <string>

#include "tfdcs/model.hpp"

namespace tfdcs {

/// Parses a model document. Keys: p, q, a (array), b (array), hbar_omega,
/// spectrum {kind: "generalized"|"linear", optional E0}. Unknown keys are
/// rejected, as are p/q values inconsistent with the array lengths.
DeformedModel model_from_json(const std::string& text);

DeformedModel model_from_json_file(const std::string& path);

/// Canonical serialization; parses back to an identical model.
std::string model_to_json(const DeformedModel& model);

}  // namespace tfdcs

#endif
