#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "jstab/control_functions.hpp"
#include "jstab/derivations.hpp"
#include "jstab/sampling.hpp"

namespace jstab {

using Json = nlohmann::ordered_json;

// Matrices travel as {"rows", "cols", "re", "im"} with row-major nested
// arrays; models as {"kind", "m", "n"} with the basis rebuilt from the kind.
Json matrix_to_json(const ComplexMatrix& x);
ComplexMatrix matrix_from_json(const Json& j);

Json model_to_json(const JStarAlgebraModel& model);
std::shared_ptr<const JStarAlgebraModel> model_from_json(const Json& j);

Json derivation_spec_to_json(const InnerDerivationSpec& spec);
InnerDerivationSpec derivation_spec_from_json(const Json& j);

Json control_to_json(const PowerControl& ctrl);
PowerControl control_from_json(const Json& j);

Json sample_spec_to_json(const SampleSpec& spec);
SampleSpec sample_spec_from_json(const Json& j);

// Formats with 15 significant digits, the precision reports are written in.
std::string format_number(double v);

// JSON has no infinity literal; non-finite values travel as tagged strings.
Json finite_or_tag(double v);

} // namespace jstab
