#pragma once

#include <json.hpp>

#include "quadforms/forms.hpp"

namespace qf {

using Json = nlohmann::json;

/// Integers are emitted as JSON numbers when they fit in 64 bits, decimal
/// strings otherwise; the parsers accept both.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

/// {"num": ..., "den": ...} with den > 0.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

/// {"n": ..., "hessian": [[...]]}
Json form_to_json(const QuadraticForm& q);
QuadraticForm form_from_json(const Json& j);

std::string rat_to_decimal(const Rat& r, int digits);

}  // namespace qf
