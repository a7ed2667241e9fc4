#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hden/algebra/ratfunc.hpp"

namespace hden {

/// {"num": [[exp, "coeff"], ...], "den": [...]}, exponents ascending,
/// zero coefficients omitted.
nlohmann::json to_json(const RatFunc& f);
/// Inverse of to_json; the result is re-canonicalized.
RatFunc ratfunc_from_json(const nlohmann::json& j);

/// Parses a polynomial expression in q: integers, q, + - * / ^ and
/// parentheses, with implicit multiplication ("2q^5", "q(q+1)"). Accepts the
/// output of RatFunc::to_string and Laurent::to_string. Throws InvalidArgument.
RatFunc parse_ratfunc(std::string_view text);

}  // namespace hden
