#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hbb/classifier.hpp"
#include "hbb/probe.hpp"

namespace hbb {

/// Serializes with every floating-point number printed as %.17g, so output
/// parses back to the same doubles. Object keys come out sorted.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// A finite double as a JSON number; inf and nan as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double x);
/// Inverse of json_number.
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExtExponent& p);
nlohmann::json to_json(const OperatorParams& params);
nlohmann::json to_json(const Inequality& ineq);
nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const Evidence& evidence);
nlohmann::json to_json(const RatioFamily& family);
nlohmann::json to_json(const ProbeReport& report);

ExtExponent exponent_from_json(const nlohmann::json& j);
/// Reads the object written by to_json(OperatorParams); validates it.
OperatorParams params_from_json(const nlohmann::json& j);

}  // namespace hbb
