#pragma once

#include <istream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "xidiv/divisibility.hpp"
#include "xidiv/mixture.hpp"
#include "xidiv/numerics.hpp"
#include "xidiv/pipeline.hpp"
#include "xidiv/scanner.hpp"

namespace xidiv {

// Config files are flat "key = value" lines; '#' starts a comment. Unknown
// keys and malformed numbers raise ArgumentError.
NumericConfig parse_config(std::string_view text);
NumericConfig load_config(const std::string& path);
std::string format_config(const NumericConfig& cfg);

/// 17 significant digits, the CSV number format.
std::string format_number(double x);

/// Mixture CSV: "x,weight" rows, optional header line, '#' comments.
DiscreteMixture read_mixture_csv(std::istream& in);

/// Serialized with 2-space indentation and a trailing newline.
std::string dump_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const NumericConfig& cfg);
void from_json(const nlohmann::json& j, NumericConfig& cfg);
void to_json(nlohmann::json& j, const CMReport& r);
void from_json(const nlohmann::json& j, CMReport& r);
void to_json(nlohmann::json& j, const QuadResult& r);
void to_json(nlohmann::json& j, const ZeroList& z);
void from_json(const nlohmann::json& j, ZeroList& z);
void to_json(nlohmann::json& j, const StripCensus& c);
void from_json(const nlohmann::json& j, StripCensus& c);
void to_json(nlohmann::json& j, const HalfIdentityReport& r);
void from_json(const nlohmann::json& j, HalfIdentityReport& r);
void to_json(nlohmann::json& j, const StepReport& r);
void from_json(const nlohmann::json& j, StepReport& r);
void to_json(nlohmann::json& j, const GGCDiagnostics& d);
void to_json(nlohmann::json& j, const ZeroCorrespondence& z);
void to_json(nlohmann::json& j, const PhiEvaluation& p);

nlohmann::json complex_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
/// Non-finite values serialize as null; null reads back as +infinity.
nlohmann::json number_json(double x);
double number_from_json(const nlohmann::json& j);

}  // namespace xidiv
