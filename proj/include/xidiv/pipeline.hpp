#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xidiv/numerics.hpp"

namespace xidiv {

// One identifier per derivation display that gets a numeric both-sides check.
enum class StepId { S1 = 1, S2, S3, S4, S5, S6, S7, S8, S9, S10 };

enum class Verdict { pass, fail, measured_only };

std::string_view to_string(StepId id);
std::string_view to_string(Verdict v);
std::optional<StepId> parse_step_id(std::string_view text);
std::optional<Verdict> parse_verdict(std::string_view text);
std::vector<StepId> all_steps();

struct StepReport {
  StepId step_id = StepId::S1;
  std::string description;
  nlohmann::json inputs = nlohmann::json::object();
  Complex lhs;
  Complex rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  Verdict verdict = Verdict::measured_only;
  std::optional<double> tolerance_used;
  std::int64_t runtime_ms = 0;
  // Step-specific measurements beyond the lhs/rhs pair.
  nlohmann::json details = nlohmann::json::object();
  // Set when the underlying evaluation threw; verdict is then fail for
  // toleranced steps and measured_only otherwise.
  std::optional<std::string> error;

  bool failed() const { return verdict == Verdict::fail; }
};

/// Default parameter record of a step; run_step merges caller overrides
/// into it.
nlohmann::json default_params(StepId id, const NumericConfig& cfg);

/// Runs one step. Evaluation errors are captured in the report. runtime_ms
/// stays 0 unless record_timing is set, keeping reports byte-reproducible.
StepReport run_step(StepId id, const nlohmann::json& params, const NumericConfig& cfg,
                    bool record_timing = false);

/// S1..S10 with default parameters, in step order.
std::vector<StepReport> run_all(const NumericConfig& cfg, bool record_timing = false);

bool any_failed(std::span<const StepReport> reports);

}  // namespace xidiv
