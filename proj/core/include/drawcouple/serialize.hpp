#pragma once

#include <nlohmann/json.hpp>

#include "drawcouple/bounds.hpp"
#include "drawcouple/coupling.hpp"
#include "drawcouple/distribution.hpp"
#include "drawcouple/harness.hpp"
#include "drawcouple/oracle.hpp"
#include "drawcouple/population.hpp"

// JSON views of the library's result types. Non-finite numbers become null.

namespace drawcouple {

nlohmann::json to_json(const FiniteDistribution& dist);
nlohmann::json to_json(const OrderCheckResult& result);
nlohmann::json to_json(const PopulationStats& stats);
nlohmann::json to_json(const EntropyDiagnostics& diag);
nlohmann::json to_json(const ScreeningRecord& record);
nlohmann::json to_json(const UrnTrace& trace);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const std::vector<VerificationReport>& reports);
nlohmann::json to_json(const Population& pop);

/// Parses a distribution from {"atoms":[{"point":..,"prob":..},...]}.
FiniteDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json finite_or_null(double x);

}  // namespace drawcouple
