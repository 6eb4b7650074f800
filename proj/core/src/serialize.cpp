#include "drawcouple/serialize.hpp"

#include <cmath>

#include "drawcouple/errors.hpp"

namespace drawcouple {

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const FiniteDistribution& dist) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : dist.atoms()) atoms.push_back({{"point", a.point}, {"prob", a.prob}});
  return {{"atoms", atoms}};
}

nlohmann::json to_json(const OrderCheckResult& result) {
  nlohmann::json j = {{"holds", result.holds}, {"worst_gap", finite_or_null(result.worst_gap)}};
  if (result.witness)
    j["witness"] = {{"threshold", result.witness->threshold},
                    {"lhs", result.witness->lhs},
                    {"rhs", result.witness->rhs}};
  else
    j["witness"] = nullptr;
  return j;
}

nlohmann::json to_json(const PopulationStats& stats) {
  return {{"delta", stats.delta}, {"alpha", stats.alpha}, {"mean_value", stats.mean_value}};
}

nlohmann::json to_json(const EntropyDiagnostics& diag) {
  return {{"sigma", diag.sigma},
          {"expected_Tn_given_I", diag.expected_Tn_given_I},
          {"a_diag", diag.a_diag},
          {"b_diag", diag.b_diag}};
}

nlohmann::json to_json(const ScreeningRecord& record) {
  nlohmann::json j = {{"stream", record.stream},
                      {"screen_times", record.screen_times},
                      {"i_sample", record.i_sample},
                      {"x", record.x},
                      {"y", record.y}};
  if (record.continuation)
    j["seed"] = {{"master_seed", record.continuation->spec().master_seed},
                 {"stream_index", record.continuation->spec().stream_index}};
  return j;
}

nlohmann::json to_json(const UrnTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const UrnStep& s : trace.steps) {
    steps.push_back({{"position", s.position},
                     {"label_D", s.label_upper},
                     {"label_d", s.label_lower == kUnlabelled ? nlohmann::json(nullptr)
                                                              : nlohmann::json(s.label_lower)},
                     {"size", s.size_before}});
  }
  return {{"d", trace.d},
          {"D", trace.big_d},
          {"steps", steps},
          {"k_sample", trace.k_sample},
          {"l_sample", trace.l_sample},
          {"w", trace.w},
          {"z", trace.z}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j = {{"check", report.check},
                      {"params", report.params},
                      {"statistic", finite_or_null(report.statistic)},
                      {"reference", finite_or_null(report.reference)},
                      {"ci", finite_or_null(report.ci_halfwidth)},
                      {"replicates", report.replicates},
                      {"verdict", to_string(report.verdict)}};
  if (report.seed)
    j["seed"] = {{"master_seed", report.seed->master_seed},
                 {"stream_index", report.seed->stream_index}};
  else
    j["seed"] = nullptr;
  return j;
}

nlohmann::json to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

nlohmann::json to_json(const Population& pop) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < pop.size(); ++i)
    arr.push_back({{"id", i + 1}, {"weight", pop.weights()[i]}, {"value", pop.values()[i]}});
  return arr;
}

FiniteDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw InvalidInput("distribution JSON needs an \"atoms\" array");
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_object() || !a.contains("point") || !a.contains("prob") ||
        !a["point"].is_number() || !a["prob"].is_number())
      throw InvalidInput("distribution atoms need numeric point and prob");
    atoms.push_back({a["point"].get<double>(), a["prob"].get<double>()});
  }
  return FiniteDistribution::from_atoms(std::move(atoms));
}

}  // namespace drawcouple
