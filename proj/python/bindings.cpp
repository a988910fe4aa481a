// Python bindings for the filtering core: priors, noise models, the clique
// persistence filter, the suppression gate, the variant bank and the
// config-driven benchmark entry points.
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "cliquefilter/clique_filter.hpp"
#include "cliquefilter/config.hpp"
#include "cliquefilter/detection_model.hpp"
#include "cliquefilter/errors.hpp"
#include "cliquefilter/experiment.hpp"
#include "cliquefilter/filter_bank.hpp"
#include "cliquefilter/maintenance.hpp"
#include "cliquefilter/suppression.hpp"
#include "cliquefilter/survival_prior.hpp"

namespace py = pybind11;
using namespace cliquefilter;

namespace {

Eigen::Vector3d to_vec(const std::array<double, 3>& p) { return {p[0], p[1], p[2]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint clique landmark persistence filtering";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DegeneracyError>(m, "DegeneracyError");
  py::register_exception<UndefinedMetricError>(m, "UndefinedMetricError");

  py::class_<SurvivalPrior>(m, "SurvivalPrior")
      .def_static("exponential", &SurvivalPrior::exponential, py::arg("rate"))
      .def_static("piecewise_linear_cdf", &SurvivalPrior::piecewise_linear_cdf, py::arg("knots"))
      .def("cdf", &SurvivalPrior::cdf, py::arg("t"))
      .def("density", &SurvivalPrior::density, py::arg("t"))
      .def("interval_mass", &SurvivalPrior::interval_mass, py::arg("a"), py::arg("b"))
      .def("log_tail", &SurvivalPrior::log_tail, py::arg("t"));
  m.def("default_exponential_rate", &default_exponential_rate, py::arg("duration"));

  py::class_<SensorNoiseModel>(m, "SensorNoiseModel")
      .def_static("constant", &SensorNoiseModel::constant, py::arg("p_miss"), py::arg("p_false"))
      .def_static("range_degraded", &SensorNoiseModel::range_degraded, py::arg("s_max"),
                  py::arg("s_obs"), py::arg("p_false"))
      .def_property_readonly("p_false", &SensorNoiseModel::p_false)
      .def_property_readonly("p_miss", &SensorNoiseModel::p_miss)
      .def_property_readonly("s_max", &SensorNoiseModel::s_max)
      .def_property_readonly("s_obs", &SensorNoiseModel::s_obs)
      .def("miss_probability", &SensorNoiseModel::miss_probability, py::arg("distance"));
  m.def("range_miss_probability", &range_miss_probability, py::arg("s"), py::arg("s_max"),
        py::arg("s_obs"));

  py::class_<DetectionOutcome>(m, "DetectionOutcome")
      .def(py::init([](std::int64_t landmark_id, bool detected, double distance) {
             return DetectionOutcome{landmark_id, detected, distance};
           }),
           py::arg("landmark_id"), py::arg("detected"), py::arg("distance"))
      .def_readwrite("landmark_id", &DetectionOutcome::landmark_id)
      .def_readwrite("detected", &DetectionOutcome::detected)
      .def_readwrite("distance", &DetectionOutcome::distance)
      .def(py::self == py::self);

  py::class_<DetectionBatch>(m, "DetectionBatch")
      .def(py::init([](double time, std::vector<DetectionOutcome> outcomes) {
             return DetectionBatch{time, std::move(outcomes)};
           }),
           py::arg("time"), py::arg("outcomes"))
      .def_readwrite("time", &DetectionBatch::time)
      .def_readwrite("outcomes", &DetectionBatch::outcomes)
      .def("validate", &DetectionBatch::validate);
  m.def("detection_likelihood", &detection_likelihood, py::arg("outcome"), py::arg("noise"),
        py::arg("persisting"));

  py::class_<CliqueFilterState>(m, "CliqueFilterState")
      .def(py::init<std::int64_t>(), py::arg("clique_id"))
      .def_property_readonly("clique_id", &CliqueFilterState::clique_id)
      .def_property_readonly("update_count", &CliqueFilterState::update_count)
      .def_property_readonly("last_update_time", &CliqueFilterState::last_update_time)
      .def_property_readonly("log_likelihood", &CliqueFilterState::log_likelihood)
      .def_property_readonly("log_lower_partial_sum", &CliqueFilterState::log_lower_partial_sum)
      .def_property_readonly("log_evidence", &CliqueFilterState::log_evidence)
      .def("lower_partial_sum", &CliqueFilterState::lower_partial_sum)
      .def("evidence", &CliqueFilterState::evidence)
      .def("update", &CliqueFilterState::update, py::arg("batch"), py::arg("noise"),
           py::arg("prior"))
      .def("posterior", &CliqueFilterState::posterior, py::arg("t"), py::arg("prior"))
      .def("serialize", &CliqueFilterState::serialize)
      .def_static("deserialize", &CliqueFilterState::deserialize, py::arg("line"))
      .def(py::self == py::self);
  m.def("updated", &updated, py::arg("state"), py::arg("batch"), py::arg("noise"),
        py::arg("prior"));

  m.def(
      "suppress_from_distances",
      [](const std::vector<double>& member_distances, std::size_t positive_count, double s_max,
         double s_obs, double delta) {
        return suppress_from_distances(member_distances, positive_count, s_max, s_obs, delta);
      },
      py::arg("member_distances"), py::arg("positive_count"), py::arg("s_max"), py::arg("s_obs"),
      py::arg("delta"));
  m.def(
      "suppress_batch",
      [](const std::vector<std::array<double, 3>>& clique_positions,
         const std::array<double, 3>& sensor_position, const DetectionBatch& batch, double s_max,
         double s_obs, double delta) {
        std::vector<Eigen::Vector3d> positions;
        positions.reserve(clique_positions.size());
        for (const auto& p : clique_positions) positions.push_back(to_vec(p));
        return suppress_batch(positions, to_vec(sensor_position), batch, s_max, s_obs, delta);
      },
      py::arg("clique_positions"), py::arg("sensor_position"), py::arg("batch"), py::arg("s_max"),
      py::arg("s_obs"), py::arg("delta"));

  py::enum_<MaintenanceDecision>(m, "MaintenanceDecision")
      .value("keep", MaintenanceDecision::kKeep)
      .value("reject_new_measurements", MaintenanceDecision::kRejectNewMeasurements)
      .value("remove_from_map", MaintenanceDecision::kRemoveFromMap);
  m.def("classify", &classify, py::arg("posterior"), py::arg("rho_h"), py::arg("rho_l"));

  py::enum_<FilterVariant>(m, "FilterVariant")
      .value("iff", FilterVariant::kIff)
      .value("jff", FilterVariant::kJff)
      .value("jcf", FilterVariant::kJcf)
      .value("jcfr", FilterVariant::kJcfr);
  m.def("parse_variant", [](const std::string& name) { return parse_variant(name); },
        py::arg("name"));

  py::class_<VariantConfig>(m, "VariantConfig")
      .def(py::init<>())
      .def_readwrite("prior", &VariantConfig::prior)
      .def_readwrite("p_miss", &VariantConfig::p_miss)
      .def_readwrite("p_false", &VariantConfig::p_false)
      .def_readwrite("s_max", &VariantConfig::s_max)
      .def_readwrite("s_obs", &VariantConfig::s_obs)
      .def_readwrite("rho_h", &VariantConfig::rho_h)
      .def_readwrite("rho_l", &VariantConfig::rho_l)
      .def_readwrite("delta", &VariantConfig::delta)
      .def_readwrite("suppression", &VariantConfig::suppression);

  py::class_<MemberObservation>(m, "MemberObservation")
      .def(py::init([](std::int64_t landmark_id, bool candidate, bool detected, double distance) {
             return MemberObservation{landmark_id, candidate, detected, distance};
           }),
           py::arg("landmark_id"), py::arg("candidate"), py::arg("detected"), py::arg("distance"))
      .def_readwrite("landmark_id", &MemberObservation::landmark_id)
      .def_readwrite("candidate", &MemberObservation::candidate)
      .def_readwrite("detected", &MemberObservation::detected)
      .def_readwrite("distance", &MemberObservation::distance);

  py::class_<CliqueStep>(m, "CliqueStep")
      .def(py::init([](double time, std::int64_t clique_id, std::vector<MemberObservation> members) {
             CliqueStep step;
             step.time = time;
             step.clique_id = clique_id;
             step.members = std::move(members);
             return step;
           }),
           py::arg("time"), py::arg("clique_id"), py::arg("members"))
      .def_readwrite("time", &CliqueStep::time)
      .def_readwrite("clique_id", &CliqueStep::clique_id)
      .def_readwrite("members", &CliqueStep::members)
      .def("candidate_count", &CliqueStep::candidate_count)
      .def("detected_count", &CliqueStep::detected_count);

  py::class_<VariantFilter::StepResult>(m, "StepResult")
      .def_readonly("time", &VariantFilter::StepResult::time)
      .def_readonly("clique_id", &VariantFilter::StepResult::clique_id)
      .def_readonly("posterior", &VariantFilter::StepResult::posterior)
      .def_readonly("decision", &VariantFilter::StepResult::decision)
      .def_readonly("suppressed", &VariantFilter::StepResult::suppressed)
      .def_readonly("updated", &VariantFilter::StepResult::updated);

  py::class_<VariantFilter>(m, "VariantFilter")
      .def(py::init<FilterVariant, VariantConfig>(), py::arg("variant"), py::arg("config"))
      .def_property_readonly("variant", &VariantFilter::variant)
      .def("process", &VariantFilter::process, py::arg("step"))
      .def("clique_posterior", &VariantFilter::clique_posterior, py::arg("clique_id"),
           py::arg("t"))
      .def("landmark_posterior", &VariantFilter::landmark_posterior, py::arg("landmark_id"),
           py::arg("t"))
      .def("removed", &VariantFilter::removed, py::arg("clique_id"))
      .def("removal_time", &VariantFilter::removal_time, py::arg("clique_id"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("runs", &ExperimentConfig::runs)
      .def_readwrite("base_seed", &ExperimentConfig::base_seed)
      .def_readwrite("jobs", &ExperimentConfig::jobs)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir)
      .def_readwrite("duration_s", &ExperimentConfig::duration_s)
      .def_readwrite("rho_h", &ExperimentConfig::rho_h)
      .def_readwrite("rho_l", &ExperimentConfig::rho_l)
      .def_readwrite("delta", &ExperimentConfig::delta)
      .def_readonly("variants", &ExperimentConfig::variants)
      .def("variant_config", &ExperimentConfig::variant_config, py::arg("variant"));
  m.def("load_config", &load_config, py::arg("path"));
  m.def(
      "run_batch_summary_json",
      [](const ExperimentConfig& config) { return render_summary_json(run_batch(config)); },
      py::arg("config"),
      "Run the configured Monte Carlo benchmark and return the summary as a JSON string.");
  m.def(
      "run_batch_report",
      [](const ExperimentConfig& config) { return render_report(run_batch(config)); },
      py::arg("config"),
      "Run the configured Monte Carlo benchmark and return the human-readable report.");
}
