#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lwr/flux.hpp"
#include "lwr/functionals.hpp"
#include "lwr/io.hpp"
#include "lwr/network.hpp"
#include "lwr/riemann.hpp"
#include "lwr/scenario.hpp"
#include "lwr/tracking.hpp"

namespace py = pybind11;
using namespace lwr;

namespace {

std::string scenario_kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::AppendixA: return "appendix_a";
    case ScenarioKind::AppendixB: return "appendix_b";
    case ScenarioKind::TrafficLightSwap: return "traffic_light_swap";
  }
  return "";
}

}  // namespace

PYBIND11_MODULE(_lwr, m) {
  m.doc() = "wave-front tracking for the LWR model on road networks";

  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<runaway_error>(m, "RunawayError", PyExc_RuntimeError);
  py::register_exception<engine_error>(m, "EngineError", PyExc_RuntimeError);

  py::enum_<Branch>(m, "Branch")
      .value("ascending", Branch::Ascending)
      .value("descending", Branch::Descending);

  py::class_<FluxModel>(m, "FluxModel")
      .def_static("smooth", &FluxModel::smooth, py::arg("fmax"))
      .def_static("kinked", &FluxModel::kinked, py::arg("base"),
                  py::arg("nu"))
      .def("__call__", &FluxModel::eval, py::arg("rho"))
      .def_property_readonly("sigma", &FluxModel::sigma)
      .def_property_readonly("fmax", &FluxModel::fmax)
      .def_property_readonly("nu", &FluxModel::nu)
      .def_property_readonly("c_lo", &FluxModel::c_lo)
      .def("tau", &FluxModel::tau, py::arg("rho"))
      .def("demand", &FluxModel::demand, py::arg("rho"))
      .def("supply", &FluxModel::supply, py::arg("rho"))
      .def("invert", &FluxModel::invert, py::arg("phi"), py::arg("branch"))
      .def("char_speed",
           py::overload_cast<double>(&FluxModel::char_speed, py::const_),
           py::arg("rho"));

  py::class_<RoadSpec>(m, "RoadSpec")
      .def(py::init<>())
      .def_readwrite("id", &RoadSpec::id)
      .def_readwrite("a", &RoadSpec::a)
      .def_readwrite("b", &RoadSpec::b)
      .def_readwrite("breaks", &RoadSpec::breaks)
      .def_readwrite("values", &RoadSpec::values)
      .def_property_readonly("length", &RoadSpec::length);

  py::class_<DistributionMatrix>(m, "DistributionMatrix")
      .def(py::init<>())
      .def_readwrite("m", &DistributionMatrix::m)
      .def_readwrite("n", &DistributionMatrix::n)
      .def_readwrite("entries", &DistributionMatrix::entries)
      .def("at",
           py::overload_cast<int, int>(&DistributionMatrix::at, py::const_),
           py::arg("j"), py::arg("i"));

  py::class_<ScheduleEntry>(m, "ScheduleEntry")
      .def(py::init<>())
      .def_readwrite("t", &ScheduleEntry::t)
      .def_readwrite("matrix", &ScheduleEntry::matrix)
      .def_readwrite("lights", &ScheduleEntry::lights);

  py::class_<JunctionSpec>(m, "JunctionSpec")
      .def(py::init<>())
      .def_readwrite("id", &JunctionSpec::id)
      .def_readwrite("incoming", &JunctionSpec::incoming)
      .def_readwrite("outgoing", &JunctionSpec::outgoing)
      .def_readwrite("schedule", &JunctionSpec::schedule)
      .def_readwrite("period", &JunctionSpec::period);

  py::class_<TrackingParams>(m, "TrackingParams")
      .def(py::init<>())
      .def_readwrite("delta", &TrackingParams::delta)
      .def_readwrite("horizon", &TrackingParams::horizon);

  py::class_<FluxParams>(m, "FluxParams")
      .def(py::init<>())
      .def_readwrite("family", &FluxParams::family)
      .def_readwrite("fmax", &FluxParams::fmax)
      .def_readwrite("nu", &FluxParams::nu)
      .def("build", &FluxParams::build);

  py::class_<NetworkSpec>(m, "NetworkSpec")
      .def(py::init<>())
      .def_readwrite("flux", &NetworkSpec::flux)
      .def_readwrite("roads", &NetworkSpec::roads)
      .def_readwrite("junctions", &NetworkSpec::junctions)
      .def_readwrite("tracking", &NetworkSpec::tracking)
      .def_readonly("warnings", &NetworkSpec::warnings)
      .def("road_index", &NetworkSpec::road_index, py::arg("id"))
      .def("validate", &NetworkSpec::validate);

  m.def("parse_network", &parse_network, py::arg("json_text"));
  m.def("serialize_network", &serialize_network, py::arg("spec"));

  py::class_<ScenarioParams>(m, "ScenarioParams")
      .def(py::init<>())
      .def_property(
          "kind",
          [](const ScenarioParams& p) { return scenario_kind_name(p.kind); },
          [](ScenarioParams& p, const std::string& name) {
            p.kind = parse_scenario_kind(name);
          })
      .def_readwrite("rho1_flux", &ScenarioParams::rho1_flux)
      .def_readwrite("alpha1", &ScenarioParams::alpha1)
      .def_readwrite("alpha2", &ScenarioParams::alpha2)
      .def_readwrite("beta1", &ScenarioParams::beta1)
      .def_readwrite("beta2", &ScenarioParams::beta2)
      .def_readwrite("tbar", &ScenarioParams::tbar)
      .def_readwrite("fmax", &ScenarioParams::fmax)
      .def_readwrite("delta", &ScenarioParams::delta)
      .def_readwrite("horizon", &ScenarioParams::horizon)
      .def_readwrite("with_wave", &ScenarioParams::with_wave);

  m.def("build_scenario", &build_scenario, py::arg("params"));
  m.def(
      "build_scenario",
      [](const std::string& name) {
        ScenarioParams p;
        p.kind = parse_scenario_kind(name);
        return build_scenario(p);
      },
      py::arg("name"));

  py::class_<FanFront>(m, "FanFront")
      .def_readonly("left", &FanFront::left)
      .def_readonly("right", &FanFront::right)
      .def_readonly("speed", &FanFront::speed)
      .def("__repr__", [](const FanFront& f) {
        return "FanFront(left=" + std::to_string(f.left) +
               ", right=" + std::to_string(f.right) +
               ", speed=" + std::to_string(f.speed) + ")";
      });

  m.def("rankine_hugoniot_speed", &rankine_hugoniot_speed, py::arg("flux"),
        py::arg("rho_l"), py::arg("rho_r"));
  m.def("solve_road_riemann", &solve_road_riemann, py::arg("rho_l"),
        py::arg("rho_r"), py::arg("flux"), py::arg("delta"));

  py::class_<FeasibleRegion>(m, "FeasibleRegion")
      .def_readonly("demand_bounds", &FeasibleRegion::demand_bounds)
      .def_readonly("supply_bounds", &FeasibleRegion::supply_bounds)
      .def_readonly("effective", &FeasibleRegion::effective)
      .def("contains", &FeasibleRegion::contains, py::arg("gamma"),
           py::arg("tol"));

  m.def("build_feasible_region", &build_feasible_region,
        py::arg("in_traces"), py::arg("out_traces"), py::arg("effective"),
        py::arg("flux"));
  m.def("maximize_through_flux", &maximize_through_flux, py::arg("region"));

  py::class_<JunctionSolution>(m, "JunctionSolution")
      .def_readonly("gamma_in", &JunctionSolution::gamma_in)
      .def_readonly("gamma_out", &JunctionSolution::gamma_out)
      .def_readonly("rho_hat", &JunctionSolution::rho_hat)
      .def_readonly("fans", &JunctionSolution::fans);

  m.def("solve_junction_riemann", &solve_junction_riemann,
        py::arg("in_traces"), py::arg("out_traces"), py::arg("effective"),
        py::arg("flux"), py::arg("delta"));
  m.def("effective_matrix", &effective_matrix, py::arg("entry"));

  py::class_<RoadProfile>(m, "RoadProfile")
      .def_readonly("a", &RoadProfile::a)
      .def_readonly("b", &RoadProfile::b)
      .def_readonly("xs", &RoadProfile::xs)
      .def_readonly("values", &RoadProfile::values)
      .def("trace_at_a", &RoadProfile::trace_at_a)
      .def("trace_at_b", &RoadProfile::trace_at_b);

  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("time", &Snapshot::time)
      .def_readonly("roads", &Snapshot::roads);

  m.def("total_variation", &total_variation, py::arg("snapshot"));
  m.def("flux_total_variation", &flux_total_variation, py::arg("snapshot"),
        py::arg("flux"));
  m.def("total_mass", &total_mass, py::arg("snapshot"));
  m.def("big_wave_count", &big_wave_count, py::arg("snapshot"),
        py::arg("spec"), py::arg("flux"));
  m.def("l1_distance", &l1_distance, py::arg("s1"), py::arg("s2"));

  py::enum_<EventKind>(m, "EventKind")
      .value("schedule_jump", EventKind::ScheduleJump)
      .value("junction_arrival", EventKind::JunctionArrival)
      .value("collision", EventKind::Collision)
      .value("free_end_exit", EventKind::FreeEndExit);

  py::class_<Event>(m, "Event")
      .def_readonly("time", &Event::time)
      .def_readonly("kind", &Event::kind)
      .def_readonly("road", &Event::road)
      .def_readonly("junction", &Event::junction);

  py::class_<EventRecord>(m, "EventRecord")
      .def_readonly("index", &EventRecord::index)
      .def_readonly("time", &EventRecord::time)
      .def_readonly("kind", &EventRecord::kind)
      .def_readonly("road_id", &EventRecord::road_id)
      .def_readonly("junction_id", &EventRecord::junction_id)
      .def_readonly("tv_flux_after", &EventRecord::tv_flux_after)
      .def_readonly("big_waves_after", &EventRecord::big_waves_after);

  py::class_<Simulation>(m, "Simulation")
      .def(py::init<const NetworkSpec&>(), py::arg("spec"))
      .def("initialize", &Simulation::initialize)
      .def_property_readonly("time", &Simulation::time)
      .def_property_readonly("event_count", &Simulation::event_count)
      .def_property_readonly("spec", &Simulation::spec,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("flux", &Simulation::flux,
                             py::return_value_policy::reference_internal)
      .def("next_event", &Simulation::next_event)
      .def("advance", &Simulation::advance)
      .def("run_until", &Simulation::run_until, py::arg("T"),
           py::arg("observer") = Simulation::Observer{})
      .def("snapshot", &Simulation::snapshot)
      .def("snapshot_at", &Simulation::snapshot_at, py::arg("t"))
      .def("event_log", &Simulation::event_log)
      .def("set_event_limit", &Simulation::set_event_limit, py::arg("limit"))
      .def("set_consistency_checks", &Simulation::set_consistency_checks,
           py::arg("on"));

  m.def("run_with_outputs", &run_with_outputs, py::arg("sim"),
        py::arg("horizon"), py::arg("out_dir"), py::arg("snapshot_times"));
}
