#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "uavdql/baselines.hpp"
#include "uavdql/errors.hpp"
#include "uavdql/learner.hpp"
#include "uavdql/metrics.hpp"
#include "uavdql/oracle.hpp"

namespace py = pybind11;
using namespace uavdql;

namespace {

template <typename Fn>
std::string to_text(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

void def_types(py::module_& m) {
    py::class_<PowerParams>(m, "PowerParams")
        .def(py::init<>())
        .def_readwrite("blade_profile_power", &PowerParams::blade_profile_power)
        .def_readwrite("induced_power", &PowerParams::induced_power)
        .def_readwrite("tip_speed", &PowerParams::tip_speed)
        .def_readwrite("induced_velocity", &PowerParams::induced_velocity)
        .def_readwrite("fuselage_drag_ratio", &PowerParams::fuselage_drag_ratio)
        .def_readwrite("air_density", &PowerParams::air_density)
        .def_readwrite("rotor_solidity", &PowerParams::rotor_solidity)
        .def_readwrite("rotor_disc_area", &PowerParams::rotor_disc_area)
        .def_readwrite("cruise_speed", &PowerParams::cruise_speed)
        .def("validate", &PowerParams::validate);

    py::class_<RevenueWeights>(m, "RevenueWeights")
        .def(py::init<>())
        .def(py::init([](double w1, double w2, double w3) { return RevenueWeights{w1, w2, w3}; }), py::arg("w1"),
             py::arg("w2"), py::arg("w3"))
        .def_static("parse", &parse_weights, py::arg("text"))
        .def_readwrite("w1", &RevenueWeights::w1)
        .def_readwrite("w2", &RevenueWeights::w2)
        .def_readwrite("w3", &RevenueWeights::w3)
        .def(py::self == py::self)
        .def("__repr__", [](const RevenueWeights& w) {
            return "RevenueWeights(" + format_real(w.w1) + ", " + format_real(w.w2) + ", " + format_real(w.w3) + ")";
        });

    py::class_<EnvConfig>(m, "EnvConfig")
        .def(py::init([](const PowerParams& p, const RevenueWeights& w) { return EnvConfig{p, w}; }),
             py::arg("power") = PowerParams{}, py::arg("weights") = RevenueWeights{})
        .def_readwrite("power", &EnvConfig::power)
        .def_readwrite("weights", &EnvConfig::weights);

    py::class_<Hyperparams>(m, "Hyperparams")
        .def(py::init<>())
        .def_readwrite("alpha", &Hyperparams::alpha)
        .def_readwrite("gamma", &Hyperparams::gamma)
        .def_readwrite("episodes", &Hyperparams::episodes)
        .def_readwrite("eps_full_until", &Hyperparams::eps_full_until)
        .def_readwrite("eps_zero_at", &Hyperparams::eps_zero_at)
        .def("validate", &Hyperparams::validate);

    py::class_<GridCell>(m, "GridCell")
        .def(py::init<int, int>(), py::arg("gx") = 0, py::arg("gy") = 0)
        .def_readwrite("gx", &GridCell::gx)
        .def_readwrite("gy", &GridCell::gy)
        .def(py::self == py::self)
        .def("__repr__", [](GridCell c) {
            return "GridCell(" + std::to_string(c.gx) + ", " + std::to_string(c.gy) + ")";
        });

    py::class_<Position>(m, "Position")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Position::x)
        .def_readwrite("y", &Position::y);

    py::class_<NodePoint>(m, "NodePoint")
        .def(py::init([](NodeId id, GridCell cell, int priority) { return NodePoint{id, cell, priority}; }),
             py::arg("id"), py::arg("cell"), py::arg("priority"))
        .def_readwrite("id", &NodePoint::id)
        .def_readwrite("cell", &NodePoint::cell)
        .def_readwrite("priority", &NodePoint::priority);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("grid_width", &Scenario::grid_width)
        .def_readwrite("grid_height", &Scenario::grid_height)
        .def_readwrite("cell_side", &Scenario::cell_side)
        .def_readwrite("uav_start", &Scenario::uav_start)
        .def_readwrite("nodes", &Scenario::nodes)
        .def_readwrite("seed", &Scenario::seed)
        .def("validate", &Scenario::validate)
        .def("__len__", &Scenario::node_count)
        .def(py::self == py::self)
        .def("to_text", [](const Scenario& s) { return to_text([&](std::ostream& o) { write_scenario(o, s); }); })
        .def_static(
            "from_text",
            [](const std::string& text) {
                std::istringstream in(text);
                return parse_scenario(in);
            },
            py::arg("text"));

    py::class_<SimState>(m, "SimState")
        .def_readonly("uav_cell", &SimState::uav_cell)
        .def_readonly("uav_pos", &SimState::uav_pos)
        .def_readonly("priorities", &SimState::priorities)
        .def_readonly("clock", &SimState::clock);

    py::class_<Transition>(m, "Transition")
        .def_readonly("action", &Transition::action)
        .def_readonly("served_priority", &Transition::served_priority)
        .def_readonly("t_s", &Transition::t_s)
        .def_readonly("distance", &Transition::distance)
        .def_readonly("energy", &Transition::energy)
        .def_readonly("revenue", &Transition::revenue)
        .def_readonly("next_state", &Transition::next_state);

    py::class_<EpisodeTrace>(m, "EpisodeTrace")
        .def_readonly("initial", &EpisodeTrace::initial)
        .def_readonly("steps", &EpisodeTrace::steps)
        .def("__len__", &EpisodeTrace::size)
        .def("order", &EpisodeTrace::order)
        .def("revenues", &EpisodeTrace::revenues)
        .def("total_energy", &EpisodeTrace::total_energy)
        .def("total_distance", &EpisodeTrace::total_distance)
        .def("accumulated_revenue", &EpisodeTrace::accumulated_revenue)
        .def("discounted_return", &EpisodeTrace::discounted_return, py::arg("gamma"))
        .def("to_csv", [](const EpisodeTrace& t) { return to_text([&](std::ostream& o) { write_trace_csv(o, t); }); });

    py::enum_<TableId>(m, "TableId").value("A", TableId::A).value("B", TableId::B);

    py::class_<QTablePair>(m, "QTablePair")
        .def(py::init<TableId>(), py::arg("first") = TableId::A)
        .def_property_readonly("selector", &QTablePair::selector)
        .def("entry_count", &QTablePair::entry_count)
        .def("empty", &QTablePair::empty)
        .def("dump", [](const QTablePair& t) { return to_text([&](std::ostream& o) { write_tables(o, t); }); })
        .def_static(
            "load",
            [](const std::string& text) {
                std::istringstream in(text);
                return parse_tables(in);
            },
            py::arg("text"))
        .def(py::self == py::self);

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("episode", &CurvePoint::episode)
        .def_readonly("accumulated_revenue", &CurvePoint::accumulated_revenue)
        .def_readonly("total_energy", &CurvePoint::total_energy)
        .def_readonly("epsilon", &CurvePoint::epsilon);

    py::class_<TrainingResult>(m, "TrainingResult")
        .def_readonly("tables", &TrainingResult::tables)
        .def_readonly("curve", &TrainingResult::curve)
        .def(
            "curve_csv",
            [](const TrainingResult& r, int window) {
                return to_text([&](std::ostream& o) { write_curve_csv(o, r.curve, window); });
            },
            py::arg("smoothing_window") = 0);

    py::class_<PolicyEvaluation>(m, "PolicyEvaluation")
        .def_readonly("trace", &PolicyEvaluation::trace)
        .def_readonly("discounted_return", &PolicyEvaluation::discounted_return)
        .def_readonly("total_energy", &PolicyEvaluation::total_energy)
        .def_readonly("serving_delay", &PolicyEvaluation::serving_delay);

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("order", &OracleResult::order)
        .def_readonly("discounted_return", &OracleResult::discounted_return);

    py::class_<DelayReport>(m, "DelayReport")
        .def_readonly("total_energy", &DelayReport::total_energy)
        .def("count", [](const DelayReport& r, int c) { return r.of_class(c).count; }, py::arg("priority"))
        .def("mean_delay", [](const DelayReport& r, int c) { return r.of_class(c).mean_delay; }, py::arg("priority"))
        .def("to_csv",
             [](const DelayReport& r) { return to_text([&](std::ostream& o) { write_delay_report_csv(o, r); }); });
}

void def_operations(py::module_& m) {
    m.def("power", &power, py::arg("params"), py::arg("speed"), "Propulsion power in watts.");
    m.def("flight_energy", &flight_energy, py::arg("params"), py::arg("distance"));
    m.def("revenue", &revenue, py::arg("weights"), py::arg("served_priority"), py::arg("waiting_priority_sum"),
          py::arg("t_s"), py::arg("energy"));

    m.def("position_of", &position_of, py::arg("scenario"), py::arg("cell"));
    m.def("distance", &distance, py::arg("a"), py::arg("b"));
    m.def("initial_state", &initial_state, py::arg("scenario"));
    m.def("is_terminal", &is_terminal, py::arg("state"));
    m.def("apply_action", &apply_action, py::arg("scenario"), py::arg("state"), py::arg("action"), py::arg("config"));
    m.def("generate_scenario", &generate_scenario, py::arg("seed"), py::arg("grid_width") = 6,
          py::arg("grid_height") = 6, py::arg("cell_side") = 50.0, py::arg("node_count") = 6);
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("save_scenario", &save_scenario, py::arg("path"), py::arg("scenario"));
    m.def("replay_order", [](const Scenario& s, const EnvConfig& c, const std::vector<NodeId>& order) {
        return replay_order(s, c, order);
    }, py::arg("scenario"), py::arg("config"), py::arg("order"));

    m.def("epsilon", [](const Hyperparams& hp, int episode) { return epsilon(EpsilonSchedule::from(hp), episode); },
          py::arg("hyperparams"), py::arg("episode"));
    m.def("train", &train, py::arg("scenario"), py::arg("config"), py::arg("hyperparams"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("evaluate_policy", &evaluate_policy, py::arg("scenario"), py::arg("config"), py::arg("tables"),
          py::arg("gamma"));

    m.def("greedy_rollout", &greedy_rollout, py::arg("scenario"), py::arg("config"));
    m.def("optimal_by_permutation", &optimal_by_permutation, py::arg("scenario"), py::arg("config"), py::arg("gamma"));
    m.def("optimal_by_dp", &optimal_by_dp, py::arg("scenario"), py::arg("config"), py::arg("gamma"));

    m.def("delay_report", &delay_report, py::arg("trace"), py::arg("scenario"));
    m.def("discounted_return", [](const std::vector<double>& r, double gamma) { return discounted_return(r, gamma); },
          py::arg("revenues"), py::arg("gamma"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Priority-aware UAV serving order with tabular double Q-learning";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    def_types(m);
    def_operations(m);
}
