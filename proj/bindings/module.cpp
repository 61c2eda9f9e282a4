// module.cpp - python bindings for the miseclab core
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "miseclab/circuit.hpp"
#include "miseclab/em_channel.hpp"
#include "miseclab/errors.hpp"
#include "miseclab/geometry.hpp"
#include "miseclab/metrics.hpp"
#include "miseclab/scenario.hpp"

namespace py = pybind11;
using namespace miseclab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Underwater magnetic-induction link simulator with an eavesdropper node";

    py::register_exception<degenerate_geometry_error>(m, "DegenerateGeometryError");
    py::register_exception<numeric_error>(m, "NumericError");
    py::register_exception<not_found_error>(m, "NotFoundError");
    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<io_error>(m, "IoError");

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Vec3{x, y, z}; }),
             py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("dot", &Vec3::dot)
        .def("cross", &Vec3::cross)
        .def("norm", &Vec3::norm)
        .def("normalized", &Vec3::normalized)
        .def("__repr__", [](const Vec3& v) {
            std::ostringstream os;
            os << "Vec3(" << v.x << ", " << v.y << ", " << v.z << ")";
            return os.str();
        });

    py::class_<NodePose>(m, "NodePose")
        .def(py::init<>())
        .def(py::init(&make_pose), py::arg("position"), py::arg("axis"))
        .def_readwrite("position", &NodePose::position)
        .def_readwrite("axis", &NodePose::axis);

    py::enum_<CoilTopology>(m, "CoilTopology")
        .value("series_capacitor", CoilTopology::series_capacitor)
        .value("parallel_capacitor", CoilTopology::parallel_capacitor);

    py::class_<CoilSpec>(m, "CoilSpec")
        .def(py::init<>())
        .def_readwrite("radius", &CoilSpec::radius)
        .def_readwrite("turns", &CoilSpec::turns)
        .def_readwrite("inductance", &CoilSpec::inductance)
        .def_readwrite("capacitance", &CoilSpec::capacitance)
        .def_readwrite("topology", &CoilSpec::topology)
        .def_readwrite("wire_resistance", &CoilSpec::wire_resistance)
        .def_readwrite("load_resistance", &CoilSpec::load_resistance)
        .def("area", &CoilSpec::area);

    py::class_<Medium>(m, "Medium")
        .def(py::init<>())
        .def_readwrite("conductivity", &Medium::conductivity)
        .def_readwrite("relative_permeability", &Medium::relative_permeability)
        .def_readwrite("noise_power", &Medium::noise_power);

    py::class_<FieldSample>(m, "FieldSample")
        .def_readonly("x", &FieldSample::x)
        .def_readonly("y", &FieldSample::y)
        .def_readonly("z", &FieldSample::z);

    py::class_<DriveSpec>(m, "DriveSpec")
        .def(py::init<>())
        .def_readwrite("node", &DriveSpec::node)
        .def_readwrite("amplitude", &DriveSpec::amplitude)
        .def_readwrite("frequency", &DriveSpec::frequency);

    py::class_<Node>(m, "Node")
        .def(py::init<>())
        .def_readwrite("id", &Node::id)
        .def_readwrite("coil", &Node::coil)
        .def_readwrite("pose", &Node::pose);

    py::enum_<SweepKind>(m, "SweepKind")
        .value("translate", SweepKind::translate)
        .value("orbit", SweepKind::orbit)
        .value("self_rotate", SweepKind::self_rotate)
        .value("standoff", SweepKind::standoff);

    py::enum_<SweepPlane>(m, "SweepPlane")
        .value("xy", SweepPlane::xy)
        .value("xz", SweepPlane::xz)
        .value("yz", SweepPlane::yz);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("kind", &SweepSpec::kind)
        .def_readwrite("subject", &SweepSpec::subject)
        .def_readwrite("anchor", &SweepSpec::anchor)
        .def_readwrite("anchor_point", &SweepSpec::anchor_point)
        .def_readwrite("has_anchor_point", &SweepSpec::has_anchor_point)
        .def_readwrite("direction", &SweepSpec::direction)
        .def_readwrite("start", &SweepSpec::start)
        .def_readwrite("stop", &SweepSpec::stop)
        .def_readwrite("step", &SweepSpec::step)
        .def_readwrite("plane", &SweepSpec::plane);

    py::enum_<Detection>(m, "Detection")
        .value("clear", Detection::clear)
        .value("suspected", Detection::suspected);

    py::class_<SecrecyReport>(m, "SecrecyReport")
        .def_readonly("snr_rx", &SecrecyReport::snr_rx)
        .def_readonly("snr_e", &SecrecyReport::snr_e)
        .def_readonly("snr_rx_db", &SecrecyReport::snr_rx_db)
        .def_readonly("snr_e_db", &SecrecyReport::snr_e_db)
        .def_readonly("secrecy_capacity", &SecrecyReport::secrecy_capacity)
        .def_readonly("positive_secrecy", &SecrecyReport::positive_secrecy);

    py::class_<LinkSolution>(m, "LinkSolution")
        .def_readonly("node_ids", &LinkSolution::node_ids)
        .def_readonly("currents", &LinkSolution::currents)
        .def_readonly("load_voltages", &LinkSolution::load_voltages)
        .def_readonly("frequency", &LinkSolution::frequency)
        .def_readonly("mutual", &LinkSolution::mutual)
        .def_readonly("residual", &LinkSolution::residual)
        .def("index_of", &LinkSolution::index_of);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("medium", &Scenario::medium)
        .def_readwrite("drive", &Scenario::drive)
        .def_readwrite("nodes", &Scenario::nodes)
        .def_readwrite("has_sweep", &Scenario::has_sweep)
        .def_readwrite("sweep", &Scenario::sweep)
        .def_readwrite("secondary_sweep", &Scenario::secondary_sweep)
        .def_readwrite("detector_threshold", &Scenario::detector_threshold)
        .def_readwrite("columns", &Scenario::columns);

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("sweep_value", &ResultRow::sweep_value)
        .def_readonly("outer_value", &ResultRow::outer_value)
        .def_readonly("has_eve", &ResultRow::has_eve)
        .def_readonly("eve_position", &ResultRow::eve_position)
        .def_readonly("eve_axis", &ResultRow::eve_axis)
        .def_readonly("v_rx", &ResultRow::v_rx)
        .def_readonly("v_e", &ResultRow::v_e)
        .def_readonly("snr_rx_db", &ResultRow::snr_rx_db)
        .def_readonly("snr_e_db", &ResultRow::snr_e_db)
        .def_readonly("sc_bits", &ResultRow::sc_bits)
        .def_readonly("sc_clamped_bits", &ResultRow::sc_clamped_bits)
        .def_readonly("k_tx_rx", &ResultRow::k_tx_rx)
        .def_readonly("k_tx_e", &ResultRow::k_tx_e)
        .def_readonly("k_rx_e", &ResultRow::k_rx_e)
        .def_readonly("m_tx_rx", &ResultRow::m_tx_rx)
        .def_readonly("m_tx_e", &ResultRow::m_tx_e)
        .def_readonly("m_rx_e", &ResultRow::m_rx_e)
        .def_readonly("detector", &ResultRow::detector)
        .def_readonly("status", &ResultRow::status)
        .def_readonly("baseline_v_rx", &ResultRow::baseline_v_rx)
        .def_readonly("residual", &ResultRow::residual)
        .def_readonly("source_power", &ResultRow::source_power)
        .def_readonly("dissipated_power", &ResultRow::dissipated_power);

    py::class_<ResultTable>(m, "ResultTable")
        .def_readonly("columns", &ResultTable::columns)
        .def_readonly("rows", &ResultTable::rows)
        .def_readonly("warnings", &ResultTable::warnings);

    py::class_<FreqPoint>(m, "FreqPoint")
        .def_readonly("frequency", &FreqPoint::frequency)
        .def_readonly("v_rx", &FreqPoint::v_rx)
        .def_readonly("v_e", &FreqPoint::v_e)
        .def_readonly("snr_rx_db", &FreqPoint::snr_rx_db)
        .def_readonly("snr_e_db", &FreqPoint::snr_e_db)
        .def_readonly("sc_bits", &FreqPoint::sc_bits);

    // geometry
    m.def("ft_to_m", &ft_to_m, py::arg("feet"));
    m.def("m_to_ft", &m_to_ft, py::arg("meters"));
    m.def("angle_between", &angle_between, py::arg("a"), py::arg("b"));
    m.def("generate_sweep", &generate_sweep, py::arg("spec"), py::arg("base"));
    m.def("sweep_values", &sweep_values, py::arg("spec"));

    // em channel
    m.def("skin_depth", &skin_depth, py::arg("frequency"), py::arg("medium"));
    m.def("axial_b_field", &axial_b_field, py::arg("coil"), py::arg("current"),
          py::arg("distance"), py::arg("angle_theta"), py::arg("frequency"),
          py::arg("medium"));
    m.def("dipole_b_field", &dipole_b_field, py::arg("coil"), py::arg("pose"),
          py::arg("current"), py::arg("point"), py::arg("frequency"), py::arg("medium"));
    m.def("flux_through", &flux_through, py::arg("coil"), py::arg("pose"), py::arg("field"));
    m.def("induced_voltage", &induced_voltage, py::arg("flux"), py::arg("frequency"));
    m.def("mutual_inductance_coaxial", &mutual_inductance_coaxial, py::arg("tx"),
          py::arg("rx"), py::arg("distance"), py::arg("relative_permeability") = 1.0);
    m.def("mutual_inductance_general", &mutual_inductance_general, py::arg("coil_a"),
          py::arg("pose_a"), py::arg("coil_b"), py::arg("pose_b"), py::arg("medium"),
          py::arg("frequency"));
    m.def("coupling_coefficient", &coupling_coefficient, py::arg("mutual"),
          py::arg("inductance_a"), py::arg("inductance_b"));
    m.def("magnetic_moment", &magnetic_moment, py::arg("coil"), py::arg("current"),
          py::arg("theta"));

    // circuit
    m.def("self_impedance", &self_impedance, py::arg("coil"), py::arg("frequency"));
    m.def("load_tap_impedance", &load_tap_impedance, py::arg("coil"), py::arg("frequency"));
    m.def(
        "solve_link",
        [](const std::vector<Node>& nodes, const DriveSpec& drive, const Medium& medium) {
            return solve_network(build_network(nodes, drive, medium));
        },
        py::arg("nodes"), py::arg("drive"), py::arg("medium"),
        "Assemble and solve the coupled-coil network for one geometry.");

    // metrics
    m.def("snr", &snr, py::arg("load_voltage"), py::arg("load_resistance"),
          py::arg("noise_power"));
    m.def("to_db", &to_db, py::arg("ratio"));
    m.def("secrecy_capacity", &secrecy_capacity, py::arg("snr_rx"), py::arg("snr_e"));
    m.def("make_secrecy_report", &make_secrecy_report, py::arg("snr_rx"), py::arg("snr_e"));
    m.def("detect_intrusion", &detect_intrusion, py::arg("baseline_v_rx"),
          py::arg("observed_v_rx"),
          py::arg("relative_threshold") = default_detector_threshold);

    // scenarios
    m.def("table1_tx_coil", &table1_tx_coil);
    m.def("table1_pickup_coil", &table1_pickup_coil);
    m.def("default_medium", &default_medium);
    m.def("builtin_scenario_names", &builtin_scenario_names);
    m.def("builtin_scenario", &builtin_scenario, py::arg("name"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("validate_scenario", &validate_scenario, py::arg("scenario"));
    m.def("run", &run, py::arg("scenario"));
    m.def("write_csv",
          py::overload_cast<const ResultTable&, const std::string&>(&write_csv),
          py::arg("table"), py::arg("path"));
    m.def("frequency_sweep", &frequency_sweep, py::arg("scenario"), py::arg("f_start"),
          py::arg("f_stop"), py::arg("f_step"));
    m.def("write_freq_csv",
          py::overload_cast<const std::vector<FreqPoint>&, const std::string&>(&write_freq_csv),
          py::arg("points"), py::arg("path"));
    m.def("report_text", &report_text, py::arg("table"));

    m.attr("MU_0") = mu_0;
    m.attr("DEFAULT_DETECTOR_THRESHOLD") = default_detector_threshold;
#ifdef MISECLAB_VERSION
    m.attr("__version__") = MISECLAB_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
