// scenario.cpp - built-in configurations and sweep execution
#include "miseclab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "miseclab/errors.hpp"

namespace miseclab {

CoilSpec table1_tx_coil() {
    CoilSpec coil;
    coil.topology = CoilTopology::series_capacitor;
    coil.load_resistance = 0.0;
    return coil;
}

CoilSpec table1_pickup_coil() {
    CoilSpec coil;
    coil.topology = CoilTopology::parallel_capacitor;
    coil.load_resistance = 50.0;
    return coil;
}

Medium default_medium() { return Medium{}; }

std::vector<std::string> builtin_scenario_names() {
    return {"config1", "config2", "config3", "config4", "config5", "secrecy_sweep"};
}

namespace {

constexpr Vec3 k_x_axis{1.0, 0.0, 0.0};

Node make_node(std::string id, CoilSpec coil, const Vec3& position_ft, const Vec3& axis) {
    NodePose pose = make_pose({ft_to_m(position_ft.x), ft_to_m(position_ft.y),
                               ft_to_m(position_ft.z)},
                              axis);
    return Node{std::move(id), coil, pose};
}

Scenario base_three_node(const std::string& name, const Vec3& rx_ft, const Vec3& eve_ft,
                         const Vec3& eve_axis) {
    Scenario s;
    s.name = name;
    s.medium = default_medium();
    s.drive = DriveSpec{};
    s.nodes = {make_node("tx", table1_tx_coil(), {0, 0, 0}, k_x_axis),
               make_node("rx", table1_pickup_coil(), rx_ft, k_x_axis),
               make_node("eve", table1_pickup_coil(), eve_ft, eve_axis)};
    s.has_sweep = true;
    return s;
}

} // namespace

Scenario builtin_scenario(const std::string& name) {
    if (name == "config1" || name == "config2") {
        // eavesdropper slides parallel to the tx-rx axis, far (y=3ft) or
        // near (y=1.5ft), facing the same way as the legitimate coils
        const double y = name == "config1" ? 3.0 : 1.5;
        Scenario s = base_three_node(name, {4, 0, 0}, {0, y, 0}, k_x_axis);
        s.sweep.kind = SweepKind::translate;
        s.sweep.subject = "eve";
        s.sweep.direction = k_x_axis;
        s.sweep.start = 0.0;
        s.sweep.stop = ft_to_m(4.0);
        s.sweep.step = ft_to_m(0.5);
        return s;
    }
    if (name == "config3") {
        // orbit about tx, radius 2ft, starting behind it
        Scenario s = base_three_node(name, {4, 0, 0}, {-2, 0, 0}, k_x_axis);
        s.sweep.kind = SweepKind::orbit;
        s.sweep.subject = "eve";
        s.sweep.anchor = "tx";
        s.sweep.start = 0.0;
        s.sweep.stop = 180.0;
        s.sweep.step = 30.0;
        return s;
    }
    if (name == "config4") {
        // orbit about rx, radius 2ft, starting beyond it; the radial axis
        // initially points back along -x toward rx
        Scenario s = base_three_node(name, {4, 0, 0}, {6, 0, 0}, {-1.0, 0.0, 0.0});
        s.sweep.kind = SweepKind::orbit;
        s.sweep.subject = "eve";
        s.sweep.anchor = "rx";
        s.sweep.start = 0.0;
        s.sweep.stop = 180.0;
        s.sweep.step = 30.0;
        return s;
    }
    if (name == "config5") {
        // legitimate pair 2ft apart, eavesdropper spinning in place at 4ft
        Scenario s = base_three_node(name, {2, 0, 0}, {4, 0, 0}, k_x_axis);
        s.sweep.kind = SweepKind::self_rotate;
        s.sweep.subject = "eve";
        s.sweep.start = 0.0;
        s.sweep.stop = 180.0;
        s.sweep.step = 15.0;
        return s;
    }
    if (name == "secrecy_sweep") {
        // rx walks away from tx; outer loop steps the eavesdropper standoff
        Scenario s = base_three_node(name, {0.5, 0, 0}, {0, 4.5, 0}, k_x_axis);
        s.sweep.kind = SweepKind::standoff;
        s.sweep.subject = "rx";
        s.sweep.anchor = "tx";
        s.sweep.start = ft_to_m(0.5);
        s.sweep.stop = ft_to_m(4.0);
        s.sweep.step = ft_to_m(0.5);
        SweepSpec outer;
        outer.kind = SweepKind::standoff;
        outer.subject = "eve";
        outer.anchor = "tx";
        outer.start = ft_to_m(4.5);
        outer.stop = ft_to_m(7.5);
        outer.step = ft_to_m(1.0);
        s.secondary_sweep = outer;
        return s;
    }
    std::string names;
    for (const std::string& n : builtin_scenario_names())
        names += (names.empty() ? "" : ", ") + n;
    throw not_found_error("unknown builtin scenario '" + name + "' (valid: " + names + ")");
}

void validate_scenario(const Scenario& scenario) {
    if (scenario.nodes.size() < 2)
        throw config_error("scenario: at least the tx and rx nodes are required");
    std::set<std::string> ids;
    for (const Node& node : scenario.nodes) {
        if (node.id != "tx" && node.id != "rx" && node.id != "eve")
            throw config_error("scenario: unknown node id '" + node.id +
                               "' (expected tx, rx, eve)");
        if (!ids.insert(node.id).second)
            throw config_error("scenario: duplicate node id '" + node.id + "'");
        try {
            validate_coil(node.coil, "node '" + node.id + "'");
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
        if (!node.pose.position.finite() || !node.pose.axis.finite())
            throw config_error("scenario: node '" + node.id + "' pose must be finite");
    }
    if (!ids.count("tx")) throw config_error("scenario: missing required node 'tx'");
    if (!ids.count("rx")) throw config_error("scenario: missing required node 'rx'");
    if (scenario.drive.node != "tx")
        throw config_error("scenario: the driven node must be 'tx'");
    try {
        validate_drive(scenario.drive);
        validate_medium(scenario.medium);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (!(scenario.detector_threshold > 0.0))
        throw config_error("scenario: detector_threshold must be > 0");
    if (scenario.has_sweep) {
        validate_sweep(scenario.sweep);
        if (!ids.count(scenario.sweep.subject))
            throw config_error("sweep: subject node '" + scenario.sweep.subject +
                               "' does not exist");
        if (!scenario.sweep.anchor.empty() && !ids.count(scenario.sweep.anchor))
            throw config_error("sweep: anchor node '" + scenario.sweep.anchor +
                               "' does not exist");
    }
    if (scenario.secondary_sweep) {
        validate_sweep(*scenario.secondary_sweep);
        if (!ids.count(scenario.secondary_sweep->subject))
            throw config_error("secondary sweep: subject node '" +
                               scenario.secondary_sweep->subject + "' does not exist");
        if (scenario.has_sweep &&
            scenario.secondary_sweep->subject == scenario.sweep.subject)
            throw config_error("secondary sweep: subject must differ from the primary sweep");
    }
    const std::vector<std::string>& known = all_result_columns();
    for (const std::string& col : scenario.columns)
        if (std::find(known.begin(), known.end(), col) == known.end())
            throw config_error("output: unknown column '" + col + "'");
}

namespace {

std::map<std::string, NodePose> base_poses(const Scenario& scenario) {
    std::map<std::string, NodePose> poses;
    for (const Node& node : scenario.nodes) poses[node.id] = node.pose;
    return poses;
}

std::vector<Node> with_pose(const std::vector<Node>& nodes, const std::string& id,
                            const NodePose& pose) {
    std::vector<Node> out = nodes;
    for (Node& node : out)
        if (node.id == id) node.pose = pose;
    return out;
}

} // namespace

std::vector<SweepPoint> sweep_points(const Scenario& scenario) {
    validate_scenario(scenario);
    std::vector<SweepPoint> points;
    if (!scenario.has_sweep) {
        points.push_back({0.0, std::numeric_limits<double>::quiet_NaN(), scenario.nodes});
        return points;
    }
    const auto poses = base_poses(scenario);

    struct Outer {
        double value;
        std::vector<Node> nodes;
    };
    std::vector<Outer> outers;
    if (scenario.secondary_sweep) {
        const std::vector<double> values = sweep_values(*scenario.secondary_sweep);
        const std::vector<NodePose> outer_poses = generate_sweep(*scenario.secondary_sweep, poses);
        for (std::size_t i = 0; i < values.size(); ++i)
            outers.push_back({values[i],
                              with_pose(scenario.nodes, scenario.secondary_sweep->subject,
                                        outer_poses[i])});
    } else {
        outers.push_back({std::numeric_limits<double>::quiet_NaN(), scenario.nodes});
    }

    const std::vector<double> values = sweep_values(scenario.sweep);
    for (const Outer& outer : outers) {
        std::map<std::string, NodePose> outer_base = poses;
        for (const Node& node : outer.nodes) outer_base[node.id] = node.pose;
        const std::vector<NodePose> inner_poses = generate_sweep(scenario.sweep, outer_base);
        for (std::size_t i = 0; i < values.size(); ++i)
            points.push_back({values[i], outer.value,
                              with_pose(outer.nodes, scenario.sweep.subject, inner_poses[i])});
    }
    return points;
}

namespace {

unsigned thread_cap() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MI_SECLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            threads = std::min<unsigned>(threads, static_cast<unsigned>(v));
    }
    return threads;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned threads =
        std::min<std::size_t>(thread_cap(), count ? count : 1);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<Node> without_node(const std::vector<Node>& nodes, const std::string& id) {
    std::vector<Node> out;
    out.reserve(nodes.size());
    for (const Node& node : nodes)
        if (node.id != id) out.push_back(node);
    return out;
}

const Node* find_node(const std::vector<Node>& nodes, const std::string& id) {
    for (const Node& node : nodes)
        if (node.id == id) return &node;
    return nullptr;
}

double baseline_rx_voltage(const std::vector<Node>& nodes, const DriveSpec& drive,
                           const Medium& medium) {
    const std::vector<Node> legit = without_node(nodes, "eve");
    const LinkSolution sol = solve_network(build_network(legit, drive, medium));
    return sol.load_voltages[sol.index_of("rx")];
}

std::string sanitize_status(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

} // namespace

ResultTable run(const Scenario& scenario) {
    const std::vector<SweepPoint> points = sweep_points(scenario);
    const bool legit_moves =
        scenario.has_sweep &&
        (scenario.sweep.subject != "eve" ||
         (scenario.secondary_sweep && scenario.secondary_sweep->subject != "eve"));

    ResultTable table;
    table.columns = scenario.columns.empty() ? all_result_columns() : scenario.columns;
    table.rows.resize(points.size());

    // legitimate nodes fixed: one global eavesdropper-free baseline
    double global_baseline = std::numeric_limits<double>::quiet_NaN();
    std::string baseline_failure;
    if (!legit_moves) {
        try {
            global_baseline = baseline_rx_voltage(scenario.nodes, scenario.drive, scenario.medium);
        } catch (const std::exception& e) {
            baseline_failure = e.what();
        }
    }

    std::atomic<bool> warn_near_field{false};
    std::atomic<bool> warn_strong_coupling{false};

    parallel_for(points.size(), [&](std::size_t i) {
        const SweepPoint& point = points[i];
        ResultRow& row = table.rows[i];
        row.sweep_value = point.sweep_value;
        row.outer_value = point.outer_value;
        const Node* eve = find_node(point.nodes, "eve");
        if (eve) {
            row.has_eve = true;
            row.eve_position = eve->pose.position;
            row.eve_axis = eve->pose.axis;
        }
        try {
            const double baseline = legit_moves
                ? baseline_rx_voltage(point.nodes, scenario.drive, scenario.medium)
                : global_baseline;
            if (!std::isfinite(baseline))
                throw numeric_error("baseline solve failed: " + baseline_failure);
            row.baseline_v_rx = baseline;

            const Network net = build_network(point.nodes, scenario.drive, scenario.medium);
            const LinkSolution sol = solve_network(net);
            const std::size_t rx = sol.index_of("rx");
            row.v_rx = sol.load_voltages[rx];
            row.residual = sol.residual;
            const PowerReport power = power_balance(net, sol);
            row.source_power = power.source;
            row.dissipated_power = power.dissipated;

            const Node* rx_node = find_node(point.nodes, "rx");
            const Node* tx_node = find_node(point.nodes, "tx");
            const std::size_t tx = sol.index_of("tx");
            row.m_tx_rx = sol.mutual[tx][rx];
            row.k_tx_rx = coupling_coefficient(row.m_tx_rx, tx_node->coil.inductance,
                                               rx_node->coil.inductance);

            double snr_e = 0.0;
            if (eve) {
                const std::size_t ei = sol.index_of("eve");
                row.v_e = sol.load_voltages[ei];
                row.m_tx_e = sol.mutual[tx][ei];
                row.m_rx_e = sol.mutual[rx][ei];
                row.k_tx_e = coupling_coefficient(row.m_tx_e, tx_node->coil.inductance,
                                                  eve->coil.inductance);
                row.k_rx_e = coupling_coefficient(row.m_rx_e, rx_node->coil.inductance,
                                                  eve->coil.inductance);
                snr_e = snr(row.v_e, eve->coil.load_resistance, scenario.medium.noise_power);
                if (near_field(tx_node->coil, tx_node->pose, eve->coil, eve->pose) ||
                    near_field(rx_node->coil, rx_node->pose, eve->coil, eve->pose))
                    warn_near_field = true;
            } else {
                row.v_e = 0.0;
            }
            if (near_field(tx_node->coil, tx_node->pose, rx_node->coil, rx_node->pose))
                warn_near_field = true;
            if (row.k_tx_rx > 1.0 || (eve && (row.k_tx_e > 1.0 || row.k_rx_e > 1.0)))
                warn_strong_coupling = true;

            const double snr_rx =
                snr(row.v_rx, rx_node->coil.load_resistance, scenario.medium.noise_power);
            const SecrecyReport secrecy = make_secrecy_report(snr_rx, snr_e);
            row.snr_rx_db = secrecy.snr_rx_db;
            row.snr_e_db = secrecy.snr_e_db;
            row.sc_bits = secrecy.secrecy_capacity;
            row.sc_clamped_bits = std::max(secrecy.secrecy_capacity, 0.0);
            row.detector = detect_intrusion(baseline, row.v_rx, scenario.detector_threshold);
            row.status = "ok";
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "error at sweep value " << format_number(point.sweep_value) << ": "
               << e.what();
            row.status = sanitize_status(os.str());
            row.detector = Detection::clear;
        }
    });

    if (warn_near_field)
        table.warnings.push_back(
            "near-field geometry at one or more sweep points (separation < 3 coil radii); "
            "the point-dipole coupling model loses accuracy there");
    if (warn_strong_coupling)
        table.warnings.push_back(
            "coupling coefficient above 1 at one or more sweep points; the lumped "
            "mutual-inductance model is outside its validity range");
    return table;
}

} // namespace miseclab
