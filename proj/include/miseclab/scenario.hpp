// scenario.hpp - experiment descriptions, built-in configurations, sweep
// execution, and CSV emission
#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "miseclab/circuit.hpp"
#include "miseclab/em_channel.hpp"
#include "miseclab/geometry.hpp"
#include "miseclab/metrics.hpp"

namespace miseclab {

/// Full experiment description: nodes, medium, drive, and the swept
/// parameter. Node ids are tx, rx, and the optional eve.
struct Scenario {
    std::string name;
    Medium medium;
    DriveSpec drive;
    std::vector<Node> nodes;
    bool has_sweep = false;
    SweepSpec sweep;
    std::optional<SweepSpec> secondary_sweep;  // outer loop, e.g. eve standoff
    double detector_threshold = default_detector_threshold;
    std::vector<std::string> columns;          // empty = all documented columns
};

/// Table I electrical preset; the driven coil carries the series capacitor
/// and no load, pickups the parallel capacitor with a 50 ohm load.
CoilSpec table1_tx_coil();
CoilSpec table1_pickup_coil();

/// Fresh water, 0.01 S/m, -90 dBm noise floor.
Medium default_medium();

std::vector<std::string> builtin_scenario_names();

/// The named built-in configuration. Throws not_found_error listing the
/// valid names.
Scenario builtin_scenario(const std::string& name);

/// Throws config_error naming the violated field.
void validate_scenario(const Scenario& scenario);

/// Parses and validates a scenario file; defaults fill omitted sections.
Scenario load_scenario(const std::string& path);

/// One evaluated sweep position: every node with its pose applied.
struct SweepPoint {
    double sweep_value = 0.0;   // primary sweep parameter (m or degrees)
    double outer_value = std::numeric_limits<double>::quiet_NaN();
    std::vector<Node> nodes;
};

/// The flattened, deterministic list of sweep positions (outer-major when a
/// secondary sweep is present).
std::vector<SweepPoint> sweep_points(const Scenario& scenario);

struct ResultRow {
    double sweep_value = 0.0;
    double outer_value = std::numeric_limits<double>::quiet_NaN();
    bool has_eve = false;
    Vec3 eve_position;
    Vec3 eve_axis;
    double v_rx = std::numeric_limits<double>::quiet_NaN();
    double v_e = std::numeric_limits<double>::quiet_NaN();
    double snr_rx_db = std::numeric_limits<double>::quiet_NaN();
    double snr_e_db = std::numeric_limits<double>::quiet_NaN();
    double sc_bits = std::numeric_limits<double>::quiet_NaN();
    double sc_clamped_bits = std::numeric_limits<double>::quiet_NaN();
    double k_tx_rx = std::numeric_limits<double>::quiet_NaN();
    double k_tx_e = std::numeric_limits<double>::quiet_NaN();
    double k_rx_e = std::numeric_limits<double>::quiet_NaN();
    double m_tx_rx = std::numeric_limits<double>::quiet_NaN();
    double m_tx_e = std::numeric_limits<double>::quiet_NaN();
    double m_rx_e = std::numeric_limits<double>::quiet_NaN();
    Detection detector = Detection::clear;
    std::string status = "ok";
    // diagnostics, not emitted to CSV
    double baseline_v_rx = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    double source_power = std::numeric_limits<double>::quiet_NaN();
    double dissipated_power = std::numeric_limits<double>::quiet_NaN();
};

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<ResultRow> rows;
    std::vector<std::string> warnings;
};

/// The documented CSV column order.
const std::vector<std::string>& all_result_columns();

/// Executes the scenario: per sweep point, mutual inductances, network
/// solve, metrics, and the detector verdict against the eavesdropper-free
/// baseline. Failed points become rows with an error status. Points are
/// evaluated in parallel up to the MI_SECLAB_THREADS cap; ordering and
/// values do not depend on the thread count.
ResultTable run(const Scenario& scenario);

void write_csv(const ResultTable& table, std::ostream& out);
void write_csv(const ResultTable& table, const std::string& path);

/// One row of a drive-frequency sweep at the scenario's base geometry.
struct FreqPoint {
    double frequency = 0.0;
    double v_rx = 0.0;
    double v_e = std::numeric_limits<double>::quiet_NaN();
    double snr_rx_db = 0.0;
    double snr_e_db = std::numeric_limits<double>::quiet_NaN();
    double sc_bits = std::numeric_limits<double>::quiet_NaN();
};

std::vector<FreqPoint> frequency_sweep(const Scenario& scenario, double f_start,
                                       double f_stop, double f_step);

void write_freq_csv(const std::vector<FreqPoint>& points, std::ostream& out);
void write_freq_csv(const std::vector<FreqPoint>& points, const std::string& path);

/// Text summary: extreme |V_E| and SC rows plus detector-flagged sweep
/// values. Throws std::invalid_argument on an empty table.
std::string report_text(const ResultTable& table);

/// "%.9g" with C-locale semantics, used for all CSV numbers.
std::string format_number(double value);

} // namespace miseclab
