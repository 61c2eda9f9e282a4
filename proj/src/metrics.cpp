// metrics.cpp
#include "miseclab/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace miseclab {

double snr(double load_voltage, double load_resistance, double noise_power) {
    if (!(load_resistance > 0.0))
        throw std::invalid_argument("snr: load_resistance must be > 0");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("snr: noise_power must be > 0");
    return (load_voltage * load_voltage / load_resistance) / noise_power;
}

double to_db(double ratio) {
    if (ratio == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ratio);
}

double secrecy_capacity(double snr_rx, double snr_e) {
    if (snr_rx < 0.0 || snr_e < 0.0)
        throw std::invalid_argument("secrecy_capacity: SNRs must be >= 0");
    return std::log2(1.0 + snr_rx) - std::log2(1.0 + snr_e);
}

SecrecyReport make_secrecy_report(double snr_rx, double snr_e) {
    SecrecyReport report;
    report.snr_rx = snr_rx;
    report.snr_e = snr_e;
    report.snr_rx_db = to_db(snr_rx);
    report.snr_e_db = to_db(snr_e);
    report.secrecy_capacity = secrecy_capacity(snr_rx, snr_e);
    report.positive_secrecy = report.secrecy_capacity > 0.0;
    return report;
}

const char* to_string(Detection detection) {
    return detection == Detection::clear ? "clear" : "suspected";
}

Detection detect_intrusion(double baseline_v_rx, double observed_v_rx,
                           double relative_threshold) {
    if (!(baseline_v_rx > 0.0))
        throw std::invalid_argument("detect_intrusion: baseline must be > 0");
    if (!(relative_threshold > 0.0))
        throw std::invalid_argument("detect_intrusion: threshold must be > 0");
    const double deviation = std::abs(observed_v_rx - baseline_v_rx) / baseline_v_rx;
    return deviation > relative_threshold ? Detection::suspected : Detection::clear;
}

} // namespace miseclab
