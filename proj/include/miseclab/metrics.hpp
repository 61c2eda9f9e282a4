// metrics.hpp - SNR, secrecy capacity, and the baseline-deviation detector
#pragma once

namespace miseclab {

/// (V^2 / R) / noise_power. R and noise_power must be > 0.
double snr(double load_voltage, double load_resistance, double noise_power);

/// 10 log10(x); -inf for x = 0.
double to_db(double ratio);

/// log2(1 + snr_rx) - log2(1 + snr_e); negative values are returned as-is.
double secrecy_capacity(double snr_rx, double snr_e);

struct SecrecyReport {
    double snr_rx = 0.0;
    double snr_e = 0.0;
    double snr_rx_db = 0.0;
    double snr_e_db = 0.0;
    double secrecy_capacity = 0.0;  // bits/s/Hz
    bool positive_secrecy = false;
};

SecrecyReport make_secrecy_report(double snr_rx, double snr_e);

enum class Detection { clear, suspected };

const char* to_string(Detection detection);

inline constexpr double default_detector_threshold = 0.05;

/// Flags |observed - baseline| / baseline > threshold. baseline and
/// threshold must be > 0.
Detection detect_intrusion(double baseline_v_rx, double observed_v_rx,
                           double relative_threshold = default_detector_threshold);

} // namespace miseclab
