// circuit.hpp - coupled resonant coil network: impedance matrix assembly
// and the complex dense solve behind the per-node load voltages
#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "miseclab/em_channel.hpp"
#include "miseclab/geometry.hpp"

namespace miseclab {

/// Sinusoidal voltage drive applied to one node.
struct DriveSpec {
    std::string node = "tx";
    double amplitude = 10.0;    // V, phasor magnitude (peak)
    double frequency = 100e3;   // Hz
};

void validate_drive(const DriveSpec& drive);

/// One circuit node: a coil at a pose.
struct Node {
    std::string id;
    CoilSpec coil;
    NodePose pose;
};

/// Loop impedance of one coil branch at f. Series topology:
/// R_wire + jwL + 1/(jwC) + R_load. Parallel topology:
/// R_wire + jwL + (Zc || R_load).
Complex self_impedance(const CoilSpec& coil, double frequency);

/// Impedance across which the reported load voltage is read:
/// R_load for the series topology, Zc || R_load for the parallel one.
Complex load_tap_impedance(const CoilSpec& coil, double frequency);

/// Assembled mesh equations Z I = V for one geometry at one frequency.
struct Network {
    std::vector<std::string> node_ids;
    std::vector<std::vector<Complex>> impedance;  // symmetric, jwM off-diagonal
    std::vector<Complex> source;
    std::vector<Complex> load_tap;
    std::vector<std::vector<double>> mutual;      // H, zero diagonal
    double frequency = 0.0;
};

/// Builds the network. Requires >= 2 nodes with unique ids, the driven node
/// present, and distinct positions.
Network build_network(const std::vector<Node>& nodes, const DriveSpec& drive,
                      const Medium& medium);

/// Branch currents and per-node load voltage magnitudes for one solve.
struct LinkSolution {
    std::vector<std::string> node_ids;
    std::vector<Complex> currents;        // A
    std::vector<double> load_voltages;    // V, magnitudes
    double frequency = 0.0;
    std::vector<std::vector<double>> mutual;
    double residual = 0.0;                // ||Z I - V|| / ||V||

    /// Index of a node id; throws not_found_error.
    std::size_t index_of(const std::string& id) const;
};

/// Gaussian elimination with partial pivoting. Throws numeric_error on a
/// singular system.
std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a,
                                 std::vector<Complex> b);

/// Infinity-norm condition estimate ||A|| ||A^-1||.
double condition_estimate(const std::vector<std::vector<Complex>>& a);

/// Solves Z I = V. Throws numeric_error naming the frequency and node set
/// when the matrix is singular, the condition estimate exceeds 1e12, or the
/// relative residual exceeds 1e-10.
LinkSolution solve_network(const Network& network);

struct PowerReport {
    double source = 0.0;      // W delivered, 0.5 Re(V conj(I))
    double dissipated = 0.0;  // W across all branch resistances
};

PowerReport power_balance(const Network& network, const LinkSolution& solution);

/// One solve per grid frequency, in grid order. Errors are rethrown with the
/// frequency attached.
std::vector<std::pair<double, LinkSolution>> frequency_response(
    const std::vector<Node>& nodes, const DriveSpec& drive, const Medium& medium,
    const std::vector<double>& frequency_grid);

} // namespace miseclab
