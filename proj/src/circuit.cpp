// circuit.cpp - impedance matrix assembly and dense complex solve
#include "miseclab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "miseclab/errors.hpp"

namespace miseclab {

namespace {
constexpr double k_condition_limit = 1e12;
constexpr double k_residual_limit = 1e-10;
} // namespace

void validate_drive(const DriveSpec& drive) {
    if (drive.node.empty()) throw std::invalid_argument("drive: node id is required");
    if (drive.amplitude < 0.0) throw std::invalid_argument("drive: amplitude must be >= 0");
    if (!(drive.frequency > 0.0)) throw std::invalid_argument("drive: frequency must be > 0");
}

Complex self_impedance(const CoilSpec& coil, double frequency) {
    if (!(frequency > 0.0)) throw std::invalid_argument("self_impedance: frequency must be > 0");
    const double w = 2.0 * std::numbers::pi * frequency;
    const Complex z_l{0.0, w * coil.inductance};
    const Complex z_c{0.0, -1.0 / (w * coil.capacitance)};
    if (coil.topology == CoilTopology::series_capacitor)
        return coil.wire_resistance + z_l + z_c + coil.load_resistance;
    return coil.wire_resistance + z_l + load_tap_impedance(coil, frequency);
}

Complex load_tap_impedance(const CoilSpec& coil, double frequency) {
    if (coil.topology == CoilTopology::series_capacitor)
        return Complex{coil.load_resistance, 0.0};
    const double w = 2.0 * std::numbers::pi * frequency;
    const Complex z_c{0.0, -1.0 / (w * coil.capacitance)};
    if (coil.load_resistance == 0.0) return Complex{0.0, 0.0};
    return z_c * coil.load_resistance / (z_c + coil.load_resistance);
}

Network build_network(const std::vector<Node>& nodes, const DriveSpec& drive,
                      const Medium& medium) {
    if (nodes.size() < 2)
        throw std::invalid_argument("build_network: at least 2 nodes required");
    validate_drive(drive);
    validate_medium(medium);

    std::set<std::string> ids;
    for (const Node& node : nodes) {
        validate_coil(node.coil, "node '" + node.id + "'");
        if (!ids.insert(node.id).second)
            throw std::invalid_argument("build_network: duplicate node id '" + node.id + "'");
    }
    if (!ids.count(drive.node))
        throw std::invalid_argument("build_network: driven node '" + drive.node +
                                    "' is not in the node list");

    const std::size_t n = nodes.size();
    Network net;
    net.frequency = drive.frequency;
    net.impedance.assign(n, std::vector<Complex>(n, Complex{}));
    net.mutual.assign(n, std::vector<double>(n, 0.0));
    net.source.assign(n, Complex{});
    const double w = 2.0 * std::numbers::pi * drive.frequency;

    for (std::size_t i = 0; i < n; ++i) {
        net.node_ids.push_back(nodes[i].id);
        net.load_tap.push_back(load_tap_impedance(nodes[i].coil, drive.frequency));
        net.impedance[i][i] = self_impedance(nodes[i].coil, drive.frequency);
        if (nodes[i].id == drive.node) net.source[i] = drive.amplitude;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = mutual_inductance_general(nodes[i].coil, nodes[i].pose,
                                                       nodes[j].coil, nodes[j].pose,
                                                       medium, drive.frequency);
            net.mutual[i][j] = net.mutual[j][i] = m;
            const Complex zm{0.0, w * m};
            net.impedance[i][j] = net.impedance[j][i] = zm;
        }
    }
    return net;
}

std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a,
                                 std::vector<Complex> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(a[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(a[i][k]);
            if (mag > best) { best = mag; pivot = i; }
        }
        if (best == 0.0) throw numeric_error("solve_dense: singular matrix");
        if (pivot != k) {
            std::swap(a[k], a[pivot]);
            std::swap(b[k], b[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = a[i][k] / a[k][k];
            if (factor == Complex{}) continue;
            for (std::size_t j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
            b[i] -= factor * b[k];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
        x[i] = acc / a[i][i];
    }
    return x;
}

namespace {

double inf_norm(const std::vector<std::vector<Complex>>& a) {
    double best = 0.0;
    for (const auto& row : a) {
        double sum = 0.0;
        for (const Complex& v : row) sum += std::abs(v);
        best = std::max(best, sum);
    }
    return best;
}

} // namespace

double condition_estimate(const std::vector<std::vector<Complex>>& a) {
    const std::size_t n = a.size();
    // the inverse column by column; systems here stay tiny
    std::vector<std::vector<Complex>> inv(n, std::vector<Complex>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<Complex> e(n);
        e[col] = 1.0;
        std::vector<Complex> x = solve_dense(a, std::move(e));
        for (std::size_t row = 0; row < n; ++row) inv[row][col] = x[row];
    }
    return inf_norm(a) * inf_norm(inv);
}

std::size_t LinkSolution::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < node_ids.size(); ++i)
        if (node_ids[i] == id) return i;
    throw not_found_error("no node '" + id + "' in solution");
}

namespace {

std::string describe_network(const Network& net) {
    std::ostringstream os;
    os << "f=" << net.frequency << " Hz, nodes [";
    for (std::size_t i = 0; i < net.node_ids.size(); ++i)
        os << (i ? ", " : "") << net.node_ids[i];
    os << "]";
    return os.str();
}

} // namespace

LinkSolution solve_network(const Network& network) {
    const std::size_t n = network.impedance.size();
    if (n == 0 || network.source.size() != n)
        throw std::invalid_argument("solve_network: malformed network");

    double cond = 0.0;
    std::vector<Complex> currents;
    try {
        cond = condition_estimate(network.impedance);
        currents = solve_dense(network.impedance, network.source);
    } catch (const numeric_error& e) {
        throw numeric_error(std::string(e.what()) + " [" + describe_network(network) + "]");
    }
    if (cond > k_condition_limit) {
        std::ostringstream os;
        os << "solve_network: ill-conditioned impedance matrix (cond ~ " << cond
           << ") at " << describe_network(network);
        throw numeric_error(os.str());
    }

    // relative residual ||Z I - V|| / ||V||
    double rnum = 0.0, rden = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = -network.source[i];
        for (std::size_t j = 0; j < n; ++j) acc += network.impedance[i][j] * currents[j];
        rnum += std::norm(acc);
        rden += std::norm(network.source[i]);
    }
    const double residual = rden > 0.0 ? std::sqrt(rnum / rden) : std::sqrt(rnum);
    if (residual > k_residual_limit) {
        std::ostringstream os;
        os << "solve_network: residual " << residual << " exceeds " << k_residual_limit
           << " at " << describe_network(network);
        throw numeric_error(os.str());
    }

    LinkSolution sol;
    sol.node_ids = network.node_ids;
    sol.currents = currents;
    sol.frequency = network.frequency;
    sol.mutual = network.mutual;
    sol.residual = residual;
    sol.load_voltages.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        sol.load_voltages.push_back(std::abs(currents[i] * network.load_tap[i]));
    return sol;
}

PowerReport power_balance(const Network& network, const LinkSolution& solution) {
    PowerReport report;
    const std::size_t n = network.impedance.size();
    for (std::size_t i = 0; i < n; ++i) {
        report.source += 0.5 * (network.source[i] * std::conj(solution.currents[i])).real();
        report.dissipated +=
            0.5 * std::norm(solution.currents[i]) * network.impedance[i][i].real();
    }
    return report;
}

std::vector<std::pair<double, LinkSolution>> frequency_response(
    const std::vector<Node>& nodes, const DriveSpec& drive, const Medium& medium,
    const std::vector<double>& frequency_grid) {
    if (frequency_grid.empty())
        throw std::invalid_argument("frequency_response: empty frequency grid");
    std::vector<std::pair<double, LinkSolution>> out;
    out.reserve(frequency_grid.size());
    for (double f : frequency_grid) {
        DriveSpec d = drive;
        d.frequency = f;
        try {
            out.emplace_back(f, solve_network(build_network(nodes, d, medium)));
        } catch (const numeric_error& e) {
            std::ostringstream os;
            os << "frequency_response at " << f << " Hz: " << e.what();
            throw numeric_error(os.str());
        }
    }
    return out;
}

} // namespace miseclab
