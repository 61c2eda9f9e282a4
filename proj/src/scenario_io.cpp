// scenario_io.cpp - scenario file parsing, CSV emission, text report
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "miseclab/errors.hpp"
#include "miseclab/scenario.hpp"

namespace miseclab {

std::string format_number(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

namespace {

// ---------------------------------------------------------------------
// scenario file format: INI-style sections of key = value pairs
//   [medium] [drive] [node.tx|rx|eve] [sweep] [sweep.secondary] [output]
// values: number, "string", bare word, true/false, or [v, v, v]
// ---------------------------------------------------------------------

using ConfigValue = std::variant<double, std::string, bool, std::vector<double>,
                                 std::vector<std::string>>;

struct ConfigEntry {
    ConfigValue value;
    int line = 0;
};

struct ConfigSection {
    std::map<std::string, ConfigEntry> entries;
    int line = 0;
};

struct ConfigFile {
    std::string path;
    std::map<std::string, ConfigSection> sections;  // "" is the root section
    std::vector<std::string> section_order;
};

[[noreturn]] void fail(const std::string& path, int line, const std::string& message) {
    std::ostringstream os;
    os << path << ":" << line << ": " << message;
    throw config_error(os.str());
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

ConfigValue parse_value(const std::string& path, int line, const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) fail(path, line, "missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            fail(path, line, "unterminated string");
        return text.substr(1, text.size() - 2);
    }
    if (text.front() == '[') {
        if (text.back() != ']') fail(path, line, "unterminated array");
        std::vector<double> numbers;
        std::vector<std::string> strings;
        std::string body = text.substr(1, text.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string v = trim(item);
            if (v.empty()) fail(path, line, "empty array element");
            double d;
            if (parse_double(v, d)) {
                numbers.push_back(d);
            } else if (v.front() == '"' && v.size() >= 2 && v.back() == '"') {
                strings.push_back(v.substr(1, v.size() - 2));
            } else {
                strings.push_back(v);
            }
        }
        if (!strings.empty() && !numbers.empty())
            fail(path, line, "array mixes numbers and strings");
        if (!strings.empty()) return strings;
        return numbers;
    }
    if (text == "true") return true;
    if (text == "false") return false;
    double d;
    if (parse_double(text, d)) return d;
    return text;  // bare word
}

ConfigFile parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open scenario file '" + path + "'");
    ConfigFile cfg;
    cfg.path = path;
    cfg.sections[""] = ConfigSection{};
    cfg.section_order.push_back("");
    std::string current;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(path, lineno, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail(path, lineno, "empty section name");
            if (cfg.sections.count(name)) {
                if (name.rfind("node.", 0) == 0)
                    fail(path, lineno, "duplicate node id '" + name.substr(5) + "'");
                fail(path, lineno, "duplicate section [" + name + "]");
            }
            cfg.sections[name].line = lineno;
            cfg.section_order.push_back(name);
            current = name;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(path, lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(path, lineno, "missing key");
        ConfigSection& section = cfg.sections[current];
        if (section.entries.count(key))
            fail(path, lineno, "duplicate key '" + key + "'");
        section.entries[key] = {parse_value(path, lineno, line.substr(eq + 1)), lineno};
    }
    return cfg;
}

// typed getters -------------------------------------------------------

struct SectionReader {
    const ConfigFile& file;
    std::string name;
    const ConfigSection* section;
    mutable std::set<std::string> consumed;

    SectionReader(const ConfigFile& f, std::string section_name)
        : file(f), name(std::move(section_name)) {
        auto it = file.sections.find(name);
        section = it == file.sections.end() ? nullptr : &it->second;
    }

    bool exists() const { return section != nullptr; }

    const ConfigEntry* find(const std::string& key) const {
        if (!section) return nullptr;
        auto it = section->entries.find(key);
        if (it == section->entries.end()) return nullptr;
        consumed.insert(key);
        return &it->second;
    }

    [[noreturn]] void bad(const ConfigEntry& entry, const std::string& message) const {
        fail(file.path, entry.line, where() + message);
    }

    std::string where() const {
        return name.empty() ? "" : "[" + name + "] ";
    }

    std::optional<double> number(const std::string& key) const {
        const ConfigEntry* e = find(key);
        if (!e) return std::nullopt;
        if (const double* d = std::get_if<double>(&e->value)) return *d;
        bad(*e, "'" + key + "' must be a number");
    }

    std::optional<std::string> text(const std::string& key) const {
        const ConfigEntry* e = find(key);
        if (!e) return std::nullopt;
        if (const std::string* s = std::get_if<std::string>(&e->value)) return *s;
        bad(*e, "'" + key + "' must be a string");
    }

    std::optional<Vec3> vec3(const std::string& key) const {
        const ConfigEntry* e = find(key);
        if (!e) return std::nullopt;
        const auto* a = std::get_if<std::vector<double>>(&e->value);
        if (!a || a->size() != 3)
            bad(*e, "'" + key + "' must be an array of three numbers");
        return Vec3{(*a)[0], (*a)[1], (*a)[2]};
    }

    std::optional<std::vector<std::string>> text_list(const std::string& key) const {
        const ConfigEntry* e = find(key);
        if (!e) return std::nullopt;
        if (const auto* v = std::get_if<std::vector<std::string>>(&e->value)) return *v;
        if (const std::string* s = std::get_if<std::string>(&e->value))
            return std::vector<std::string>{*s};
        bad(*e, "'" + key + "' must be a string array");
    }

    void finish() const {
        if (!section) return;
        for (const auto& [key, entry] : section->entries)
            if (!consumed.count(key))
                fail(file.path, entry.line, where() + "unknown key '" + key + "'");
    }
};

double length_scale(const std::string& path, const ConfigFile& cfg) {
    SectionReader root(cfg, "");
    if (auto units = root.text("units")) {
        if (*units == "ft") return ft_to_m(1.0);
        if (*units == "m") return 1.0;
        throw config_error(path + ": unknown units '" + *units + "' (expected \"ft\" or \"m\")");
    }
    return 1.0;
}

CoilTopology parse_topology(const SectionReader& reader, const std::string& value,
                            const ConfigEntry& entry) {
    if (value == "series_capacitor") return CoilTopology::series_capacitor;
    if (value == "parallel_capacitor") return CoilTopology::parallel_capacitor;
    reader.bad(entry, "unknown topology '" + value +
                          "' (expected series_capacitor or parallel_capacitor)");
}

Node read_node(const ConfigFile& cfg, const std::string& id, double scale) {
    SectionReader reader(cfg, "node." + id);
    CoilSpec coil = id == "tx" ? table1_tx_coil() : table1_pickup_coil();
    if (auto v = reader.number("radius")) coil.radius = *v;
    if (auto v = reader.number("turns")) coil.turns = static_cast<int>(*v);
    if (auto v = reader.number("inductance")) coil.inductance = *v;
    if (auto v = reader.number("capacitance")) coil.capacitance = *v;
    if (auto v = reader.number("wire_resistance")) coil.wire_resistance = *v;
    if (auto v = reader.number("load_resistance")) coil.load_resistance = *v;
    if (const ConfigEntry* e = reader.find("topology")) {
        const std::string* s = std::get_if<std::string>(&e->value);
        if (!s) reader.bad(*e, "'topology' must be a string");
        coil.topology = parse_topology(reader, *s, *e);
    }
    Vec3 position = reader.vec3("position").value_or(Vec3{});
    Vec3 axis = reader.vec3("axis").value_or(Vec3{1.0, 0.0, 0.0});
    reader.finish();
    NodePose pose;
    try {
        pose = make_pose(position * scale, axis);
    } catch (const std::invalid_argument& e) {
        throw config_error(cfg.path + ": node '" + id + "': " + e.what());
    }
    return Node{id, coil, pose};
}

SweepKind parse_sweep_kind(const SectionReader& reader, const ConfigEntry& entry,
                           const std::string& value) {
    if (value == "translate") return SweepKind::translate;
    if (value == "orbit") return SweepKind::orbit;
    if (value == "self_rotate") return SweepKind::self_rotate;
    if (value == "standoff") return SweepKind::standoff;
    reader.bad(entry, "unknown sweep kind '" + value +
                          "' (expected translate, orbit, self_rotate, standoff)");
}

SweepPlane parse_plane(const SectionReader& reader, const ConfigEntry& entry,
                       const std::string& value) {
    if (value == "xy") return SweepPlane::xy;
    if (value == "xz") return SweepPlane::xz;
    if (value == "yz") return SweepPlane::yz;
    reader.bad(entry, "unknown plane '" + value + "' (expected xy, xz, yz)");
}

SweepSpec read_sweep(const ConfigFile& cfg, const std::string& section, double scale) {
    SectionReader reader(cfg, section);
    SweepSpec sweep;
    if (const ConfigEntry* e = reader.find("kind")) {
        const std::string* s = std::get_if<std::string>(&e->value);
        if (!s) reader.bad(*e, "'kind' must be a string");
        sweep.kind = parse_sweep_kind(reader, *e, *s);
    }
    if (auto v = reader.text("subject")) sweep.subject = *v;
    if (auto v = reader.text("anchor")) sweep.anchor = *v;
    if (auto v = reader.vec3("anchor_point")) {
        sweep.anchor_point = *v * scale;
        sweep.has_anchor_point = true;
    }
    if (auto v = reader.vec3("direction")) sweep.direction = *v;
    const bool lengths = sweep.kind == SweepKind::translate || sweep.kind == SweepKind::standoff;
    const double grid_scale = lengths ? scale : 1.0;
    if (auto v = reader.number("start")) sweep.start = *v * grid_scale;
    if (auto v = reader.number("stop")) sweep.stop = *v * grid_scale;
    if (auto v = reader.number("step")) sweep.step = *v * grid_scale;
    if (const ConfigEntry* e = reader.find("plane")) {
        const std::string* s = std::get_if<std::string>(&e->value);
        if (!s) reader.bad(*e, "'plane' must be a string");
        sweep.plane = parse_plane(reader, *e, *s);
    }
    reader.finish();
    return sweep;
}

} // namespace

Scenario load_scenario(const std::string& path) {
    const ConfigFile cfg = parse_config(path);

    for (const std::string& section : cfg.section_order) {
        if (section.empty() || section == "medium" || section == "drive" ||
            section == "sweep" || section == "sweep.secondary" || section == "output")
            continue;
        if (section.rfind("node.", 0) == 0) {
            const std::string id = section.substr(5);
            if (id != "tx" && id != "rx" && id != "eve")
                fail(path, cfg.sections.at(section).line,
                     "unknown node id '" + id + "' (expected tx, rx, eve)");
            continue;
        }
        fail(path, cfg.sections.at(section).line, "unknown section [" + section + "]");
    }

    const double scale = length_scale(path, cfg);

    Scenario scenario;
    SectionReader root(cfg, "");
    scenario.name = root.text("name").value_or("custom");
    root.text("units");  // consumed by length_scale
    if (auto v = root.number("detector_threshold")) scenario.detector_threshold = *v;
    root.finish();

    SectionReader medium(cfg, "medium");
    scenario.medium = default_medium();
    if (auto v = medium.number("conductivity")) scenario.medium.conductivity = *v;
    if (auto v = medium.number("relative_permeability"))
        scenario.medium.relative_permeability = *v;
    if (auto v = medium.number("noise_power")) scenario.medium.noise_power = *v;
    medium.finish();

    SectionReader drive(cfg, "drive");
    scenario.drive = DriveSpec{};
    if (auto v = drive.text("node")) scenario.drive.node = *v;
    if (auto v = drive.number("amplitude")) scenario.drive.amplitude = *v;
    if (auto v = drive.number("frequency")) scenario.drive.frequency = *v;
    drive.finish();

    for (const char* id : {"tx", "rx", "eve"})
        if (cfg.sections.count(std::string("node.") + id))
            scenario.nodes.push_back(read_node(cfg, id, scale));

    if (cfg.sections.count("sweep")) {
        scenario.has_sweep = true;
        scenario.sweep = read_sweep(cfg, "sweep", scale);
    }
    if (cfg.sections.count("sweep.secondary")) {
        if (!scenario.has_sweep)
            throw config_error(path + ": [sweep.secondary] requires a [sweep] section");
        scenario.secondary_sweep = read_sweep(cfg, "sweep.secondary", scale);
    }

    SectionReader output(cfg, "output");
    if (auto v = output.text_list("columns")) scenario.columns = *v;
    output.finish();

    try {
        validate_scenario(scenario);
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
    return scenario;
}

// CSV ------------------------------------------------------------------

const std::vector<std::string>& all_result_columns() {
    static const std::vector<std::string> columns = {
        "sweep_value", "eve_x_m", "eve_y_m", "eve_z_m", "eve_axis_x", "eve_axis_y",
        "eve_axis_z", "v_rx_V", "v_e_V", "snr_rx_dB", "snr_e_dB", "sc_bits",
        "sc_clamped_bits", "k_tx_rx", "k_tx_e", "k_rx_e", "m_tx_rx_H", "m_tx_e_H",
        "m_rx_e_H", "detector", "status"};
    return columns;
}

namespace {

std::string nan_string() { return "nan"; }

std::string column_value(const ResultRow& row, const std::string& column) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (column == "sweep_value") return format_number(row.sweep_value);
    if (column == "eve_x_m") return format_number(row.has_eve ? row.eve_position.x : nan);
    if (column == "eve_y_m") return format_number(row.has_eve ? row.eve_position.y : nan);
    if (column == "eve_z_m") return format_number(row.has_eve ? row.eve_position.z : nan);
    if (column == "eve_axis_x") return format_number(row.has_eve ? row.eve_axis.x : nan);
    if (column == "eve_axis_y") return format_number(row.has_eve ? row.eve_axis.y : nan);
    if (column == "eve_axis_z") return format_number(row.has_eve ? row.eve_axis.z : nan);
    if (column == "v_rx_V") return format_number(row.v_rx);
    if (column == "v_e_V") return format_number(row.v_e);
    if (column == "snr_rx_dB") return format_number(row.snr_rx_db);
    if (column == "snr_e_dB") return format_number(row.snr_e_db);
    if (column == "sc_bits") return format_number(row.sc_bits);
    if (column == "sc_clamped_bits") return format_number(row.sc_clamped_bits);
    if (column == "k_tx_rx") return format_number(row.k_tx_rx);
    if (column == "k_tx_e") return format_number(row.k_tx_e);
    if (column == "k_rx_e") return format_number(row.k_rx_e);
    if (column == "m_tx_rx_H") return format_number(row.m_tx_rx);
    if (column == "m_tx_e_H") return format_number(row.m_tx_e);
    if (column == "m_rx_e_H") return format_number(row.m_rx_e);
    if (column == "detector") return to_string(row.detector);
    if (column == "status") return row.status;
    return nan_string();
}

} // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const ResultRow& row : table.rows) {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << column_value(row, table.columns[c]);
        out << "\n";
    }
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    write_csv(table, out);
    out.flush();
    if (!out) throw io_error("failed while writing '" + path + "'");
}

std::vector<FreqPoint> frequency_sweep(const Scenario& scenario, double f_start,
                                       double f_stop, double f_step) {
    validate_scenario(scenario);
    if (!(f_start > 0.0) || !(f_stop >= f_start) || !(f_step > 0.0))
        throw std::invalid_argument("frequency_sweep: need 0 < start <= stop and step > 0");
    std::vector<double> grid;
    const auto count =
        static_cast<std::size_t>(std::floor((f_stop - f_start) / f_step + 1e-9)) + 1;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        grid.push_back(f_start + static_cast<double>(i) * f_step);

    const bool has_eve = std::any_of(scenario.nodes.begin(), scenario.nodes.end(),
                                     [](const Node& n) { return n.id == "eve"; });
    const Node* rx_node = nullptr;
    const Node* eve_node = nullptr;
    for (const Node& node : scenario.nodes) {
        if (node.id == "rx") rx_node = &node;
        if (node.id == "eve") eve_node = &node;
    }

    std::vector<FreqPoint> points;
    points.reserve(grid.size());
    for (const auto& [f, sol] :
         frequency_response(scenario.nodes, scenario.drive, scenario.medium, grid)) {
        FreqPoint p;
        p.frequency = f;
        p.v_rx = sol.load_voltages[sol.index_of("rx")];
        const double snr_rx =
            snr(p.v_rx, rx_node->coil.load_resistance, scenario.medium.noise_power);
        double snr_e = 0.0;
        if (has_eve) {
            p.v_e = sol.load_voltages[sol.index_of("eve")];
            snr_e = snr(p.v_e, eve_node->coil.load_resistance, scenario.medium.noise_power);
        } else {
            p.v_e = 0.0;
        }
        p.snr_rx_db = to_db(snr_rx);
        p.snr_e_db = to_db(snr_e);
        p.sc_bits = secrecy_capacity(snr_rx, snr_e);
        points.push_back(p);
    }
    return points;
}

void write_freq_csv(const std::vector<FreqPoint>& points, std::ostream& out) {
    out << "frequency_Hz,v_rx_V,v_e_V,snr_rx_dB,snr_e_dB,sc_bits\n";
    for (const FreqPoint& p : points) {
        out << format_number(p.frequency) << "," << format_number(p.v_rx) << ","
            << format_number(p.v_e) << "," << format_number(p.snr_rx_db) << ","
            << format_number(p.snr_e_db) << "," << format_number(p.sc_bits) << "\n";
    }
}

void write_freq_csv(const std::vector<FreqPoint>& points, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    write_freq_csv(points, out);
    out.flush();
    if (!out) throw io_error("failed while writing '" + path + "'");
}

// report ----------------------------------------------------------------

namespace {

std::string format_position(const ResultRow& row) {
    if (!row.has_eve) return "(eve absent)";
    char buf[160];
    std::snprintf(buf, sizeof buf, "(eve at (%g, %g, %g) m = (%g, %g, %g) ft)",
                  row.eve_position.x, row.eve_position.y, row.eve_position.z,
                  m_to_ft(row.eve_position.x), m_to_ft(row.eve_position.y),
                  m_to_ft(row.eve_position.z));
    return buf;
}

std::string extremum_line(const char* label, const ResultRow& row, double value,
                          const char* unit) {
    std::ostringstream os;
    char num[48];
    std::snprintf(num, sizeof num, "%g", value);
    char sweep[48];
    std::snprintf(sweep, sizeof sweep, "%g", row.sweep_value);
    os << label << ": " << num << " " << unit << " at sweep_value " << sweep << " "
       << format_position(row);
    return os.str();
}

} // namespace

std::string report_text(const ResultTable& table) {
    std::vector<const ResultRow*> ok_rows;
    for (const ResultRow& row : table.rows)
        if (row.status == "ok") ok_rows.push_back(&row);
    if (table.rows.empty() || ok_rows.empty())
        throw std::invalid_argument("report: result table has no usable rows");

    auto by_ve = [](const ResultRow* a, const ResultRow* b) { return a->v_e < b->v_e; };
    auto by_sc = [](const ResultRow* a, const ResultRow* b) { return a->sc_bits < b->sc_bits; };
    const ResultRow* max_ve = *std::max_element(ok_rows.begin(), ok_rows.end(), by_ve);
    const ResultRow* min_ve = *std::min_element(ok_rows.begin(), ok_rows.end(), by_ve);
    const ResultRow* max_sc = *std::max_element(ok_rows.begin(), ok_rows.end(), by_sc);
    const ResultRow* min_sc = *std::min_element(ok_rows.begin(), ok_rows.end(), by_sc);

    std::ostringstream os;
    os << "rows: " << table.rows.size() << " (" << ok_rows.size() << " ok)\n";
    os << extremum_line("max |V_E|", *max_ve, max_ve->v_e, "V") << "\n";
    os << extremum_line("min |V_E|", *min_ve, min_ve->v_e, "V") << "\n";
    os << extremum_line("max SC", *max_sc, max_sc->sc_bits, "bits/s/Hz") << "\n";
    os << extremum_line("min SC", *min_sc, min_sc->sc_bits, "bits/s/Hz") << "\n";
    os << "detector suspected at sweep values:";
    bool any = false;
    for (const ResultRow* row : ok_rows) {
        if (row->detector == Detection::suspected) {
            char sweep[48];
            std::snprintf(sweep, sizeof sweep, "%g", row->sweep_value);
            os << " " << sweep;
            any = true;
        }
    }
    if (!any) os << " none";
    os << "\n";
    return os.str();
}

} // namespace miseclab
