#include "dipolar/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "dipolar/errors.hpp"

namespace dipolar {
namespace {

std::string position_of(const std::string& text, std::size_t byte)
{
    // nlohmann reports a 1-based byte offset.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

nlohmann::json optional_number(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

bool LoadedState::renormalized() const
{
    return std::abs(original_norm - 1.0) > 1e-12;
}

LoadedState parse_custom_state(const std::string& text, std::size_t num_atoms)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput("custom state: syntax error at " + position_of(text, e.byte));
    }
    const std::size_t dim = std::size_t{1} << num_atoms;
    if (!doc.is_array())
        throw InvalidInput("custom state: expected a JSON array of [re, im] pairs");
    if (doc.size() != dim)
        throw InvalidInput("custom state: expected " + std::to_string(dim) + " amplitudes, got " +
                           std::to_string(doc.size()));

    StateVector amps;
    amps.reserve(dim);
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const auto& pair = doc[k];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw InvalidInput("custom state: amplitude " + std::to_string(k) +
                               " is not a [re, im] pair of numbers");
        const double re = pair[0].get<double>();
        const double im = pair[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw InvalidInput("custom state: amplitude " + std::to_string(k) + " is not finite");
        amps.emplace_back(re, im);
    }
    const double original = norm(amps);
    return {PureState::normalized(num_atoms, std::move(amps)), original};
}

LoadedState load_custom_state(const std::string& path, std::size_t num_atoms)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read custom state file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_custom_state(buffer.str(), num_atoms);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

std::string format_double(double value)
{
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
    return out.str();
}

void write_csv(std::ostream& out, const ScanTable& table)
{
    const bool surface = table.metadata.surface;
    out << (surface ? "kd,theta,intensity,g2\n" : "theta,intensity,g2\n");
    for (const auto& row : table.rows) {
        if (surface)
            out << format_double(row.kd) << ',';
        out << format_double(row.theta) << ',' << format_double(row.intensity) << ',';
        if (row.g2)
            out << format_double(*row.g2);
        out << '\n';
    }
}

nlohmann::json to_json(const ScanTable& table)
{
    const auto& m = table.metadata;
    nlohmann::json meta = {
        {"state", m.state},
        {"layout", std::string(to_string(m.layout))},
        {"surface", m.surface},
        {"kd_min", m.kd_min},
        {"kd_max", m.kd_max},
        {"kd_samples", m.kd_samples},
        {"theta_min", m.theta_min},
        {"theta_max", m.theta_max},
        {"theta_samples", m.theta_samples},
        {"g2", m.g2},
        {"version", m.version},
        {"warnings", m.warnings},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"kd", r.kd}, {"theta", r.theta}, {"intensity", r.intensity},
                        {"g2", optional_number(r.g2)}});
    return {{"metadata", std::move(meta)}, {"rows", std::move(rows)}};
}

ScanTable scan_table_from_json(const nlohmann::json& doc)
{
    ScanTable table;
    auto& m = table.metadata;
    const auto& meta = doc.at("metadata");
    m.state = meta.at("state").get<std::string>();
    if (!parse_layout(meta.at("layout").get<std::string>(), m.layout))
        throw InvalidInput("unknown layout in scan table");
    m.surface = meta.at("surface").get<bool>();
    m.kd_min = meta.at("kd_min").get<double>();
    m.kd_max = meta.at("kd_max").get<double>();
    m.kd_samples = meta.at("kd_samples").get<std::size_t>();
    m.theta_min = meta.at("theta_min").get<double>();
    m.theta_max = meta.at("theta_max").get<double>();
    m.theta_samples = meta.at("theta_samples").get<std::size_t>();
    m.g2 = meta.at("g2").get<bool>();
    m.version = meta.at("version").get<std::string>();
    m.warnings = meta.at("warnings").get<std::vector<std::string>>();
    for (const auto& r : doc.at("rows")) {
        ScanRow row;
        row.kd = r.at("kd").get<double>();
        row.theta = r.at("theta").get<double>();
        row.intensity = r.at("intensity").get<double>();
        if (!r.at("g2").is_null())
            row.g2 = r.at("g2").get<double>();
        table.rows.push_back(row);
    }
    return table;
}

void write_csv(std::ostream& out, const CrossingReport& report)
{
    out << "kind,theta\n";
    for (double t : report.crossings)
        out << "crossing," << format_double(t) << '\n';
    for (double t : report.touches)
        out << "touch," << format_double(t) << '\n';
}

nlohmann::json to_json(const CrossingReport& report)
{
    return {{"crossings", report.crossings}, {"touches", report.touches}};
}

} // namespace dipolar
