#include "dipolar/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "dipolar/dipole.hpp"
#include "dipolar/errors.hpp"
#include "dipolar/io.hpp"
#include "dipolar/qstate.hpp"
#include "dipolar/radiation.hpp"
#include "dipolar/scan.hpp"
#include "dipolar/version.hpp"

namespace dipolar::cli {
namespace {

// Short names resolve against the layout: "w21" is the line or loop W state.
std::optional<NamedState> resolve_named(const std::string& name, Layout layout)
{
    NamedState tag;
    if (parse_named_state(name, tag))
        return tag;
    if (name == "w21")
        return layout == Layout::Line ? NamedState::LineW21 : NamedState::LoopW21;
    if (name == "wbar21")
        return NamedState::LineWbar21;
    if (name == "wtilde21")
        return NamedState::LineWtilde21;
    if (name == "ghzbar21")
        return NamedState::LoopGhzBar21;
    if (name == "ghztilde21")
        return NamedState::LoopGhzTilde21;
    return std::nullopt;
}

PureState resolve_state(const RunConfig& config, std::ostream& err)
{
    if (config.state.empty())
        throw InvalidInput("--state is required for this command");
    if (auto tag = resolve_named(config.state, config.layout)) {
        if (natural_layout(*tag) != config.layout)
            err << "warning: " << to_string(*tag) << " evaluated on a " << to_string(config.layout)
                << " layout\n";
        return named_state(*tag);
    }
    if (!std::filesystem::exists(config.state))
        throw InvalidInput("unknown state '" + config.state + "' (not a named state or a readable file)");
    auto loaded = load_custom_state(config.state);
    if (loaded.renormalized())
        err << "note: custom state renormalized (input norm " << format_double(loaded.original_norm)
            << ")\n";
    return std::move(loaded.state);
}

void validate(const RunConfig& c)
{
    if (!(c.omega >= 0.0))
        throw InvalidInput("--omega must be >= 0");
    if (!(c.gamma > 0.0))
        throw InvalidInput("--gamma must be > 0");
    if (c.omega13 && c.layout != Layout::Line)
        throw InvalidInput("--omega13 applies to the line layout only");
    if (c.theta_min && c.theta_max && !(*c.theta_min < *c.theta_max))
        throw InvalidInput("--theta-min must be below --theta-max");
    if (c.samples && *c.samples < 2)
        throw InvalidInput("--samples must be at least 2");
    if (c.command == Command::Surface) {
        if (!(c.kd_min > 0.0 && c.kd_min < c.kd_max))
            throw InvalidInput("surface needs 0 < --kd-min < --kd-max");
        if (c.kd_samples < 2)
            throw InvalidInput("--kd-samples must be at least 2");
    } else if (!(c.kd > 0.0)) {
        throw InvalidInput("--kd must be > 0");
    }
}

void emit_table(const RunConfig& config, const ScanTable& table, std::ostream& out, std::ostream& err)
{
    for (const auto& w : table.metadata.warnings)
        err << "warning: " << w << '\n';
    if (config.format == Format::Json)
        out << to_json(table).dump(2) << '\n';
    else
        write_csv(out, table);
}

void run_eigen(const RunConfig& config, std::ostream& out)
{
    const double g = coupling_strength(config.kd, config.gamma);
    const CouplingParams params = config.layout == Layout::Line
                                      ? CouplingParams::line(config.omega, g, config.omega13.value_or(0.0), config.gamma)
                                      : CouplingParams::loop(config.omega, g, config.gamma);
    const auto decomposition = diagonalize(build_hamiltonian(config.layout, params));
    const auto classes = classify_eigenstates(decomposition, config.layout);

    // Which degenerate cluster, if any, each eigenvector belongs to.
    std::vector<const EigenSubspace*> owner(classes.vectors.size(), nullptr);
    for (const auto& sub : classes.degenerate)
        for (std::size_t k = sub.first; k < sub.first + sub.dimension; ++k)
            owner[k] = &sub;

    auto subspace_tags = [](const EigenSubspace* sub) {
        std::string joined;
        if (!sub)
            return joined;
        for (const auto& m : sub->contains) {
            if (!joined.empty())
                joined += ';';
            joined += to_string(m.tag);
        }
        return joined;
    };

    if (config.format == Format::Json) {
        nlohmann::json vectors = nlohmann::json::array();
        for (const auto& v : classes.vectors)
            vectors.push_back({{"eigenvalue", v.eigenvalue},
                               {"match", v.match ? std::string(to_string(*v.match)) : "unnamed"},
                               {"overlap", v.overlap}});
        nlohmann::json subspaces = nlohmann::json::array();
        for (const auto& sub : classes.degenerate) {
            nlohmann::json contains = nlohmann::json::array();
            for (const auto& m : sub.contains)
                contains.push_back({{"state", std::string(to_string(m.tag))}, {"projection", m.projection}});
            subspaces.push_back({{"eigenvalue", sub.eigenvalue},
                                 {"dimension", sub.dimension},
                                 {"contains", std::move(contains)}});
        }
        std::vector<double> values(decomposition.eigenvalues.data(),
                                   decomposition.eigenvalues.data() + decomposition.eigenvalues.size());
        nlohmann::json doc = {
            {"layout", std::string(to_string(config.layout))},
            {"kd", config.kd},
            {"omega", config.omega},
            {"gamma", config.gamma},
            {"coupling", g},
            {"omega13", params.coupling(0, 2)},
            {"eigenvalues", values},
            {"eigenvectors", std::move(vectors)},
            {"degenerate_subspaces", std::move(subspaces)},
            {"version", kVersion},
        };
        out << doc.dump(2) << '\n';
        return;
    }

    out << "# layout=" << to_string(config.layout) << " kd=" << format_double(config.kd)
        << " omega=" << format_double(config.omega) << " gamma=" << format_double(config.gamma)
        << " coupling=" << format_double(g) << " omega13=" << format_double(params.coupling(0, 2))
        << '\n';
    out << "index,eigenvalue,match,overlap,subspace_contains\n";
    for (std::size_t k = 0; k < classes.vectors.size(); ++k) {
        const auto& v = classes.vectors[k];
        out << k << ',' << format_double(v.eigenvalue) << ','
            << (v.match ? to_string(*v.match) : std::string_view("unnamed")) << ','
            << format_double(v.overlap) << ',' << subspace_tags(owner[k]) << '\n';
    }
}

void run_command(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const Observables observables{config.g2};
    switch (config.command) {
    case Command::Eigen:
        run_eigen(config, out);
        return;
    case Command::Scan: {
        const PureState state = resolve_state(config, err);
        const Geometry geometry(config.layout, config.kd);
        const auto table = angular_scan(state, geometry, config.theta_min.value_or(-std::numbers::pi),
                                        config.theta_max.value_or(std::numbers::pi),
                                        config.samples.value_or(361), observables);
        emit_table(config, table, out, err);
        return;
    }
    case Command::Surface: {
        const PureState state = resolve_state(config, err);
        const auto table = surface_scan(state, config.layout, config.kd_min, config.kd_max,
                                        config.kd_samples, config.samples.value_or(181), observables);
        emit_table(config, table, out, err);
        return;
    }
    case Command::Crossings: {
        const PureState state = resolve_state(config, err);
        const Geometry geometry(config.layout, config.kd);
        const auto table = angular_scan(state, geometry, config.theta_min.value_or(-std::numbers::pi / 2),
                                        config.theta_max.value_or(std::numbers::pi / 2),
                                        config.samples.value_or(2001), Observables{true});
        for (const auto& w : table.metadata.warnings)
            err << "warning: " << w << '\n';
        const Geometry used(config.layout, table.metadata.kd_min);
        const auto report = unity_crossings(table, state, used);
        if (config.format == Format::Json) {
            auto doc = to_json(report);
            doc["state"] = table.metadata.state;
            doc["layout"] = std::string(to_string(config.layout));
            doc["kd"] = used.kd();
            doc["theta_min"] = table.metadata.theta_min;
            doc["theta_max"] = table.metadata.theta_max;
            doc["samples"] = table.metadata.theta_samples;
            out << doc.dump(2) << '\n';
        } else {
            write_csv(out, report);
        }
        return;
    }
    }
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        validate(config);
        if (config.output.empty()) {
            run_command(config, out, err);
        } else {
            // Render fully before touching the file so failures leave nothing behind.
            std::ostringstream buffer;
            run_command(config, buffer, err);
            std::ofstream file(config.output);
            if (!file)
                throw InvalidInput("cannot open output file '" + config.output + "'");
            file << buffer.str();
        }
        return kOk;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Far-field intensity and g2(0) of three dipole-coupled two-level atoms", "dipolar"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig config;
    std::string layout = "line";
    std::string format = "csv";
    std::string observables = "intensity,g2";
    std::optional<double> omega13;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--layout", layout, "line or loop")->check(CLI::IsMember({"line", "loop"}));
        sub->add_option("--kd", config.kd, "dimensionless spacing k*d");
        sub->add_option("--omega", config.omega, "transition frequency in units of gamma");
        sub->add_option("--gamma", config.gamma, "decay-rate unit");
        sub->add_option("--omega13", omega13, "override next-nearest coupling (line only)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", config.output, "output file (default: stdout)");
    };
    auto add_state = [&](CLI::App* sub) {
        sub->add_option("--state", config.state, "named state or custom-state file")->required();
        sub->add_option("--theta-min", config.theta_min, "radians");
        sub->add_option("--theta-max", config.theta_max, "radians");
        sub->add_option("--samples", config.samples, "theta samples");
        sub->add_option("--observables", observables, "comma list from {intensity,g2}");
    };

    auto* eigen = app.add_subcommand("eigen", "spectrum and named-eigenstate report");
    add_common(eigen);
    auto* scan = app.add_subcommand("scan", "angular scan of intensity and g2");
    add_common(scan);
    add_state(scan);
    auto* surface = app.add_subcommand("surface", "(kd, theta) grid over theta in [-pi, pi)");
    add_common(surface);
    add_state(surface);
    surface->add_option("--kd-min", config.kd_min);
    surface->add_option("--kd-max", config.kd_max);
    surface->add_option("--kd-samples", config.kd_samples);
    auto* crossings = app.add_subcommand("crossings", "angles where g2(0) = 1");
    add_common(crossings);
    add_state(crossings);

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i)
        args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::Error& e) {
        // Help and version requests are reported by CLI11 as "errors" with code 0.
        return app.exit(e, out, err) == 0 ? kOk : kValidationError;
    }

    if (eigen->parsed())
        config.command = Command::Eigen;
    else if (scan->parsed())
        config.command = Command::Scan;
    else if (surface->parsed())
        config.command = Command::Surface;
    else
        config.command = Command::Crossings;

    parse_layout(layout, config.layout);
    config.format = format == "json" ? Format::Json : Format::Csv;
    config.omega13 = omega13;

    config.g2 = false;
    std::stringstream list(observables);
    std::string item;
    while (std::getline(list, item, ',')) {
        if (item == "g2") {
            config.g2 = true;
        } else if (item != "intensity") {
            err << "error: unknown observable '" << item << "'\n";
            return kValidationError;
        }
    }
    return run(config, out, err);
}

} // namespace dipolar::cli
