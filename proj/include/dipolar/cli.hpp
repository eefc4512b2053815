#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dipolar/geometry.hpp"

namespace dipolar::cli {

enum class Command { Eigen, Scan, Surface, Crossings };
enum class Format { Csv, Json };

enum ExitCode : int {
    kOk = 0,
    kValidationError = 2,
    kInternalError = 3,
};

struct RunConfig {
    Command command = Command::Scan;
    Layout layout = Layout::Line;
    std::string state; // named tag (full or short) or path to a custom-state file
    double kd = 0.6283185307179586; // 2 pi / 10
    double kd_min = 0.6283185307179586;
    double kd_max = 2.0943951023931957; // 2 pi / 3
    std::size_t kd_samples = 50;
    std::optional<double> theta_min;
    std::optional<double> theta_max;
    std::optional<std::size_t> samples;
    double omega = 1.0;
    double gamma = 1.0;
    std::optional<double> omega13;
    bool g2 = true;
    Format format = Format::Csv;
    std::string output; // empty = standard output
};

/// Executes a validated config; data goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (command first) and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dipolar::cli
