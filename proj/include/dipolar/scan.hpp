#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dipolar/geometry.hpp"
#include "dipolar/qstate.hpp"
#include "dipolar/radiation.hpp"

namespace dipolar {

/// Serial is the reference kernel; Parallel runs the same per-row kernel
/// under OpenMP and must produce bitwise identical tables.
enum class Execution { Serial, Parallel };

struct Observables {
    bool g2 = true; // intensity is always produced
};

struct ScanRow {
    double kd = 0.0;
    double theta = 0.0;
    double intensity = 0.0;
    std::optional<double> g2;
};

struct ScanMetadata {
    std::string state; // named tag, or "custom:<hash>"
    Layout layout = Layout::Line;
    bool surface = false;
    double kd_min = 0.0;
    double kd_max = 0.0;
    std::size_t kd_samples = 1;
    double theta_min = 0.0;
    double theta_max = 0.0;
    std::size_t theta_samples = 0;
    bool g2 = false;
    std::string version;
    std::vector<std::string> warnings;
};

struct ScanTable {
    ScanMetadata metadata;
    std::vector<ScanRow> rows;
};

/// Smallest spacing a scan accepts; positive values below it are raised to it.
inline constexpr double kMinKd = 1e-3;

/// Named tag when the amplitudes equal a named state, else "custom:<fnv1a-hex>".
/// States derived for `layout` are preferred when amplitudes coincide.
std::string state_label(const PureState& state, std::optional<Layout> layout = std::nullopt);

/// Uniform grid over [theta_min, theta_max], both endpoints included.
ScanTable angular_scan(const PureState& state, const Geometry& geometry, double theta_min,
                       double theta_max, std::size_t samples, Observables observables = {},
                       Execution execution = Execution::Parallel);

/// kd uniform over [kd_min, kd_max] (outer), theta uniform over [-pi, pi) (inner).
ScanTable surface_scan(const PureState& state, Layout layout, double kd_min, double kd_max,
                       std::size_t kd_samples, std::size_t theta_samples,
                       Observables observables = {}, Execution execution = Execution::Parallel);

using G2Function = std::function<std::optional<double>(double theta)>;

struct CrossingReport {
    std::vector<double> crossings; // sign changes of g2 - 1, refined to |g2 - 1| < 1e-9
    std::vector<double> touches;   // tangential approaches with min |g2 - 1| < 1e-6
};

inline constexpr double kCrossingTolerance = 1e-9;
inline constexpr double kTouchTolerance = 1e-6;

/// Finds g2(0) = 1 points along an angular scan; `g2` re-evaluates the
/// observable for bisection and touch refinement.
CrossingReport unity_crossings(const ScanTable& scan, const G2Function& g2);

/// Convenience overload re-evaluating the brute-force g2 of `state`.
CrossingReport unity_crossings(const ScanTable& scan, const PureState& state, const Geometry& geometry);

} // namespace dipolar
