#include "dipolar/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>

#include "dipolar/errors.hpp"
#include "dipolar/version.hpp"

namespace dipolar {
namespace {

double clamp_kd(double kd, std::vector<std::string>& warnings)
{
    if (!std::isfinite(kd) || kd <= 0.0)
        throw InvalidInput("kd must be positive, got " + std::to_string(kd));
    if (kd < kMinKd) {
        warnings.push_back("kd " + std::to_string(kd) + " raised to minimum " + std::to_string(kMinKd));
        return kMinKd;
    }
    return kd;
}

ScanRow evaluate_row(const EmitterCorrelations& corr, const Geometry& geometry, double theta,
                     bool with_g2)
{
    const auto phases = phase_vector(geometry, theta);
    ScanRow row;
    row.kd = geometry.kd();
    row.theta = theta;
    row.intensity = intensity_bruteforce(corr, phases);
    if (with_g2 && row.intensity >= kIntensityFloor)
        row.g2 = g2_numerator(corr, phases) / (row.intensity * row.intensity);
    return row;
}

// One kernel, two drivers. Rows are independent and written to their own
// slot, so the parallel table matches the serial one bit for bit.
template <typename RowFn>
void fill_rows(std::vector<ScanRow>& rows, Execution execution, const RowFn& row_at)
{
    const auto count = static_cast<std::int64_t>(rows.size());
    if (execution == Execution::Serial) {
        for (std::int64_t i = 0; i < count; ++i)
            rows[static_cast<std::size_t>(i)] = row_at(static_cast<std::size_t>(i));
        return;
    }

    std::vector<std::exception_ptr> errors(rows.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            rows[idx] = row_at(idx);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

double grid_point(double lo, double hi, std::size_t i, std::size_t n)
{
    if (i + 1 == n)
        return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::uint64_t fnv1a(std::span<const Complex> amplitudes)
{
    std::uint64_t hash = 14695981039346656037ull;
    for (const auto& a : amplitudes) {
        const double parts[2] = {a.real(), a.imag()};
        unsigned char bytes[sizeof parts];
        std::memcpy(bytes, parts, sizeof parts);
        for (unsigned char b : bytes) {
            hash ^= b;
            hash *= 1099511628211ull;
        }
    }
    return hash;
}

} // namespace

std::string state_label(const PureState& state, std::optional<Layout> layout)
{
    if (state.num_atoms() == kAtomCount) {
        std::vector<NamedState> order(std::begin(kAllNamedStates), std::end(kAllNamedStates));
        if (layout)
            std::stable_partition(order.begin(), order.end(),
                                  [&](NamedState t) { return natural_layout(t) == *layout; });
        for (auto tag : order) {
            const PureState named = named_state(tag);
            bool same = true;
            for (std::size_t i = 0; i < named.dimension() && same; ++i)
                same = std::abs(named[i] - state[i]) < 1e-12;
            if (same)
                return std::string(to_string(tag));
        }
    }
    std::ostringstream out;
    out << "custom:" << std::hex << fnv1a(state.amplitudes());
    return out.str();
}

ScanTable angular_scan(const PureState& state, const Geometry& geometry, double theta_min,
                       double theta_max, std::size_t samples, Observables observables,
                       Execution execution)
{
    if (!std::isfinite(theta_min) || !std::isfinite(theta_max) || !(theta_min < theta_max))
        throw InvalidInput("angular scan needs theta_min < theta_max");
    if (samples < 2)
        throw InvalidInput("angular scan needs at least 2 samples");

    ScanTable table;
    auto& meta = table.metadata;
    const Geometry geo(geometry.layout(), clamp_kd(geometry.kd(), meta.warnings));
    meta.state = state_label(state, geometry.layout());
    meta.layout = geo.layout();
    meta.kd_min = meta.kd_max = geo.kd();
    meta.kd_samples = 1;
    meta.theta_min = theta_min;
    meta.theta_max = theta_max;
    meta.theta_samples = samples;
    meta.g2 = observables.g2;
    meta.version = kVersion;

    const EmitterCorrelations corr(state);
    table.rows.resize(samples);
    fill_rows(table.rows, execution, [&](std::size_t i) {
        return evaluate_row(corr, geo, grid_point(theta_min, theta_max, i, samples), observables.g2);
    });
    return table;
}

ScanTable surface_scan(const PureState& state, Layout layout, double kd_min, double kd_max,
                       std::size_t kd_samples, std::size_t theta_samples, Observables observables,
                       Execution execution)
{
    if (!std::isfinite(kd_min) || !std::isfinite(kd_max) || !(kd_min > 0.0) || !(kd_min < kd_max))
        throw InvalidInput("surface scan needs 0 < kd_min < kd_max");
    if (kd_samples < 2 || theta_samples < 2)
        throw InvalidInput("surface scan needs at least 2 samples along each axis");

    ScanTable table;
    auto& meta = table.metadata;
    kd_min = clamp_kd(kd_min, meta.warnings);
    if (!(kd_min < kd_max))
        throw InvalidInput("kd range is empty after raising kd_min to the minimum");
    meta.state = state_label(state, layout);
    meta.layout = layout;
    meta.surface = true;
    meta.kd_min = kd_min;
    meta.kd_max = kd_max;
    meta.kd_samples = kd_samples;
    meta.theta_min = -std::numbers::pi;
    meta.theta_max = std::numbers::pi;
    meta.theta_samples = theta_samples;
    meta.g2 = observables.g2;
    meta.version = kVersion;

    std::vector<Geometry> geometries;
    geometries.reserve(kd_samples);
    for (std::size_t j = 0; j < kd_samples; ++j)
        geometries.emplace_back(layout, grid_point(kd_min, kd_max, j, kd_samples));

    const EmitterCorrelations corr(state);
    table.rows.resize(kd_samples * theta_samples);
    fill_rows(table.rows, execution, [&](std::size_t idx) {
        const std::size_t j = idx / theta_samples;
        const std::size_t i = idx % theta_samples;
        // Half-open [-pi, pi): the periodic seam is sampled once.
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) /
                                                     static_cast<double>(theta_samples);
        return evaluate_row(corr, geometries[j], theta, observables.g2);
    });
    return table;
}

CrossingReport unity_crossings(const ScanTable& scan, const G2Function& g2)
{
    if (scan.metadata.surface)
        throw InvalidInput("crossing detection needs an angular scan, not a surface");
    if (!scan.metadata.g2)
        throw InvalidInput("crossing detection needs a scan with the g2 column");

    const auto& rows = scan.rows;
    const std::size_t n = rows.size();
    auto excess = [&](std::size_t i) -> std::optional<double> {
        if (!rows[i].g2)
            return std::nullopt;
        return *rows[i].g2 - 1.0;
    };
    auto excess_at = [&](double theta) -> std::optional<double> {
        const auto v = g2(theta);
        if (!v)
            return std::nullopt;
        return *v - 1.0;
    };

    CrossingReport report;

    // Sign changes between neighbouring samples, refined by bisection.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto fa = excess(i);
        const auto fb = excess(i + 1);
        if (!fa || !fb)
            continue;
        if (*fa == 0.0) {
            const auto fp = i > 0 ? excess(i - 1) : std::nullopt;
            if (fp && *fp * *fb < 0.0)
                report.crossings.push_back(rows[i].theta);
            continue;
        }
        if (!(*fa * *fb < 0.0))
            continue;
        double lo = rows[i].theta;
        double hi = rows[i + 1].theta;
        double flo = *fa;
        double mid = 0.5 * (lo + hi);
        for (int iter = 0; iter < 200; ++iter) {
            mid = 0.5 * (lo + hi);
            const auto fm = excess_at(mid);
            if (!fm)
                break;
            if (std::abs(*fm) < kCrossingTolerance)
                break;
            if ((*fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = *fm;
            } else {
                hi = mid;
            }
            if (hi - lo <= 0.0)
                break;
        }
        report.crossings.push_back(mid);
    }

    // Local minima of |g2 - 1| that do not change sign, refined by golden section.
    constexpr double kInvPhi = 0.6180339887498949;
    for (std::size_t i = 0; i < n; ++i) {
        const auto f = excess(i);
        if (!f)
            continue;
        const auto fl = i > 0 ? excess(i - 1) : std::nullopt;
        const auto fr = i + 1 < n ? excess(i + 1) : std::nullopt;
        if ((fl && *fl * *f < 0.0) || (fr && *fr * *f < 0.0))
            continue;
        if (*f == 0.0 && fl && fr && *fl * *fr < 0.0)
            continue;
        if ((fl && std::abs(*fl) < std::abs(*f)) || (fr && std::abs(*fr) <= std::abs(*f)))
            continue;

        double a = rows[i > 0 ? i - 1 : i].theta;
        double b = rows[i + 1 < n ? i + 1 : i].theta;
        auto abs_excess = [&](double t) {
            const auto v = excess_at(t);
            return v ? std::abs(*v) : std::numeric_limits<double>::infinity();
        };
        double best_theta = rows[i].theta;
        double best = std::abs(*f);
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        double fc = abs_excess(c);
        double fd = abs_excess(d);
        for (int iter = 0; iter < 100 && b - a > 1e-14; ++iter) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = abs_excess(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = abs_excess(d);
            }
        }
        for (auto [t, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
            if (v < best) {
                best = v;
                best_theta = t;
            }
        }
        if (best < kTouchTolerance) {
            const double spacing = n > 1 ? std::abs(rows[1].theta - rows[0].theta) : 0.0;
            if (report.touches.empty() || std::abs(best_theta - report.touches.back()) > spacing)
                report.touches.push_back(best_theta);
        }
    }
    return report;
}

CrossingReport unity_crossings(const ScanTable& scan, const PureState& state, const Geometry& geometry)
{
    const EmitterCorrelations corr(state);
    return unity_crossings(scan, [&](double theta) {
        return g2_bruteforce(corr, phase_vector(geometry, theta));
    });
}

} // namespace dipolar
