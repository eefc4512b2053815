#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string_view>

#include "dipolar/geometry.hpp"
#include "dipolar/qstate.hpp"

namespace dipolar {

/// Far-field detector: atom layout plus the polar angle of observation.
struct DetectionContext {
    Geometry geometry;
    double theta = 0.0;

    PhaseVector phases() const { return phase_vector(geometry, theta); }
};

struct RadiationSample {
    double theta = 0.0;
    double intensity = 0.0;
    std::optional<double> g2; // empty where the intensity vanishes
};

/// Receives non-fatal diagnostics (e.g. a state evaluated on the "wrong" layout).
using DiagnosticSink = std::function<void(std::string_view)>;

/**
 * First- and second-order normal-ordered moments of a three-atom state:
 *   first[i][j]        = <S+_i S-_j>
 *   second[i][j][k][l] = <S+_i S+_j S-_k S-_l>
 * They do not depend on the detector, so a scan computes them once.
 */
struct EmitterCorrelations {
    using First = std::array<std::array<Complex, kAtomCount>, kAtomCount>;
    using Second = std::array<std::array<First, kAtomCount>, kAtomCount>;

    First first{};
    Second second{};
    std::array<Complex, kAtomCount> dipole{}; // <S+_i>

    explicit EmitterCorrelations(const PureState& state);
};

/// Residual imaginary parts above this abort with ConsistencyError.
inline constexpr double kImaginaryTolerance = 1e-10;
/// Intensities below this leave g2 undefined.
inline constexpr double kIntensityFloor = 1e-9;

/// I = sum_{i,j} <S+_i S-_j> exp(i(phi_i - phi_j)).
double intensity_bruteforce(const PureState& state, const DetectionContext& ctx);
double intensity_bruteforce(const EmitterCorrelations& corr, const PhaseVector& phases);

/// Unnormalized second-order moment <E- E- E+ E+>; never negative beyond -1e-10.
double g2_numerator(const EmitterCorrelations& corr, const PhaseVector& phases);

/// g2(0) = <E- E- E+ E+> / I^2, empty when I < kIntensityFloor.
std::optional<double> g2_bruteforce(const PureState& state, const DetectionContext& ctx);
std::optional<double> g2_bruteforce(const EmitterCorrelations& corr, const PhaseVector& phases);

/// The intensity split into incoherent populations, products of single-atom
/// dipole moments, and the remaining quantum correlations.
struct IntensityBreakdown {
    double incoherent = 0.0;
    double dipole = 0.0;
    double correlation = 0.0;
    double max_dipole_moment = 0.0; // max_i |<S+_i>|

    double total() const { return incoherent + dipole + correlation; }
};

IntensityBreakdown intensity_breakdown(const PureState& state, const DetectionContext& ctx);

/// Closed-form intensity of a named state. Evaluating a state on the other
/// layout is allowed; `warn` is told about it.
double intensity_closed_form(NamedState tag, const DetectionContext& ctx,
                             const DiagnosticSink& warn = {});

/// Closed-form g2(0); only LineW21, LineWbar21 and LoopW21 have one.
/// Throws UnsupportedOperation otherwise.
double g2_closed_form(NamedState tag, const DetectionContext& ctx);
bool has_g2_closed_form(NamedState tag);

enum class Radiance { Superradiant, Subradiant, Neutral };

std::string_view to_string(Radiance r);

/// Compares against the incoherent intensity of `excitation_count`
/// independently excited atoms, with a 1e-9 dead band.
Radiance classify_radiance(double intensity, int excitation_count);

} // namespace dipolar
