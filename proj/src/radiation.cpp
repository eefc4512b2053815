#include "dipolar/radiation.hpp"

#include <cmath>
#include <string>

#include "dipolar/errors.hpp"

namespace dipolar {
namespace {

constexpr std::size_t N = kAtomCount;

void require_three_atoms(const PureState& state)
{
    if (state.num_atoms() != N)
        throw InvalidInput("radiation observables need a three-atom state, got N = " +
                           std::to_string(state.num_atoms()));
}

double checked_real(Complex z, const char* what)
{
    if (std::abs(z.imag()) >= kImaginaryTolerance)
        throw ConsistencyError(std::string(what) + " has imaginary part " + std::to_string(z.imag()));
    return z.real();
}

// Physically non-negative quantities: tolerate round-off below zero only.
double checked_nonnegative(double x, const char* what)
{
    if (x < -kImaginaryTolerance)
        throw ConsistencyError(std::string(what) + " is negative: " + std::to_string(x));
    return x < 0.0 ? 0.0 : x;
}

struct PhaseDifferences {
    double c12, c23, c13;
};

PhaseDifferences cosines(const DetectionContext& ctx)
{
    const auto p = ctx.phases();
    return {std::cos(p[0] - p[1]), std::cos(p[1] - p[2]), std::cos(p[0] - p[2])};
}

} // namespace

EmitterCorrelations::EmitterCorrelations(const PureState& state)
{
    require_three_atoms(state);
    for (std::size_t i = 0; i < N; ++i) {
        dipole[i] = correlator(state, {i + 1}, {});
        for (std::size_t j = 0; j < N; ++j) {
            first[i][j] = correlator(state, {i + 1}, {j + 1});
            for (std::size_t k = 0; k < N; ++k)
                for (std::size_t l = 0; l < N; ++l)
                    second[i][j][k][l] = correlator(state, {i + 1, j + 1}, {k + 1, l + 1});
        }
    }
}

double intensity_bruteforce(const EmitterCorrelations& corr, const PhaseVector& phases)
{
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            sum += corr.first[i][j] * std::polar(1.0, phases[i] - phases[j]);
    return checked_nonnegative(checked_real(sum, "intensity"), "intensity");
}

double intensity_bruteforce(const PureState& state, const DetectionContext& ctx)
{
    return intensity_bruteforce(EmitterCorrelations(state), ctx.phases());
}

double g2_numerator(const EmitterCorrelations& corr, const PhaseVector& phases)
{
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k)
                for (std::size_t l = 0; l < N; ++l)
                    sum += corr.second[i][j][k][l] *
                           std::polar(1.0, phases[i] + phases[j] - phases[k] - phases[l]);
    return checked_nonnegative(checked_real(sum, "g2 numerator"), "g2 numerator");
}

std::optional<double> g2_bruteforce(const EmitterCorrelations& corr, const PhaseVector& phases)
{
    const double intensity = intensity_bruteforce(corr, phases);
    if (intensity < kIntensityFloor)
        return std::nullopt;
    return g2_numerator(corr, phases) / (intensity * intensity);
}

std::optional<double> g2_bruteforce(const PureState& state, const DetectionContext& ctx)
{
    return g2_bruteforce(EmitterCorrelations(state), ctx.phases());
}

IntensityBreakdown intensity_breakdown(const PureState& state, const DetectionContext& ctx)
{
    const EmitterCorrelations corr(state);
    const auto phases = ctx.phases();
    IntensityBreakdown out;
    Complex dipole{0.0, 0.0};
    Complex correlation{0.0, 0.0};
    for (std::size_t i = 0; i < N; ++i) {
        out.incoherent += checked_real(corr.first[i][i], "population");
        out.max_dipole_moment = std::max(out.max_dipole_moment, std::abs(corr.dipole[i]));
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j)
                continue;
            const Complex phase = std::polar(1.0, phases[i] - phases[j]);
            // <S-_j> = conj(<S+_j>)
            const Complex product = corr.dipole[i] * std::conj(corr.dipole[j]);
            dipole += product * phase;
            correlation += (corr.first[i][j] - product) * phase;
        }
    }
    out.dipole = checked_real(dipole, "dipole term");
    out.correlation = checked_real(correlation, "correlation term");
    return out;
}

double intensity_closed_form(NamedState tag, const DetectionContext& ctx, const DiagnosticSink& warn)
{
    if (warn && natural_layout(tag) != ctx.geometry.layout()) {
        warn(std::string(to_string(tag)) + " evaluated on a " +
             std::string(to_string(ctx.geometry.layout())) + " layout");
    }
    const auto [c12, c23, c13] = cosines(ctx);
    const double sqrt2 = std::sqrt(2.0);
    switch (tag) {
    case NamedState::LineW21:
        return 2.0 + 0.5 * (c13 + sqrt2 * (c12 + c23));
    case NamedState::LineWbar21:
        return 2.0 + 0.5 * (c13 - sqrt2 * (c12 + c23));
    case NamedState::LineWtilde21:
        return 2.0 - c13;
    case NamedState::LoopW21:
        return 2.0 + 2.0 / 3.0 * (c13 + c12 + c23);
    case NamedState::LoopGhzBar21:
        return 2.0 - c23;
    case NamedState::LoopGhzTilde21:
        return 2.0 - c13;
    }
    return 0.0;
}

bool has_g2_closed_form(NamedState tag)
{
    return tag == NamedState::LineW21 || tag == NamedState::LineWbar21 || tag == NamedState::LoopW21;
}

double g2_closed_form(NamedState tag, const DetectionContext& ctx)
{
    const auto [c12, c23, c13] = cosines(ctx);
    const double sqrt2 = std::sqrt(2.0);
    switch (tag) {
    case NamedState::LineW21: {
        const double a = c13 + sqrt2 * (c12 + c23);
        const double den = 2.0 + 0.5 * a;
        return (4.0 + 2.0 * a) / (den * den);
    }
    case NamedState::LineWbar21: {
        const double a = c13 - sqrt2 * (c12 + c23);
        const double den = 2.0 + 0.5 * a;
        return (4.0 + 2.0 * a) / (den * den);
    }
    case NamedState::LoopW21: {
        const double s = c12 + c23 + c13;
        const double den = 2.0 + 2.0 / 3.0 * s;
        return (4.0 + 8.0 / 3.0 * s) / (den * den);
    }
    default:
        throw UnsupportedOperation("no closed-form g2 for " + std::string(to_string(tag)) +
                                   "; use g2_bruteforce");
    }
}

std::string_view to_string(Radiance r)
{
    switch (r) {
    case Radiance::Superradiant: return "superradiant";
    case Radiance::Subradiant: return "subradiant";
    case Radiance::Neutral: return "neutral";
    }
    return "unknown";
}

Radiance classify_radiance(double intensity, int excitation_count)
{
    if (excitation_count < 0)
        throw InvalidInput("excitation count must be >= 0");
    const double baseline = excitation_count;
    if (intensity > baseline + 1e-9)
        return Radiance::Superradiant;
    if (intensity < baseline - 1e-9)
        return Radiance::Subradiant;
    return Radiance::Neutral;
}

} // namespace dipolar
