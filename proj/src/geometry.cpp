#include "dipolar/geometry.hpp"

#include <cmath>
#include <string>

#include "dipolar/errors.hpp"

namespace dipolar {

std::string_view to_string(Layout layout)
{
    return layout == Layout::Line ? "line" : "loop";
}

bool parse_layout(std::string_view name, Layout& out)
{
    if (name == "line") {
        out = Layout::Line;
        return true;
    }
    if (name == "loop") {
        out = Layout::Loop;
        return true;
    }
    return false;
}

Geometry::Geometry(Layout layout, double kd) : layout_(layout), kd_(kd)
{
    if (!std::isfinite(kd) || kd <= 0.0)
        throw InvalidInput("kd must be positive, got " + std::to_string(kd));
}

std::array<Vec3, kAtomCount> atom_positions(const Geometry& geometry)
{
    const double d = geometry.kd();
    if (geometry.layout() == Layout::Line)
        return {{{d, 0.0, 0.0}, {2.0 * d, 0.0, 0.0}, {3.0 * d, 0.0, 0.0}}};
    return {{{d, 0.0, 0.0}, {2.0 * d, 0.0, 0.0}, {1.5 * d, 0.0, std::sqrt(3.0) * d / 2.0}}};
}

Vec3 detector_direction(double theta)
{
    return {std::sin(theta), 0.0, std::cos(theta)};
}

double optical_phase(const Geometry& geometry, std::size_t atom, double theta)
{
    if (atom < 1 || atom > kAtomCount)
        throw InvalidInput("atom index " + std::to_string(atom) + " out of range 1..3");
    const double kd = geometry.kd();
    const double s = std::sin(theta);
    if (geometry.layout() == Layout::Line || atom < 3)
        return static_cast<double>(atom) * kd * s;
    return (3.0 * kd * s + std::sqrt(3.0) * kd * std::cos(theta)) / 2.0;
}

PhaseVector phase_vector(const Geometry& geometry, double theta)
{
    return {optical_phase(geometry, 1, theta), optical_phase(geometry, 2, theta),
            optical_phase(geometry, 3, theta)};
}

Layout natural_layout(NamedState tag)
{
    switch (tag) {
    case NamedState::LineW21:
    case NamedState::LineWbar21:
    case NamedState::LineWtilde21:
        return Layout::Line;
    default:
        return Layout::Loop;
    }
}

} // namespace dipolar
