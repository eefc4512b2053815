#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "dipolar/qstate.hpp"

namespace dipolar {

enum class Layout { Line, Loop };

std::string_view to_string(Layout layout);
bool parse_layout(std::string_view name, Layout& out);

/// Layout the named state was derived for.
Layout natural_layout(NamedState tag);

/// Three atoms either on a line with spacing d or on an equilateral triangle
/// of side d. Lengths are measured in units of 1/k, so kd is dimensionless.
class Geometry {
public:
    /// Throws InvalidInput unless kd is finite and positive.
    Geometry(Layout layout, double kd);

    Layout layout() const noexcept { return layout_; }
    double kd() const noexcept { return kd_; }

private:
    Layout layout_;
    double kd_;
};

inline constexpr std::size_t kAtomCount = 3;

using Vec3 = std::array<double, 3>;
using PhaseVector = std::array<double, kAtomCount>;

/// Atom positions in units of 1/k. The line runs along x starting at x = d;
/// the loop shares atoms 1 and 2 with the line and lifts atom 3 along z.
std::array<Vec3, kAtomCount> atom_positions(const Geometry& geometry);

/// Far-field unit vector in the x-z plane at polar angle theta.
Vec3 detector_direction(double theta);

/// Phase k n.R_j accumulated from atom j (1-based) to a detector at theta.
double optical_phase(const Geometry& geometry, std::size_t atom, double theta);

PhaseVector phase_vector(const Geometry& geometry, double theta);

} // namespace dipolar
