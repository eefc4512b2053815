#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "dipolar/dipole.hpp"
#include "dipolar/qstate.hpp"
#include "dipolar/scan.hpp"

namespace dipolar {

struct LoadedState {
    PureState state;
    double original_norm = 1.0; // norm of the amplitudes as written in the file
    bool renormalized() const;
};

/// Reads a JSON array of 2^N [re, im] pairs (MSB-first atom ordering) and
/// normalizes it. Throws InvalidInput with line/column on malformed input and
/// on the zero vector.
LoadedState parse_custom_state(const std::string& text, std::size_t num_atoms = kAtomCount);
LoadedState load_custom_state(const std::string& path, std::size_t num_atoms = kAtomCount);

/// CSV with header `theta,intensity,g2` (surfaces prepend `kd`); undefined
/// g2 is an empty field. Numbers carry 17 significant digits.
void write_csv(std::ostream& out, const ScanTable& table);

nlohmann::json to_json(const ScanTable& table);
ScanTable scan_table_from_json(const nlohmann::json& doc);

void write_csv(std::ostream& out, const CrossingReport& report);
nlohmann::json to_json(const CrossingReport& report);

std::string format_double(double value);

} // namespace dipolar
