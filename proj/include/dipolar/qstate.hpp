#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dipolar {

using Complex = std::complex<double>;

/// Unnormalized amplitude vector, the result of applying ladder operators.
using StateVector = std::vector<Complex>;

/**
 * Normalized pure state of N two-level atoms over the 2^N computational basis.
 *
 * Basis index encoding is MSB-first: atom 1 is the most significant bit, so
 * |110> is index 6 for N = 3. Bit value 1 means the atom is excited.
 */
class PureState {
public:
    /// Throws InvalidInput unless amplitudes has length 2^N and unit norm (1e-12).
    PureState(std::size_t num_atoms, StateVector amplitudes);

    /// Rescales to unit norm first; throws InvalidInput on the zero vector.
    static PureState normalized(std::size_t num_atoms, StateVector amplitudes);

    std::size_t num_atoms() const noexcept { return num_atoms_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[index]; }

    /// Expected total number of excited atoms.
    double excitation_number() const;

private:
    std::size_t num_atoms_;
    StateVector amplitudes_;
};

enum class NamedState {
    LineW21,
    LineWbar21,
    LineWtilde21,
    LoopW21,
    LoopGhzBar21,
    LoopGhzTilde21,
};

inline constexpr NamedState kAllNamedStates[] = {
    NamedState::LineW21,      NamedState::LineWbar21,   NamedState::LineWtilde21,
    NamedState::LoopW21,      NamedState::LoopGhzBar21, NamedState::LoopGhzTilde21,
};

std::string_view to_string(NamedState tag);

/// Inverse of to_string; returns false for unknown names.
bool parse_named_state(std::string_view name, NamedState& out);

/// Product basis state; bits[0] is atom 1.
PureState basis_state(std::size_t num_atoms, const std::vector<int>& bits);

/// The two-excitation entangled states with the published sign conventions.
PureState named_state(NamedState tag);

/// S^-_i |psi>, with i in 1..N.
StateVector apply_lowering(std::span<const Complex> state, std::size_t num_atoms, std::size_t atom);
StateVector apply_lowering(const PureState& state, std::size_t atom);

/// S^+_i |psi>, with i in 1..N.
StateVector apply_raising(std::span<const Complex> state, std::size_t num_atoms, std::size_t atom);

/**
 * Normal-ordered expectation value
 *   <psi| S+_{r1} ... S+_{rp} S-_{l1} ... S-_{lq} |psi>
 * evaluated by operator application on the state vector. Indices are 1-based.
 */
Complex correlator(const PureState& state, const std::vector<std::size_t>& raising,
                   const std::vector<std::size_t>& lowering);

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> v);

} // namespace dipolar
