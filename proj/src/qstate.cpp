#include "dipolar/qstate.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "dipolar/errors.hpp"

namespace dipolar {
namespace {

constexpr double kNormTolerance = 1e-12;

std::size_t checked_dimension(std::size_t num_atoms)
{
    if (num_atoms == 0 || num_atoms > 20)
        throw InvalidInput("number of atoms must be in 1..20, got " + std::to_string(num_atoms));
    return std::size_t{1} << num_atoms;
}

// Bit mask of atom `atom` (1-based) in the MSB-first encoding.
std::size_t atom_mask(std::size_t num_atoms, std::size_t atom)
{
    if (atom < 1 || atom > num_atoms)
        throw InvalidInput("atom index " + std::to_string(atom) + " out of range 1.." +
                           std::to_string(num_atoms));
    return std::size_t{1} << (num_atoms - atom);
}

void check_length(std::span<const Complex> state, std::size_t num_atoms)
{
    if (state.size() != checked_dimension(num_atoms))
        throw InvalidInput("state vector length " + std::to_string(state.size()) +
                           " does not match 2^" + std::to_string(num_atoms));
}

} // namespace

double norm(std::span<const Complex> v)
{
    double sum = 0.0;
    for (const auto& a : v)
        sum += std::norm(a);
    return std::sqrt(sum);
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket)
{
    if (bra.size() != ket.size())
        throw InvalidInput("inner product of vectors with different lengths");
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < bra.size(); ++i)
        sum += std::conj(bra[i]) * ket[i];
    return sum;
}

PureState::PureState(std::size_t num_atoms, StateVector amplitudes)
    : num_atoms_(num_atoms), amplitudes_(std::move(amplitudes))
{
    check_length(amplitudes_, num_atoms_);
    const double n = norm(amplitudes_);
    if (std::abs(n - 1.0) > kNormTolerance)
        throw InvalidInput("state is not normalized (norm " + std::to_string(n) + ")");
}

PureState PureState::normalized(std::size_t num_atoms, StateVector amplitudes)
{
    check_length(amplitudes, num_atoms);
    const double n = norm(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n))
        throw InvalidInput("cannot normalize the zero vector");
    for (auto& a : amplitudes)
        a /= n;
    return PureState(num_atoms, std::move(amplitudes));
}

double PureState::excitation_number() const
{
    double total = 0.0;
    for (std::size_t index = 0; index < amplitudes_.size(); ++index)
        total += std::norm(amplitudes_[index]) * std::popcount(index);
    return total;
}

std::string_view to_string(NamedState tag)
{
    switch (tag) {
    case NamedState::LineW21: return "line-w21";
    case NamedState::LineWbar21: return "line-wbar21";
    case NamedState::LineWtilde21: return "line-wtilde21";
    case NamedState::LoopW21: return "loop-w21";
    case NamedState::LoopGhzBar21: return "loop-ghzbar21";
    case NamedState::LoopGhzTilde21: return "loop-ghztilde21";
    }
    return "unknown";
}

bool parse_named_state(std::string_view name, NamedState& out)
{
    for (auto tag : kAllNamedStates) {
        if (to_string(tag) == name) {
            out = tag;
            return true;
        }
    }
    return false;
}

PureState basis_state(std::size_t num_atoms, const std::vector<int>& bits)
{
    const std::size_t dim = checked_dimension(num_atoms);
    if (bits.size() != num_atoms)
        throw InvalidInput("expected " + std::to_string(num_atoms) + " binary digits, got " +
                           std::to_string(bits.size()));
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1)
            throw InvalidInput("basis digits must be 0 or 1, got " + std::to_string(b));
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    StateVector amps(dim, Complex{0.0, 0.0});
    amps[index] = 1.0;
    return PureState(num_atoms, std::move(amps));
}

PureState named_state(NamedState tag)
{
    // Indices for N = 3, MSB-first.
    constexpr std::size_t k011 = 0b011;
    constexpr std::size_t k101 = 0b101;
    constexpr std::size_t k110 = 0b110;
    const double half = 0.5;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

    StateVector amps(8, Complex{0.0, 0.0});
    switch (tag) {
    case NamedState::LineW21:
        amps[k110] = half;
        amps[k011] = half;
        amps[k101] = inv_sqrt2;
        break;
    case NamedState::LineWbar21:
        amps[k110] = half;
        amps[k011] = half;
        amps[k101] = -inv_sqrt2;
        break;
    case NamedState::LineWtilde21:
        amps[k011] = inv_sqrt2;
        amps[k110] = -inv_sqrt2;
        break;
    case NamedState::LoopW21:
        amps[k110] = inv_sqrt3;
        amps[k011] = inv_sqrt3;
        amps[k101] = inv_sqrt3;
        break;
    case NamedState::LoopGhzBar21:
        amps[k101] = inv_sqrt2;
        amps[k110] = -inv_sqrt2;
        break;
    case NamedState::LoopGhzTilde21:
        amps[k011] = inv_sqrt2;
        amps[k110] = -inv_sqrt2;
        break;
    }
    return PureState(3, std::move(amps));
}

StateVector apply_lowering(std::span<const Complex> state, std::size_t num_atoms, std::size_t atom)
{
    check_length(state, num_atoms);
    const std::size_t mask = atom_mask(num_atoms, atom);
    StateVector out(state.size(), Complex{0.0, 0.0});
    for (std::size_t index = 0; index < state.size(); ++index) {
        if (index & mask)
            out[index & ~mask] = state[index];
    }
    return out;
}

StateVector apply_lowering(const PureState& state, std::size_t atom)
{
    return apply_lowering(state.amplitudes(), state.num_atoms(), atom);
}

StateVector apply_raising(std::span<const Complex> state, std::size_t num_atoms, std::size_t atom)
{
    check_length(state, num_atoms);
    const std::size_t mask = atom_mask(num_atoms, atom);
    StateVector out(state.size(), Complex{0.0, 0.0});
    for (std::size_t index = 0; index < state.size(); ++index) {
        if (!(index & mask))
            out[index | mask] = state[index];
    }
    return out;
}

Complex correlator(const PureState& state, const std::vector<std::size_t>& raising,
                   const std::vector<std::size_t>& lowering)
{
    const std::size_t n = state.num_atoms();
    StateVector v(state.amplitudes().begin(), state.amplitudes().end());
    // Rightmost operator acts first.
    for (auto it = lowering.rbegin(); it != lowering.rend(); ++it)
        v = apply_lowering(v, n, *it);
    for (auto it = raising.rbegin(); it != raising.rend(); ++it)
        v = apply_raising(v, n, *it);
    return inner_product(state.amplitudes(), v);
}

} // namespace dipolar
