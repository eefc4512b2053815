#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dipolar/geometry.hpp"
#include "dipolar/qstate.hpp"

namespace dipolar {

using Matrix = Eigen::MatrixXcd;
using CouplingMatrix = Eigen::Matrix3d;

/**
 * Resonant dipole-dipole exchange strength for two atoms a distance d apart
 * with transition dipoles perpendicular to the separation:
 *
 *   Omega(kd) = (3 gamma / 4) [ -cos(kd)/kd + sin(kd)/(kd)^2 + cos(kd)/(kd)^3 ]
 *
 * Returned in the same units as gamma. Throws InvalidInput for kd <= 0.
 */
double coupling_strength(double kd, double gamma = 1.0);

/// Transition frequency, decay-rate unit and the symmetric exchange matrix,
/// all in units of gamma. Use the named constructors to get a matrix that
/// satisfies the topology of a layout.
struct CouplingParams {
    double omega = 1.0;
    double gamma = 1.0;
    CouplingMatrix coupling = CouplingMatrix::Zero();
    /// Line layouts normally force Omega_13 = 0; set this to permit a
    /// nonzero next-nearest coupling for sensitivity studies.
    bool allow_next_nearest = false;

    /// Omega_12 = Omega_23 = g, Omega_13 = omega13.
    static CouplingParams line(double omega, double g, double omega13 = 0.0, double gamma = 1.0);
    /// Omega_12 = Omega_23 = Omega_13 = g.
    static CouplingParams loop(double omega, double g, double gamma = 1.0);
    /// Couplings from the distance law at spacing kd.
    static CouplingParams from_geometry(const Geometry& geometry, double omega, double gamma = 1.0);
};

/// Throws InvalidInput if params violate the symmetry or topology invariants.
void validate(Layout layout, const CouplingParams& params);

/**
 * H = omega sum_i S^z_i + sum_{i<j} Omega_ij (S^+_i S^-_j + S^-_i S^+_j),
 * with S^z = +1/2 on the excited level, assembled as Kronecker products in
 * the MSB-first basis of PureState.
 */
Matrix build_hamiltonian(Layout layout, const CouplingParams& params);

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues; // ascending
    Matrix eigenvectors;         // column k pairs with eigenvalues[k]
};

/// Throws InvalidInput if H is not square or not Hermitian within 1e-12.
SpectralDecomposition diagonalize(const Matrix& hamiltonian);

/// ||H psi - lambda psi||_2
double verify_eigenstate(const Matrix& hamiltonian, const PureState& state, double lambda);

struct EigenvectorMatch {
    double eigenvalue = 0.0;
    std::optional<NamedState> match; // empty = unnamed
    double overlap = 0.0;            // best |<named|v>| over all named states
};

struct SubspaceMatch {
    NamedState tag;
    double projection = 0.0; // ||P psi||, P the projector on the subspace
};

struct EigenSubspace {
    double eigenvalue = 0.0; // mean over the cluster
    std::size_t first = 0;   // first column in the decomposition
    std::size_t dimension = 0;
    std::vector<SubspaceMatch> contains;
};

struct EigenClassification {
    std::vector<EigenvectorMatch> vectors; // one per eigenvector, same order
    std::vector<EigenSubspace> degenerate; // clusters of dimension > 1
};

inline constexpr double kMatchThreshold = 0.999;
inline constexpr double kDegeneracyTolerance = 1e-8;

/// Identifies the named entangled states among the eigenvectors of a
/// three-atom Hamiltonian. Eigenvectors inside a degenerate cluster are never
/// labelled individually; the cluster reports which named states it contains.
/// With a layout, only states derived for that layout are candidates
/// (LineWtilde21 and LoopGhzTilde21 share their amplitudes).
EigenClassification classify_eigenstates(const SpectralDecomposition& decomposition,
                                         std::optional<Layout> layout = std::nullopt);

} // namespace dipolar
