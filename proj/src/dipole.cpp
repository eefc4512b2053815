#include "dipolar/dipole.hpp"

#include <cmath>
#include <string>

#include "dipolar/errors.hpp"

namespace dipolar {
namespace {

constexpr double kHermitianTolerance = 1e-12;

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Single-atom operator placed on `atom` (1-based) of an n-atom register.
// Atom 1 is the leftmost Kronecker factor, matching the MSB-first index.
Matrix embed(const Matrix& op, std::size_t atom, std::size_t num_atoms)
{
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t m = 1; m <= num_atoms; ++m)
        out = kron(out, m == atom ? op : Matrix::Identity(2, 2));
    return out;
}

// Single-atom basis is (|0>, |1>).
Matrix sigma_minus()
{
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

Matrix sigma_z_half()
{
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = -0.5;
    s(1, 1) = 0.5;
    return s;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

} // namespace

double coupling_strength(double kd, double gamma)
{
    if (!std::isfinite(kd) || kd <= 0.0)
        throw InvalidInput("coupling law needs kd > 0, got " + std::to_string(kd));
    if (!(gamma > 0.0))
        throw InvalidInput("gamma must be positive");
    const double c = std::cos(kd);
    const double s = std::sin(kd);
    return 0.75 * gamma * (-c / kd + s / (kd * kd) + c / (kd * kd * kd));
}

CouplingParams CouplingParams::line(double omega, double g, double omega13, double gamma)
{
    CouplingParams p;
    p.omega = omega;
    p.gamma = gamma;
    p.coupling << 0.0, g, omega13, g, 0.0, g, omega13, g, 0.0;
    p.allow_next_nearest = omega13 != 0.0;
    return p;
}

CouplingParams CouplingParams::loop(double omega, double g, double gamma)
{
    CouplingParams p;
    p.omega = omega;
    p.gamma = gamma;
    p.coupling << 0.0, g, g, g, 0.0, g, g, g, 0.0;
    return p;
}

CouplingParams CouplingParams::from_geometry(const Geometry& geometry, double omega, double gamma)
{
    const double g = coupling_strength(geometry.kd(), gamma);
    return geometry.layout() == Layout::Line ? line(omega, g, 0.0, gamma) : loop(omega, g, gamma);
}

void validate(Layout layout, const CouplingParams& params)
{
    if (!std::isfinite(params.omega) || params.omega < 0.0)
        throw InvalidInput("omega must be >= 0");
    if (!(params.gamma > 0.0))
        throw InvalidInput("gamma must be positive");
    const auto& c = params.coupling;
    if (!c.allFinite())
        throw InvalidInput("coupling matrix has non-finite entries");
    for (int i = 0; i < 3; ++i) {
        if (c(i, i) != 0.0)
            throw InvalidInput("coupling matrix must have a zero diagonal");
        for (int j = 0; j < i; ++j)
            if (c(i, j) != c(j, i))
                throw InvalidInput("coupling matrix must be symmetric");
    }
    const double g12 = c(0, 1);
    const double g23 = c(1, 2);
    const double g13 = c(0, 2);
    if (layout == Layout::Line) {
        if (!near(g12, g23))
            throw InvalidInput("line topology requires Omega_12 == Omega_23");
        if (g13 != 0.0 && !params.allow_next_nearest)
            throw InvalidInput("line topology requires Omega_13 == 0 (use the next-nearest override)");
    } else if (!near(g12, g23) || !near(g12, g13)) {
        throw InvalidInput("loop topology requires Omega_12 == Omega_23 == Omega_13");
    }
}

Matrix build_hamiltonian(Layout layout, const CouplingParams& params)
{
    validate(layout, params);
    constexpr std::size_t n = kAtomCount;
    const Matrix lower = sigma_minus();
    const Matrix sz = sigma_z_half();

    std::vector<Matrix> s_minus;
    Matrix h = Matrix::Zero(1 << n, 1 << n);
    for (std::size_t i = 1; i <= n; ++i) {
        s_minus.push_back(embed(lower, i, n));
        h += params.omega * embed(sz, i, n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double g = params.coupling(static_cast<int>(i), static_cast<int>(j));
            if (g == 0.0)
                continue;
            const Matrix hop = s_minus[i].adjoint() * s_minus[j];
            h += g * (hop + hop.adjoint());
        }
    }
    return h;
}

SpectralDecomposition diagonalize(const Matrix& hamiltonian)
{
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0)
        throw InvalidInput("Hamiltonian must be a non-empty square matrix");
    const double asym = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance)
        throw InvalidInput("Hamiltonian is not Hermitian (max deviation " + std::to_string(asym) + ")");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
        throw ConsistencyError("Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double verify_eigenstate(const Matrix& hamiltonian, const PureState& state, double lambda)
{
    if (static_cast<std::size_t>(hamiltonian.rows()) != state.dimension() ||
        hamiltonian.rows() != hamiltonian.cols())
        throw InvalidInput("Hamiltonian and state dimensions differ");
    Eigen::VectorXcd psi(state.dimension());
    for (std::size_t i = 0; i < state.dimension(); ++i)
        psi(static_cast<Eigen::Index>(i)) = state[i];
    return (hamiltonian * psi - lambda * psi).norm();
}

EigenClassification classify_eigenstates(const SpectralDecomposition& decomposition, std::optional<Layout> layout)
{
    const auto& values = decomposition.eigenvalues;
    const auto& vectors = decomposition.eigenvectors;
    const Eigen::Index dim = values.size();
    const bool three_atoms = dim == 8;

    std::vector<NamedState> tags;
    std::vector<Eigen::VectorXcd> named;
    if (three_atoms) {
        for (auto tag : kAllNamedStates) {
            if (layout && natural_layout(tag) != *layout)
                continue;
            tags.push_back(tag);
            const PureState s = named_state(tag);
            Eigen::VectorXcd v(8);
            for (Eigen::Index i = 0; i < 8; ++i)
                v(i) = s[static_cast<std::size_t>(i)];
            named.push_back(std::move(v));
        }
    }

    EigenClassification result;
    result.vectors.resize(static_cast<std::size_t>(dim));

    Eigen::Index start = 0;
    while (start < dim) {
        Eigen::Index end = start + 1;
        while (end < dim && values(end) - values(end - 1) < kDegeneracyTolerance)
            ++end;
        const Eigen::Index width = end - start;
        const Matrix basis = vectors.middleCols(start, width);

        for (Eigen::Index k = start; k < end; ++k) {
            auto& entry = result.vectors[static_cast<std::size_t>(k)];
            entry.eigenvalue = values(k);
            std::optional<NamedState> best_tag;
            for (std::size_t t = 0; t < named.size(); ++t) {
                const double overlap = std::abs(named[t].dot(vectors.col(k)));
                if (overlap > entry.overlap) {
                    entry.overlap = overlap;
                    best_tag = tags[t];
                }
            }
            if (width == 1 && entry.overlap > kMatchThreshold)
                entry.match = best_tag;
        }

        if (width > 1) {
            EigenSubspace sub;
            sub.eigenvalue = values.segment(start, width).mean();
            sub.first = static_cast<std::size_t>(start);
            sub.dimension = static_cast<std::size_t>(width);
            for (std::size_t t = 0; t < named.size(); ++t) {
                const double projection = (basis.adjoint() * named[t]).norm();
                if (projection > kMatchThreshold)
                    sub.contains.push_back({tags[t], projection});
            }
            result.degenerate.push_back(std::move(sub));
        }
        start = end;
    }
    return result;
}

} // namespace dipolar
