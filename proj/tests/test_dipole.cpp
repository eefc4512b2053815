#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dipolar/dipole.hpp"
#include "dipolar/errors.hpp"
#include "oracle.hpp"

using namespace dipolar;
using std::numbers::pi;

namespace {

std::vector<double> two_excitation_eigenvalues(const Matrix& h)
{
    // Sector basis: |011>, |101>, |110>
    const int idx[3] = {0b011, 0b101, 0b110};
    Eigen::Matrix3cd block;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            block(a, b) = h(idx[a], idx[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(block);
    return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
}

} // namespace

TEST_CASE("coupling law")
{
    CHECK(std::abs(coupling_strength(2 * pi / 3) - 0.29) <= 0.01);
    CHECK(std::abs(coupling_strength(2 * pi / 10) - 2.60) <= 0.05);
    CHECK(coupling_strength(pi / 2) == doctest::Approx(0.75 / (pi / 2 * pi / 2)).epsilon(1e-12));
    CHECK(coupling_strength(pi / 2) == doctest::Approx(0.3040).epsilon(1e-3));
    CHECK(coupling_strength(pi / 2, 2.0) == doctest::Approx(2 * coupling_strength(pi / 2)));
    CHECK_THROWS_AS(coupling_strength(0.0), InvalidInput);
    CHECK_THROWS_AS(coupling_strength(-1.0), InvalidInput);
}

TEST_CASE("Hamiltonian matrix elements")
{
    const auto loop = build_hamiltonian(Layout::Loop, CouplingParams::loop(0.0, 1.3));
    CHECK(loop(0b110, 0b101) == Complex(1.3));

    const auto line = build_hamiltonian(Layout::Line, CouplingParams::line(0.0, 1.3));
    CHECK(line(0b110, 0b011) == Complex(0.0));

    const auto diag = build_hamiltonian(Layout::Line, CouplingParams::line(1.0, 0.7));
    for (int i : {0b011, 0b101, 0b110})
        CHECK(diag(i, i).real() == doctest::Approx(0.5));
}

TEST_CASE("Hamiltonian equals the Kronecker-oracle assembly")
{
    const double omega = 1.7, g = 0.9, g13 = 0.2;
    const auto h = build_hamiltonian(Layout::Line, CouplingParams::line(omega, g, g13));
    oracle::Mat ref = oracle::Mat::Zero(8, 8);
    for (std::size_t i = 1; i <= 3; ++i)
        ref += omega * 0.5 * (oracle::raising(i, 3) * oracle::lowering(i, 3) * 2.0 - oracle::Mat::Identity(8, 8));
    const double c[3][3] = {{0, g, g13}, {g, 0, g}, {g13, g, 0}};
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = i + 1; j <= 3; ++j) {
            const oracle::Mat hop = oracle::raising(i, 3) * oracle::lowering(j, 3);
            ref += c[i - 1][j - 1] * (hop + hop.adjoint());
        }
    CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Hamiltonian properties: Hermitian and excitation conserving")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> om(0.0, 10.0), gg(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Layout layout = trial % 2 ? Layout::Loop : Layout::Line;
        const auto params = layout == Layout::Line ? CouplingParams::line(om(rng), gg(rng))
                                                   : CouplingParams::loop(om(rng), gg(rng));
        const auto h = build_hamiltonian(layout, params);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b)
                if (std::popcount(unsigned(a)) != std::popcount(unsigned(b)))
                    CHECK(h(a, b) == Complex(0.0));
        const auto d = diagonalize(h);
        CHECK(std::abs(h.trace().real() - d.eigenvalues.sum()) < 1e-10);
    }
}

TEST_CASE("topology validation")
{
    auto bad_line = CouplingParams::line(1.0, 1.0);
    bad_line.coupling(0, 2) = bad_line.coupling(2, 0) = 0.1;
    bad_line.allow_next_nearest = false;
    CHECK_THROWS_AS(build_hamiltonian(Layout::Line, bad_line), InvalidInput);
    CHECK_NOTHROW(build_hamiltonian(Layout::Line, CouplingParams::line(1.0, 1.0, 0.1)));

    auto asym = CouplingParams::line(1.0, 1.0);
    asym.coupling(0, 1) = 2.0;
    CHECK_THROWS_AS(build_hamiltonian(Layout::Line, asym), InvalidInput);

    CHECK_THROWS_AS(build_hamiltonian(Layout::Loop, CouplingParams::line(1.0, 1.0)), InvalidInput);

    auto diag = CouplingParams::loop(1.0, 1.0);
    diag.coupling(1, 1) = 0.5;
    CHECK_THROWS_AS(build_hamiltonian(Layout::Loop, diag), InvalidInput);

    CHECK_THROWS_AS(build_hamiltonian(Layout::Loop, CouplingParams::loop(-1.0, 1.0)), InvalidInput);
}

TEST_CASE("diagonalize examples")
{
    const double r2 = std::sqrt(2.0);
    auto line = two_excitation_eigenvalues(build_hamiltonian(Layout::Line, CouplingParams::line(0.0, 1.0)));
    CHECK(line[0] == doctest::Approx(-r2));
    CHECK(std::abs(line[1]) < 1e-12);
    CHECK(line[2] == doctest::Approx(r2));

    auto loop = two_excitation_eigenvalues(build_hamiltonian(Layout::Loop, CouplingParams::loop(0.0, 1.0)));
    CHECK(loop[0] == doctest::Approx(-1.0));
    CHECK(loop[1] == doctest::Approx(-1.0));
    CHECK(loop[2] == doctest::Approx(2.0));

    const double w = 1.3;
    const auto free = diagonalize(build_hamiltonian(Layout::Line, CouplingParams::line(w, 0.0)));
    const double expected[8] = {-1.5 * w, -0.5 * w, -0.5 * w, -0.5 * w, 0.5 * w, 0.5 * w, 0.5 * w, 1.5 * w};
    for (int k = 0; k < 8; ++k)
        CHECK(free.eigenvalues(k) == doctest::Approx(expected[k]));
}

TEST_CASE("diagonalize invariants")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> om(0.0, 10.0), gg(0.01, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Layout layout = trial % 2 ? Layout::Loop : Layout::Line;
        const auto h = build_hamiltonian(layout, layout == Layout::Line ? CouplingParams::line(om(rng), gg(rng))
                                                                        : CouplingParams::loop(om(rng), gg(rng)));
        const auto d = diagonalize(h);
        for (int k = 1; k < 8; ++k)
            CHECK(d.eigenvalues(k - 1) <= d.eigenvalues(k));
        const Matrix gram = d.eigenvectors.adjoint() * d.eigenvectors;
        CHECK((gram - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
        for (int k = 0; k < 8; ++k)
            CHECK((h * d.eigenvectors.col(k) - d.eigenvalues(k) * d.eigenvectors.col(k)).norm() < 1e-10);
    }
}

TEST_CASE("diagonalize rejects non-Hermitian input")
{
    Matrix h = Matrix::Zero(8, 8);
    h(0, 1) = 1.0;
    CHECK_THROWS_AS(diagonalize(h), InvalidInput);
    CHECK_THROWS_AS(diagonalize(Matrix::Zero(3, 4)), InvalidInput);
}

TEST_CASE("published eigen-relations hold for random omega and g")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> om(0.0, 10.0), gg(0.01, 5.0);
    const double r2 = std::sqrt(2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double w = om(rng), g = gg(rng);
        const auto line = build_hamiltonian(Layout::Line, CouplingParams::line(w, g));
        const auto loop = build_hamiltonian(Layout::Loop, CouplingParams::loop(w, g));
        CHECK(verify_eigenstate(line, named_state(NamedState::LineW21), r2 * g + w / 2) < 1e-12);
        CHECK(verify_eigenstate(line, named_state(NamedState::LineWbar21), w / 2 - r2 * g) < 1e-12);
        CHECK(verify_eigenstate(line, named_state(NamedState::LineWtilde21), w / 2) < 1e-12);
        CHECK(verify_eigenstate(loop, named_state(NamedState::LoopW21), 2 * g + w / 2) < 1e-12);
        CHECK(verify_eigenstate(loop, named_state(NamedState::LoopGhzBar21), w / 2 - g) < 1e-12);
        CHECK(verify_eigenstate(loop, named_state(NamedState::LoopGhzTilde21), w / 2 - g) < 1e-12);
    }
}

TEST_CASE("verify_eigenstate examples")
{
    const auto line = build_hamiltonian(Layout::Line, CouplingParams::line(1.0, 0.29));
    CHECK(verify_eigenstate(line, named_state(NamedState::LineW21), std::sqrt(2.0) * 0.29 + 0.5) < 1e-12);
    const auto loop = build_hamiltonian(Layout::Loop, CouplingParams::loop(1.0, 2.6));
    CHECK(verify_eigenstate(loop, named_state(NamedState::LoopW21), 2 * 2.6 + 0.5) < 1e-12);
    // A wrong eigenvalue leaves a residual of exactly the offset.
    CHECK(verify_eigenstate(loop, named_state(NamedState::LoopW21), 2 * 2.6) == doctest::Approx(0.5));
    CHECK_THROWS_AS(verify_eigenstate(Matrix::Zero(4, 4), named_state(NamedState::LoopW21), 0.0), InvalidInput);
}

TEST_CASE("classification: non-degenerate line spectrum labels LineW21")
{
    // omega = 1 lifts the cross-sector degeneracy present at omega = 0.
    const auto d = diagonalize(build_hamiltonian(Layout::Line, CouplingParams::line(1.0, 1.0)));
    const auto c = classify_eigenstates(d);
    REQUIRE(c.vectors.size() == 8);
    int found = 0;
    for (const auto& v : c.vectors) {
        if (v.match == NamedState::LineW21) {
            ++found;
            CHECK(v.eigenvalue == doctest::Approx(std::sqrt(2.0) + 0.5));
            CHECK(v.overlap == doctest::Approx(1.0));
        }
        if (v.match == NamedState::LineWbar21)
            CHECK(v.eigenvalue == doctest::Approx(0.5 - std::sqrt(2.0)));
    }
    CHECK(found == 1);
}

TEST_CASE("classification: omega = 0 line, sqrt(2) subspace contains LineW21")
{
    const auto d = diagonalize(build_hamiltonian(Layout::Line, CouplingParams::line(0.0, 1.0)));
    const auto c = classify_eigenstates(d);
    bool seen = false;
    for (const auto& sub : c.degenerate) {
        if (std::abs(sub.eigenvalue - std::sqrt(2.0)) > 1e-9)
            continue;
        for (const auto& m : sub.contains)
            if (m.tag == NamedState::LineW21) {
                seen = true;
                CHECK(m.projection == doctest::Approx(1.0));
            }
    }
    CHECK(seen);
}

TEST_CASE("classification: loop -g subspace holds both GHZ states")
{
    const auto d = diagonalize(build_hamiltonian(Layout::Loop, CouplingParams::loop(0.0, 1.0)));
    const auto c = classify_eigenstates(d);
    const EigenSubspace* minus = nullptr;
    for (const auto& sub : c.degenerate)
        if (std::abs(sub.eigenvalue + 1.0) < 1e-9)
            minus = &sub;
    REQUIRE(minus != nullptr);
    // The one-excitation sector contributes another -g pair at omega = 0.
    CHECK(minus->dimension == 4);
    bool bar = false, tilde = false;
    for (const auto& m : minus->contains) {
        bar |= m.tag == NamedState::LoopGhzBar21 && std::abs(m.projection - 1.0) < 1e-10;
        tilde |= m.tag == NamedState::LoopGhzTilde21 && std::abs(m.projection - 1.0) < 1e-10;
    }
    CHECK(bar);
    CHECK(tilde);
    for (std::size_t k = minus->first; k < minus->first + minus->dimension; ++k)
        CHECK_FALSE(c.vectors[k].match.has_value());

    // With omega = 1 the two-excitation -g pair stands alone.
    const auto d1 = diagonalize(build_hamiltonian(Layout::Loop, CouplingParams::loop(1.0, 1.0)));
    const auto c1 = classify_eigenstates(d1, Layout::Loop);
    bool pair = false;
    for (const auto& sub : c1.degenerate)
        if (std::abs(sub.eigenvalue - (0.5 - 1.0)) < 1e-9) {
            pair = true;
            CHECK(sub.dimension == 2);
            CHECK(sub.contains.size() == 2);
        }
    CHECK(pair);

    // Without a layout the line tilde state, identical to LoopGhzTilde21, shows up too.
    for (const auto& sub : classify_eigenstates(d1).degenerate)
        if (std::abs(sub.eigenvalue - (0.5 - 1.0)) < 1e-9)
            CHECK(sub.contains.size() == 3);
}

TEST_CASE("classification: no coupling means no entangled match")
{
    const auto c = classify_eigenstates(diagonalize(build_hamiltonian(Layout::Line, CouplingParams::line(1.0, 0.0))));
    for (const auto& v : c.vectors)
        CHECK_FALSE(v.match.has_value());
}
