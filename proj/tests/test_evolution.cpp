#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bellops/evolution.hpp"
#include "bellops/rng.hpp"

using namespace bellops;

namespace {

ComplexOperator random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    m = ((m + Matrix(m.adjoint())) * 0.5).eval();
    return ComplexOperator(std::move(m));
}

StateVector random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

}  // namespace

TEST_CASE("propagate") {
    std::mt19937_64 rng = make_engine(1);
    ComplexOperator h = random_hermitian(4, rng);
    StateVector psi = random_state(4, rng);
    EvolutionSystem sys{h, psi};

    CHECK((propagate(sys, 0.0) - psi).norm() < 1e-12);

    // diagonal H: basis states pick up a phase only
    Matrix d = Eigen::Vector3d(0.5, 1.5, -2.0).cast<Complex>().asDiagonal();
    StateVector basis = StateVector::Zero(3);
    basis(1) = 1.0;
    EvolutionSystem diag_sys{ComplexOperator(d), basis};
    StateVector evolved = propagate(diag_sys, 2.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(std::abs(evolved(i)) - std::abs(basis(i))) < 1e-12);
    }
    CHECK(std::abs(evolved(1) - std::exp(Complex(0, -1.5 * 2.0))) < 1e-12);

    // group property and unitarity on random systems
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexOperator hh = random_hermitian(6, rng);
        StateVector p0 = random_state(6, rng);
        double t1 = uni(rng), t2 = uni(rng);
        EvolutionSystem s1{hh, p0};
        StateVector a = propagate(EvolutionSystem{hh, propagate(s1, t1)}, t2);
        StateVector b = propagate(s1, t1 + t2);
        CHECK((a - b).norm() < 1e-9);
        CHECK(std::abs(a.norm() - 1.0) < 1e-10);
    }

    StateVector unnorm = StateVector::Ones(4);
    CHECK_THROWS_AS(propagate(EvolutionSystem{h, unnorm}, 1.0), std::invalid_argument);
}

TEST_CASE("expectation") {
    std::mt19937_64 rng = make_engine(2);
    StateVector psi = random_state(5, rng);
    CHECK(expectation(psi, ComplexOperator::identity(5)) == doctest::Approx(1.0).epsilon(1e-12));

    // eigenstate of the observable
    ComplexOperator a = random_hermitian(5, rng);
    EigenSystem es = hermitian_eigensystem(a);
    StateVector v = es.eigenvectors.col(3);
    CHECK(expectation(v, a) == doctest::Approx(es.eigenvalues(3)).epsilon(1e-10));

    // energy conservation under evolution
    ComplexOperator h = random_hermitian(5, rng);
    EvolutionSystem sys{h, psi};
    double e0 = expectation(psi, h);
    for (double t : {0.5, 1.7, 4.0}) {
        CHECK(std::abs(expectation(propagate(sys, t), h) - e0) < 1e-9);
    }

    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    StateVector two = random_state(2, rng);
    CHECK_THROWS_AS(expectation(two, ComplexOperator(bad)), std::invalid_argument);
    CHECK_THROWS_AS(expectation(psi, ComplexOperator::identity(3)), std::invalid_argument);
}

TEST_CASE("shift model translation") {
    ShiftModel m = build_shift_model(5);
    CHECK(m.dim() == 11);
    CHECK(m.step.unitarity_defect() < 1e-14);
    CHECK(m.subspaces.projector_minus().matrix().cwiseProduct(
              m.subspaces.projector_plus().matrix()).cwiseAbs().maxCoeff() == 0.0);

    StateVector psi = m.basis_state(-3);
    for (int step = 0; step < 3; ++step) psi = m.step.matrix() * psi;
    CHECK(std::abs(psi(m.index_of_site(0)) - 1.0) < 1e-14);
    psi = m.step.matrix() * psi;
    CHECK(std::abs(psi(m.index_of_site(1)) - 1.0) < 1e-14);
    // now in the outgoing subspace
    CHECK(expectation(psi, m.subspaces.projector_plus()) == doctest::Approx(1.0));

    CHECK_THROWS_AS(build_shift_model(1), std::invalid_argument);
}

TEST_CASE("outgoing occupancy is monotone up to the horizon, and only forward") {
    ShiftModel m = build_shift_model(6);
    std::mt19937_64 rng = make_engine(4);

    // random states supported on the incoming half
    ComplexOperator pplus = m.subspaces.projector_plus();
    for (int trial = 0; trial < 10; ++trial) {
        StateVector psi = StateVector::Zero(m.dim());
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i : m.subspaces.minus_indices) psi(i) = Complex(gauss(rng), gauss(rng));
        psi.normalize();
        double prev = expectation(psi, pplus);
        for (int step = 0; step < m.horizon; ++step) {
            psi = m.step.matrix() * psi;
            double cur = expectation(psi, pplus);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }

    // the reverse dynamics violates monotonicity for some incoming state
    StateVector psi = m.basis_state(-1);
    StateVector fwd = m.step.matrix() * psi;        // enters site 0
    StateVector fwd2 = m.step.matrix() * fwd;       // enters the outgoing half
    double occ2 = expectation(fwd2, pplus);
    StateVector back = m.step.matrix().adjoint() * fwd2;
    CHECK(expectation(back, pplus) < occ2 - 0.5);
}

TEST_CASE("orbit of the incoming subspace spans the lattice") {
    ShiftModel m = build_shift_model(4);
    std::vector<bool> covered(m.dim(), false);
    for (int i : m.subspaces.minus_indices) {
        StateVector psi = StateVector::Zero(m.dim());
        psi(i) = 1.0;
        for (int step = 0; step <= 2 * m.n; ++step) {
            for (int k = 0; k < m.dim(); ++k) {
                if (std::abs(psi(k)) > 0.5) covered[k] = true;
            }
            psi = m.step.matrix() * psi;
        }
    }
    for (bool c : covered) CHECK(c);

    // inverse-shift orbit of the outgoing subspace likewise
    std::vector<bool> covered_back(m.dim(), false);
    for (int i : m.subspaces.plus_indices) {
        StateVector psi = StateVector::Zero(m.dim());
        psi(i) = 1.0;
        for (int step = 0; step <= 2 * m.n; ++step) {
            for (int k = 0; k < m.dim(); ++k) {
                if (std::abs(psi(k)) > 0.5) covered_back[k] = true;
            }
            psi = m.step.matrix().adjoint() * psi;
        }
    }
    for (bool c : covered_back) CHECK(c);
}

TEST_CASE("mixture expectation") {
    std::mt19937_64 rng = make_engine(6);
    ComplexOperator h = random_hermitian(4, rng);
    Eigen::VectorXcd c(4);
    c << 0.5, 0.5, 0.5, 0.5;
    SuperpositionSpec spec = make_superposition(h, c);

    ComplexOperator obs = random_hermitian(4, rng);
    double mixed = mixture_expectation(spec, obs);

    // invariant under per-coefficient phase rotation
    Eigen::VectorXcd cp(4);
    for (int k = 0; k < 4; ++k) cp(k) = c(k) * std::exp(Complex(0, 0.3 * (k + 1)));
    CHECK(mixture_expectation(make_superposition(h, cp), obs) == mixed);

    // single nonzero coefficient -> eigenstate expectation
    Eigen::VectorXcd single = Eigen::VectorXcd::Zero(4);
    single(2) = 1.0;
    SuperpositionSpec sp = make_superposition(h, single);
    StateVector v2 = sp.eigensystem.eigenvectors.col(2);
    CHECK(mixture_expectation(sp, obs) == doctest::Approx(expectation(v2, obs)).epsilon(1e-12));

    Eigen::VectorXcd wrong(3);
    wrong << 1, 0, 0;
    CHECK_THROWS_AS(make_superposition(h, wrong), std::invalid_argument);
}

TEST_CASE("pure vs mixed comparator") {
    // obs diagonal in the H eigenbasis: no difference at any time
    std::mt19937_64 rng = make_engine(8);
    ComplexOperator h = random_hermitian(3, rng);
    EigenSystem es = hermitian_eigensystem(h);
    Matrix diag_obs = es.eigenvectors *
                      Eigen::Vector3d(0.3, -1.0, 2.0).cast<Complex>().asDiagonal() *
                      es.eigenvectors.adjoint();
    diag_obs = ((diag_obs + Matrix(diag_obs.adjoint())) * 0.5).eval();
    Eigen::VectorXcd c(3);
    c << std::sqrt(0.5), 0.5, 0.5;
    SuperpositionSpec spec = make_superposition(h, c);
    for (double t : {0.0, 0.9, 3.3}) {
        CHECK(std::abs(compare_pure_vs_mixed(spec, ComplexOperator(diag_obs), t).difference) <
              1e-12);
    }

    // sigma_x witness: pure = 1, mixed = 0 at t = 0
    Eigen::VectorXcd c2(2);
    c2 << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    SuperpositionSpec w = make_superposition(ComplexOperator::pauli_z(), c2);
    PureMixedComparison cmp = compare_pure_vs_mixed(w, ComplexOperator::pauli_x(), 0.0);
    CHECK(cmp.pure == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cmp.mixed == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cmp.difference == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("time-averaged pure expectation matches the mixture") {
    // nondegenerate two-level system: average over one period by quadrature
    std::mt19937_64 rng = make_engine(9);
    ComplexOperator h = random_hermitian(2, rng);
    ComplexOperator obs = random_hermitian(2, rng);
    Eigen::VectorXcd c(2);
    c << std::sqrt(0.3), Complex(0, 1) * std::sqrt(0.7);
    SuperpositionSpec spec = make_superposition(h, c);
    double gap = spec.eigensystem.eigenvalues(1) - spec.eigensystem.eigenvalues(0);
    REQUIRE(std::abs(gap) > 1e-6);
    double period = 2 * M_PI / gap;

    const int steps = 4096;
    double avg = 0.0;
    for (int i = 0; i < steps; ++i) {
        double t = period * (i + 0.5) / steps;  // midpoint rule
        avg += compare_pure_vs_mixed(spec, obs, t).pure;
    }
    avg /= steps;
    CHECK(std::abs(avg - mixture_expectation(spec, obs)) < 1e-6);
}
