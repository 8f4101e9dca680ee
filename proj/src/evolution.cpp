#include "bellops/evolution.hpp"

#include <cmath>

namespace bellops {

StateVector propagate(const EvolutionSystem& sys, double t) {
    if (!is_normalized(sys.state)) {
        throw std::invalid_argument("propagate: state is not normalized");
    }
    ComplexOperator u = matrix_exponential_i(sys.hamiltonian, t);
    return u.matrix() * sys.state;
}

double expectation(const StateVector& state, const ComplexOperator& obs) {
    if (obs.dim() != state.size()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    if (obs.hermiticity_defect() > HERM_TOL) {
        throw std::invalid_argument("expectation: observable is not Hermitian");
    }
    Complex v = state.adjoint() * obs.matrix() * state;
    if (std::abs(v.imag()) > 1e-10) {
        throw std::runtime_error("expectation: imaginary residue exceeds tolerance");
    }
    return v.real();
}

namespace {

ComplexOperator projector_from_indices(int dim, const std::vector<int>& indices) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int i : indices) {
        if (i < 0 || i >= dim) {
            throw std::invalid_argument("SubspacePair: index out of range");
        }
        p(i, i) = 1.0;
    }
    return ComplexOperator(std::move(p), true, false);
}

}  // namespace

ComplexOperator SubspacePair::projector_minus() const {
    return projector_from_indices(dim, minus_indices);
}

ComplexOperator SubspacePair::projector_plus() const {
    return projector_from_indices(dim, plus_indices);
}

StateVector ShiftModel::basis_state(int site) const {
    StateVector v = StateVector::Zero(dim());
    v(index_of_site(site)) = 1.0;
    return v;
}

ShiftModel build_shift_model(int n) {
    if (n < 2) {
        throw std::invalid_argument("build_shift_model: n must be >= 2");
    }
    ShiftModel model;
    model.n = n;
    model.horizon = n + 1;  // a front starting at site <= -1 wraps after n+2 steps
    const int d = 2 * n + 1;
    Matrix u = Matrix::Zero(d, d);
    for (int site = -n; site <= n; ++site) {
        int from = site + n;
        int to = (site == n) ? 0 : from + 1;
        u(to, from) = 1.0;
    }
    model.step = ComplexOperator(std::move(u), false, true);
    model.subspaces.dim = d;
    for (int site = -n; site < 0; ++site) model.subspaces.minus_indices.push_back(site + n);
    for (int site = 1; site <= n; ++site) model.subspaces.plus_indices.push_back(site + n);
    return model;
}

SuperpositionSpec make_superposition(const ComplexOperator& hamiltonian,
                                     const Eigen::VectorXcd& coefficients) {
    EigenSystem es = hermitian_eigensystem(hamiltonian);
    if (coefficients.size() != es.eigenvalues.size()) {
        throw std::invalid_argument("make_superposition: coefficient count mismatch");
    }
    if (std::abs(coefficients.squaredNorm() - 1.0) > HERM_TOL) {
        throw std::invalid_argument("make_superposition: coefficients not normalized");
    }
    return SuperpositionSpec{std::move(es), coefficients};
}

double mixture_expectation(const SuperpositionSpec& spec, const ComplexOperator& obs) {
    const int d = static_cast<int>(spec.eigensystem.eigenvalues.size());
    if (obs.dim() != d) {
        throw std::invalid_argument("mixture_expectation: dimension mismatch");
    }
    double out = 0.0;
    for (int k = 0; k < d; ++k) {
        StateVector v = spec.eigensystem.eigenvectors.col(k);
        out += std::norm(spec.coefficients(k)) * expectation(v, obs);
    }
    return out;
}

PureMixedComparison compare_pure_vs_mixed(const SuperpositionSpec& spec,
                                          const ComplexOperator& obs, double t) {
    const int d = static_cast<int>(spec.eigensystem.eigenvalues.size());
    StateVector psi = StateVector::Zero(d);
    for (int k = 0; k < d; ++k) {
        Complex phase = std::exp(Complex(0, -spec.eigensystem.eigenvalues(k) * t));
        psi += spec.coefficients(k) * phase * spec.eigensystem.eigenvectors.col(k);
    }
    PureMixedComparison cmp;
    cmp.pure = expectation(psi, obs);
    cmp.mixed = mixture_expectation(spec, obs);
    cmp.difference = cmp.pure - cmp.mixed;
    return cmp;
}

}  // namespace bellops
