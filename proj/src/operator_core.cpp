#include "bellops/operator_core.hpp"

#include "bellops/rng.hpp"

namespace bellops {

ComplexOperator::ComplexOperator(Matrix m, bool hermitian, bool unitary)
    : mat_(std::move(m)), hermitian_(hermitian), unitary_(unitary) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw std::invalid_argument("ComplexOperator: matrix must be square and nonempty");
    }
    if (hermitian_ && hermiticity_defect() > 1e-12) {
        throw std::invalid_argument("ComplexOperator: hermitian flag set but matrix is not Hermitian");
    }
    if (unitary_ && unitarity_defect() > UNITARY_TOL) {
        throw std::invalid_argument("ComplexOperator: unitary flag set but matrix is not unitary");
    }
}

double ComplexOperator::hermiticity_defect() const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double ComplexOperator::unitarity_defect() const {
    Matrix d = mat_.adjoint() * mat_ - Matrix::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff();
}

ComplexOperator ComplexOperator::identity(int dim) {
    return ComplexOperator(Matrix::Identity(dim, dim), true, true);
}

ComplexOperator ComplexOperator::pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return ComplexOperator(m, true, true);
}

ComplexOperator ComplexOperator::pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return ComplexOperator(m, true, true);
}

ComplexOperator ComplexOperator::pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return ComplexOperator(m, true, true);
}

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b) {
    const int da = a.dim();
    const int db = b.dim();
    Matrix out(da * db, da * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
        }
    }
    bool herm = a.hermitian_flag() && b.hermitian_flag();
    return ComplexOperator(std::move(out), herm, false);
}

ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("commutator: dimension mismatch");
    }
    return ComplexOperator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

EigenSystem hermitian_eigensystem(const ComplexOperator& m) {
    if (m.hermiticity_defect() > HERM_TOL) {
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian within tolerance");
    }
    // Eigen's self-adjoint solver is deterministic for identical input and
    // returns eigenvalues ascending.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigensystem: eigensolver failed to converge");
    }
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double operator_norm(const ComplexOperator& m) {
    EigenSystem es = hermitian_eigensystem(m);
    return es.eigenvalues.cwiseAbs().maxCoeff();
}

ComplexOperator matrix_exponential_i(const ComplexOperator& h, double t) {
    EigenSystem es = hermitian_eigensystem(h);
    const int d = h.dim();
    Eigen::VectorXcd phases(d);
    for (int k = 0; k < d; ++k) {
        phases(k) = std::exp(Complex(0, -es.eigenvalues(k) * t));
    }
    Matrix u = es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
    return ComplexOperator(std::move(u), false, true);
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix phases so the decomposition is unique
    for (int k = 0; k < dim; ++k) {
        Complex d = r(k, k);
        double a = std::abs(d);
        q.col(k) *= (a > 0) ? d / a : Complex(1, 0);
    }
    return q;
}

ComplexOperator random_involution(int dim, std::uint64_t seed) {
    if (dim < 1) {
        throw std::invalid_argument("random_involution: dim must be >= 1");
    }
    std::mt19937_64 rng = make_engine(seed);
    std::uniform_int_distribution<int> pick(0, dim);
    const int n_plus = pick(rng);
    Matrix v = random_unitary(dim, rng);
    Eigen::VectorXd signs(dim);
    for (int k = 0; k < dim; ++k) {
        signs(k) = (k < n_plus) ? 1.0 : -1.0;
    }
    Matrix m = v * signs.asDiagonal() * v.adjoint();
    m = ((m + Matrix(m.adjoint())) * 0.5).eval();
    return ComplexOperator(std::move(m), true, true);
}

bool is_normalized(const StateVector& v, double tol) {
    return std::abs(v.squaredNorm() - 1.0) <= tol;
}

}  // namespace bellops
