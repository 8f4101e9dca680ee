#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace bellops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Single source of truth for the numeric tolerances used across modules.
inline constexpr double HERM_TOL = 1e-10;
inline constexpr double EIG_TOL = 1e-9;
inline constexpr double UNITARY_TOL = 1e-10;

// Dense square complex matrix with advisory structure flags. The flags are
// revalidated on demand, never trusted blindly.
class ComplexOperator {
  public:
    ComplexOperator() = default;
    explicit ComplexOperator(Matrix m, bool hermitian = false, bool unitary = false);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }
    bool hermitian_flag() const { return hermitian_; }
    bool unitary_flag() const { return unitary_; }

    // max |M - M^dag| elementwise
    double hermiticity_defect() const;
    // max |M^dag M - I| elementwise
    double unitarity_defect() const;

    bool is_hermitian(double tol = HERM_TOL) const { return hermiticity_defect() <= tol; }
    bool is_unitary(double tol = UNITARY_TOL) const { return unitarity_defect() <= tol; }

    static ComplexOperator identity(int dim);
    static ComplexOperator pauli_x();
    static ComplexOperator pauli_y();
    static ComplexOperator pauli_z();

  private:
    Matrix mat_;
    bool hermitian_ = false;
    bool unitary_ = false;
};

struct EigenSystem {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // columns, orthonormal
};

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b);
EigenSystem hermitian_eigensystem(const ComplexOperator& m);
double operator_norm(const ComplexOperator& m);

// e^{-i h t} via eigendecomposition of Hermitian h; t is a dimensionless phase.
ComplexOperator matrix_exponential_i(const ComplexOperator& h, double t);

// Hermitian M with M^2 = I, deterministic for a fixed seed. The number of +1
// eigenvalues is drawn uniformly from {0,...,dim} and the eigenbasis is a
// Haar-distributed unitary (QR of a complex Gaussian with phase-fixed R).
ComplexOperator random_involution(int dim, std::uint64_t seed);

// Haar-ish random unitary, deterministic given the engine state.
Matrix random_unitary(int dim, std::mt19937_64& rng);

bool is_normalized(const StateVector& v, double tol = HERM_TOL);

}  // namespace bellops
