#pragma once

#include <vector>

#include "bellops/operator_core.hpp"

namespace bellops {

struct EvolutionSystem {
    ComplexOperator hamiltonian;  // Hermitian, hbar = 1
    StateVector state;            // normalized
};

// U(t) |state> with U(t) = e^{-iHt}; norm preserved.
StateVector propagate(const EvolutionSystem& sys, double t);

// <psi|A|psi> for Hermitian A; throws if the imaginary residue exceeds 1e-10.
double expectation(const StateVector& state, const ComplexOperator& obs);

// Disjoint incoming/outgoing index sets over a basis, with projectors.
struct SubspacePair {
    int dim = 0;
    std::vector<int> minus_indices, plus_indices;

    ComplexOperator projector_minus() const;
    ComplexOperator projector_plus() const;
};

// Discrete-time analogue of the one-directional incoming->outgoing evolution:
// sites -n..n, a unit right shift per step (cyclic so the step is unitary),
// and a horizon before which no amplitude started in the incoming half can
// wrap around the boundary.
struct ShiftModel {
    int n = 0;
    int horizon = 0;
    ComplexOperator step;  // unitary one-step translation
    SubspacePair subspaces;

    int dim() const { return 2 * n + 1; }
    int index_of_site(int site) const { return site + n; }
    StateVector basis_state(int site) const;
};

ShiftModel build_shift_model(int n);

// Statistical mixture of Hamiltonian eigenstates with weights |c_k|^2.
struct SuperpositionSpec {
    EigenSystem eigensystem;       // of the Hamiltonian
    Eigen::VectorXcd coefficients;  // sum |c_k|^2 = 1
};

SuperpositionSpec make_superposition(const ComplexOperator& hamiltonian,
                                     const Eigen::VectorXcd& coefficients);

double mixture_expectation(const SuperpositionSpec& spec, const ComplexOperator& obs);

struct PureMixedComparison {
    double pure = 0.0;
    double mixed = 0.0;
    double difference = 0.0;
};

// pure: coherent superposition evolved to time t; mixed: time-independent
// probabilistic sum over eigenstates.
PureMixedComparison compare_pure_vs_mixed(const SuperpositionSpec& spec,
                                          const ComplexOperator& obs, double t);

}  // namespace bellops
