#pragma once

#include <vector>

#include "bellops/operator_core.hpp"
#include "json.hpp"

namespace bellops {

struct TruncatedLadderSpace {
    int n_max = 0;  // basis |0> .. |n_max|
    int dim() const { return n_max + 1; }
};

// Two opposite-angular-momentum sectors |n,-> and |n,+>, laid out as a single
// chain ... |1,->, |0,->, |0,+>, |1,+> ... so the phase shift can run through
// the vacuum link.
struct DoubledSpace {
    int n_max = 0;
    int dim() const { return 2 * (n_max + 1); }
    int index_minus(int n) const { return n_max - n; }
    int index_plus(int n) const { return n_max + 1 + n; }
};

// One-sided number-basis shift sum_n |n><n+1|; the finite-dimensional stand-in
// for e^{-i Phi}. Not unitary: E^dag E = I - |0><0|.
ComplexOperator sg_operator(const TruncatedLadderSpace& space);

struct UnitarityDefectReport {
    double left_defect = 0.0;   // max |op^dag op - I|
    double right_defect = 0.0;  // max |op op^dag - I|
    std::vector<int> defect_support;  // diagonal of op^dag op off 1 by > 1e-10
};

UnitarityDefectReport unitarity_defect(const ComplexOperator& op);

// Shift along the doubled chain; links the vacua via <0,-|E|0,+> = 1 and
// reproduces sg_operator when compressed to the + sector. Only the two chain
// endpoints carry a (truncation) defect.
ComplexOperator doubled_phase_operator(const DoubledSpace& space);

nlohmann::json phase_report(int n_max);

}  // namespace bellops
