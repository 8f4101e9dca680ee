#include "bellops/phase_space.hpp"

namespace bellops {

ComplexOperator sg_operator(const TruncatedLadderSpace& space) {
    if (space.n_max < 1) {
        throw std::invalid_argument("sg_operator: n_max must be >= 1");
    }
    const int d = space.dim();
    Matrix e = Matrix::Zero(d, d);
    for (int n = 0; n + 1 < d; ++n) {
        e(n, n + 1) = 1.0;
    }
    return ComplexOperator(std::move(e));
}

UnitarityDefectReport unitarity_defect(const ComplexOperator& op) {
    const int d = op.dim();
    Matrix left = op.matrix().adjoint() * op.matrix() - Matrix::Identity(d, d);
    Matrix right = op.matrix() * op.matrix().adjoint() - Matrix::Identity(d, d);
    UnitarityDefectReport rep;
    rep.left_defect = left.cwiseAbs().maxCoeff();
    rep.right_defect = right.cwiseAbs().maxCoeff();
    for (int i = 0; i < d; ++i) {
        if (std::abs(left(i, i)) > 1e-10) rep.defect_support.push_back(i);
    }
    return rep;
}

ComplexOperator doubled_phase_operator(const DoubledSpace& space) {
    if (space.n_max < 1) {
        throw std::invalid_argument("doubled_phase_operator: n_max must be >= 1");
    }
    const int d = space.dim();
    // lowering shift along the chain; chain position p+1 maps to p, so in
    // particular |0,+> (p = n_max+1) maps to |0,-> (p = n_max)
    Matrix e = Matrix::Zero(d, d);
    for (int p = 0; p + 1 < d; ++p) {
        e(p, p + 1) = 1.0;
    }
    return ComplexOperator(std::move(e));
}

nlohmann::json phase_report(int n_max) {
    TruncatedLadderSpace single{n_max};
    DoubledSpace doubled{n_max};
    ComplexOperator e = sg_operator(single);
    ComplexOperator ext = doubled_phase_operator(doubled);
    UnitarityDefectReport single_rep = unitarity_defect(e);
    UnitarityDefectReport doubled_rep = unitarity_defect(ext);

    nlohmann::json j;
    j["n_max"] = n_max;
    j["left_defect"] = single_rep.left_defect;
    j["right_defect"] = single_rep.right_defect;
    j["defect_support"] = single_rep.defect_support;
    nlohmann::json dj;
    dj["dim"] = doubled.dim();
    dj["left_defect"] = doubled_rep.left_defect;
    dj["right_defect"] = doubled_rep.right_defect;
    dj["defect_support"] = doubled_rep.defect_support;
    // open-boundary truncation: only the chain endpoints may appear
    dj["endpoint_indices"] = std::vector<int>{0, doubled.dim() - 1};
    dj["vacuum_indices"] = std::vector<int>{doubled.index_minus(0), doubled.index_plus(0)};
    j["doubled"] = dj;
    return j;
}

}  // namespace bellops
