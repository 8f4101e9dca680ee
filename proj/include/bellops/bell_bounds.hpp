#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellops/operator_core.hpp"
#include "json.hpp"

namespace bellops {

inline const double SQRT2 = std::sqrt(2.0);
inline const double CLASSICAL_LIMIT = 2.0;
inline const double LOCAL_LIMIT = 2.0 * std::sqrt(2.0);
inline const double NONLOCAL_LIMIT = 2.0 * std::sqrt(3.0);

enum class CommutationRegime { Classical, LocalQuantum, Nonlocal };

std::string regime_name(CommutationRegime r);
CommutationRegime regime_from_name(const std::string& name);
double regime_limit(CommutationRegime r);

// A +/-1 polarization measurement at angle alpha:
// cos(2a) sigma_z + sin(2a) sigma_x.
struct DichotomicObservable {
    double angle = 0.0;  // radians, reduced to [0, pi)
    ComplexOperator matrix;
};

DichotomicObservable make_observable(double angle);

struct BellScenario {
    ComplexOperator a1, a2, b1, b2;  // Hermitian involutions, common dim
    CommutationRegime regime = CommutationRegime::Classical;

    // Checks involution and regime commutation constraints; throws naming the
    // offending operator or commutator.
    void validate() const;
};

BellScenario scenario_from_angles(double a1, double a2, double b1, double b2,
                                  CommutationRegime regime = CommutationRegime::LocalQuantum);

// Symmetrized CHSH combination a1b1 + a2b1 + a1b2 - a2b2, each product taken
// as (xy+yx)/2. LocalQuantum factors are embedded as a (x) I and I (x) b first.
ComplexOperator bell_operator(const BellScenario& s);

struct BoundCertificate {
    CommutationRegime regime = CommutationRegime::Classical;
    double achieved = 0.0;
    double theoretical_limit = 0.0;
    std::optional<BellScenario> witness;
    std::vector<double> witness_angles;  // radians; local-quantum witnesses
    std::vector<int> witness_signs;      // classical +/-1 witness
    std::string method;                  // enumeration | eigenanalysis | optimization
    std::uint64_t seed = 0;
    std::size_t evaluations = 0;
    int dim = 0;
    double prob_variant_max = 0.0;  // classical [0,1]-valued variant
    std::string note;
};

nlohmann::json certificate_to_json(const BoundCertificate& c);

// Exhaustive check of all 16 deterministic +/-1 assignments (and the 16
// [0,1] transmission-probability vertices); both maxima equal 2.
BoundCertificate classical_max();

// Derivative-free maximization of |B| over the four polarizer angles.
BoundCertificate maximize_local_quantum(int restarts, std::uint64_t seed);

// Maximization over four unconstrained involutions of the given dimension,
// parametrized as V diag(+1..,-1..) V^dag with V = exp(anti-Hermitian).
BoundCertificate maximize_nonlocal(int dim, int restarts, std::uint64_t seed);

// maximize_nonlocal at dim 4 with the documented dim-8 fallback when the
// search stalls below 2*sqrt(3) - 1e-2.
BoundCertificate certify_nonlocal(int restarts, std::uint64_t seed);

// Random scenarios satisfying the regime; returns |B| per sample.
std::vector<double> regime_sample_sweep(CommutationRegime regime, int samples,
                                        std::uint64_t seed);

// Single random scenario for the regime (dim 2 factors for LocalQuantum,
// dim 4 otherwise).
BellScenario random_scenario(CommutationRegime regime, std::uint64_t seed);

}  // namespace bellops
