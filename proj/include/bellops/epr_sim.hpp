#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bellops/operator_core.hpp"

namespace bellops {

// Hidden-variable response rule: one shared polarization-like parameter
// lambda per photon pair (radians in [0, pi)) plus an independent uniform
// u in [0,1] per polarizer passage.
struct ResponseModel {
    std::string name;
    std::function<double(std::mt19937_64&)> sample_lambda;
    std::function<bool(double angle, double lambda, double u)> pass_rule;
    std::function<double(double lambda, double angle, bool pass)> update_rule;
};

class ModelRegistry {
  public:
    // sign and malus-threshold models
    static ModelRegistry builtin();
    void add(ResponseModel model);
    const ResponseModel& get(const std::string& name) const;
    std::vector<std::string> names() const;

  private:
    std::vector<ResponseModel> models_;
};

struct CoincidenceCounts {
    double alpha = 0.0, beta = 0.0;  // radians
    std::uint64_t n_pp = 0, n_pa = 0, n_ap = 0, n_aa = 0;
    std::uint64_t total() const { return n_pp + n_pa + n_ap + n_aa; }
};

struct CorrelationEstimate {
    double alpha = 0.0, beta = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

struct ChshEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

double malus_transmission(double theta);

// E(alpha, beta) = <Phi| A(alpha) (x) A(beta) |Phi> for the same-polarization
// pair state |Phi> = (|HH> + |VV>)/sqrt(2); evaluates to cos 2(alpha-beta).
double quantum_pair_correlation(double alpha, double beta);

// p++ = <Phi| P(alpha) (x) P(beta) |Phi> with P = (I + A)/2.
double quantum_coincidence_probability(double alpha, double beta);

// Monte Carlo coincidence run; counts sum to n_pairs, deterministic for a
// fixed seed and independent of the thread count (chunked substreams).
CoincidenceCounts run_coincidence_quantum(double alpha, double beta, std::uint64_t n_pairs,
                                          std::uint64_t seed, int threads = 1);
CoincidenceCounts run_coincidence(const ResponseModel& model, double alpha, double beta,
                                  std::uint64_t n_pairs, std::uint64_t seed, int threads = 1);

CorrelationEstimate correlation_from_counts(const CoincidenceCounts& counts);

// S = E11 + E21 + E12 - E22 for counts at (a1,b1),(a2,b1),(a1,b2),(a2,b2).
ChshEstimate estimate_chsh(const std::array<CoincidenceCounts, 4>& counts);

// Final-stage analytic reference for an unpolarized beam through the chain:
// cumulative fraction after stage k is 1/2 * prod_{i>=2..k} cos^2(t_i - t_{i-1}).
std::vector<double> chain_analytic(const std::vector<double>& angles);

// Per-stage cumulative Monte Carlo pass fractions; photons enter with
// lambda drawn from the model's hidden distribution.
std::vector<double> chain_transmission(const ResponseModel& model,
                                       const std::vector<double>& angles,
                                       std::uint64_t n_photons, std::uint64_t seed,
                                       int threads = 1);

}  // namespace bellops
