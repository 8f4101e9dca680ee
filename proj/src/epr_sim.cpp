#include "bellops/epr_sim.hpp"

#include <cmath>
#include <future>

#include "bellops/bell_bounds.hpp"
#include "bellops/rng.hpp"

namespace bellops {

namespace {

constexpr std::uint64_t CHUNK_PAIRS = 1u << 16;

double reduce_mod_pi(double a) {
    double r = std::fmod(a, M_PI);
    if (r < 0) r += M_PI;
    return r;
}

StateVector same_polarization_pair() {
    StateVector phi(4);
    phi << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    return phi;
}

double pair_expectation(const ComplexOperator& joint) {
    StateVector phi = same_polarization_pair();
    Complex v = phi.adjoint() * joint.matrix() * phi;
    return v.real();
}

struct PairProbs {
    double pp, pa, ap, aa;
};

PairProbs quantum_pair_probs(double alpha, double beta) {
    double e = quantum_pair_correlation(alpha, beta);
    double same = (1.0 + e) / 4.0;
    double diff = (1.0 - e) / 4.0;
    return PairProbs{same, diff, diff, same};
}

// Runs `chunks` independent jobs, each with its own derived substream, and
// merges with `merge`. Results are identical for any thread count.
template <typename Result, typename Job, typename Merge>
Result run_chunked(std::uint64_t n_items, std::uint64_t seed, int threads, Job job,
                   Merge merge, Result init) {
    const std::uint64_t n_chunks = (n_items + CHUNK_PAIRS - 1) / CHUNK_PAIRS;
    Result acc = std::move(init);
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            std::uint64_t lo = c * CHUNK_PAIRS;
            std::uint64_t count = std::min<std::uint64_t>(CHUNK_PAIRS, n_items - lo);
            Result r = job(count, derive_substream(seed, c));
            acc = merge(std::move(acc), std::move(r));
        }
        return acc;
    }
    std::vector<std::future<Result>> futures;
    futures.reserve(n_chunks);
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        std::uint64_t lo = c * CHUNK_PAIRS;
        std::uint64_t count = std::min<std::uint64_t>(CHUNK_PAIRS, n_items - lo);
        futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                     [=]() { return job(count, derive_substream(seed, c)); }));
        if (static_cast<int>(futures.size()) >= threads || c + 1 == n_chunks) {
            for (auto& f : futures) acc = merge(std::move(acc), f.get());
            futures.clear();
        }
    }
    return acc;
}

CoincidenceCounts merge_counts(CoincidenceCounts a, CoincidenceCounts b) {
    a.n_pp += b.n_pp;
    a.n_pa += b.n_pa;
    a.n_ap += b.n_ap;
    a.n_aa += b.n_aa;
    return a;
}

}  // namespace

void ModelRegistry::add(ResponseModel model) { models_.push_back(std::move(model)); }

const ResponseModel& ModelRegistry::get(const std::string& name) const {
    for (const auto& m : models_) {
        if (m.name == name) return m;
    }
    throw std::invalid_argument("unknown response model: " + name);
}

std::vector<std::string> ModelRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(models_.size());
    for (const auto& m : models_) out.push_back(m.name);
    return out;
}

ModelRegistry ModelRegistry::builtin() {
    ModelRegistry reg;
    auto uniform_lambda = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> uni(0.0, M_PI);
        return uni(rng);
    };
    auto repolarize = [](double /*lambda*/, double angle, bool pass) {
        return pass ? reduce_mod_pi(angle) : 0.0;
    };
    reg.add(ResponseModel{
        "sign", uniform_lambda,
        [](double angle, double lambda, double /*u*/) {
            return std::cos(2.0 * (angle - lambda)) > 0.0;
        },
        repolarize});
    reg.add(ResponseModel{
        "malus-threshold", uniform_lambda,
        [](double angle, double lambda, double u) {
            double c = std::cos(angle - lambda);
            return u < c * c;
        },
        repolarize});
    return reg;
}

double malus_transmission(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("malus_transmission: angle must be finite");
    }
    double c = std::cos(theta);
    return c * c;
}

double quantum_pair_correlation(double alpha, double beta) {
    ComplexOperator joint =
        tensor_product(make_observable(alpha).matrix, make_observable(beta).matrix);
    return pair_expectation(joint);
}

double quantum_coincidence_probability(double alpha, double beta) {
    auto projector = [](double angle) {
        Matrix p = 0.5 * (Matrix::Identity(2, 2) + make_observable(angle).matrix.matrix());
        return ComplexOperator(std::move(p), true, false);
    };
    return pair_expectation(tensor_product(projector(alpha), projector(beta)));
}

CoincidenceCounts run_coincidence_quantum(double alpha, double beta, std::uint64_t n_pairs,
                                          std::uint64_t seed, int threads) {
    if (n_pairs < 1) {
        throw std::invalid_argument("run_coincidence: n_pairs must be >= 1");
    }
    PairProbs p = quantum_pair_probs(alpha, beta);
    auto job = [p](std::uint64_t count, std::uint64_t sub_seed) {
        CoincidenceCounts c;
        std::mt19937_64 rng = make_engine(sub_seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (std::uint64_t i = 0; i < count; ++i) {
            double x = uni(rng);
            if (x < p.pp) {
                ++c.n_pp;
            } else if (x < p.pp + p.pa) {
                ++c.n_pa;
            } else if (x < p.pp + p.pa + p.ap) {
                ++c.n_ap;
            } else {
                ++c.n_aa;
            }
        }
        return c;
    };
    CoincidenceCounts counts = run_chunked<CoincidenceCounts>(
        n_pairs, seed, threads, job, [](CoincidenceCounts a, CoincidenceCounts b) {
            return merge_counts(std::move(a), std::move(b));
        }, CoincidenceCounts{});
    counts.alpha = alpha;
    counts.beta = beta;
    return counts;
}

CoincidenceCounts run_coincidence(const ResponseModel& model, double alpha, double beta,
                                  std::uint64_t n_pairs, std::uint64_t seed, int threads) {
    if (n_pairs < 1) {
        throw std::invalid_argument("run_coincidence: n_pairs must be >= 1");
    }
    auto job = [&model, alpha, beta](std::uint64_t count, std::uint64_t sub_seed) {
        CoincidenceCounts c;
        std::mt19937_64 rng = make_engine(sub_seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (std::uint64_t i = 0; i < count; ++i) {
            double lambda = model.sample_lambda(rng);  // shared by both arms
            double ua = uni(rng);
            double ub = uni(rng);
            bool pa = model.pass_rule(alpha, lambda, ua);
            bool pb = model.pass_rule(beta, lambda, ub);
            if (pa && pb) ++c.n_pp;
            else if (pa) ++c.n_pa;
            else if (pb) ++c.n_ap;
            else ++c.n_aa;
        }
        return c;
    };
    CoincidenceCounts counts = run_chunked<CoincidenceCounts>(
        n_pairs, seed, threads, job, [](CoincidenceCounts a, CoincidenceCounts b) {
            return merge_counts(std::move(a), std::move(b));
        }, CoincidenceCounts{});
    counts.alpha = alpha;
    counts.beta = beta;
    return counts;
}

CorrelationEstimate correlation_from_counts(const CoincidenceCounts& counts) {
    const double n = static_cast<double>(counts.total());
    if (n == 0) {
        throw std::invalid_argument("correlation_from_counts: empty counts");
    }
    double e = (static_cast<double>(counts.n_pp) + static_cast<double>(counts.n_aa) -
                static_cast<double>(counts.n_pa) - static_cast<double>(counts.n_ap)) /
               n;
    double var = std::max(0.0, 1.0 - e * e) / n;
    return CorrelationEstimate{counts.alpha, counts.beta, e, std::sqrt(var)};
}

ChshEstimate estimate_chsh(const std::array<CoincidenceCounts, 4>& counts) {
    double s = 0.0;
    double var = 0.0;
    const double signs[4] = {1.0, 1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i) {
        CorrelationEstimate e = correlation_from_counts(counts[i]);
        s += signs[i] * e.value;
        var += e.std_error * e.std_error;
    }
    return ChshEstimate{s, std::sqrt(var)};
}

std::vector<double> chain_analytic(const std::vector<double>& angles) {
    if (angles.empty()) {
        throw std::invalid_argument("chain_analytic: at least one polarizer required");
    }
    std::vector<double> out;
    out.reserve(angles.size());
    double f = 0.5;  // unpolarized beam through the first polarizer
    out.push_back(f);
    for (std::size_t i = 1; i < angles.size(); ++i) {
        f *= malus_transmission(angles[i] - angles[i - 1]);
        out.push_back(f);
    }
    return out;
}

std::vector<double> chain_transmission(const ResponseModel& model,
                                       const std::vector<double>& angles,
                                       std::uint64_t n_photons, std::uint64_t seed,
                                       int threads) {
    if (angles.empty()) {
        throw std::invalid_argument("chain_transmission: at least one polarizer required");
    }
    if (n_photons < 1) {
        throw std::invalid_argument("chain_transmission: n_photons must be >= 1");
    }
    const std::size_t n_stages = angles.size();
    using Survivors = std::vector<std::uint64_t>;
    auto job = [&](std::uint64_t count, std::uint64_t sub_seed) {
        Survivors surv(n_stages, 0);
        std::mt19937_64 rng = make_engine(sub_seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (std::uint64_t i = 0; i < count; ++i) {
            double lambda = model.sample_lambda(rng);
            for (std::size_t s = 0; s < n_stages; ++s) {
                double u = uni(rng);
                if (!model.pass_rule(angles[s], lambda, u)) break;
                lambda = model.update_rule(lambda, angles[s], true);
                ++surv[s];
            }
        }
        return surv;
    };
    Survivors total = run_chunked<Survivors>(
        n_photons, seed, threads, job,
        [n_stages](Survivors a, Survivors b) {
            for (std::size_t i = 0; i < n_stages; ++i) a[i] += b[i];
            return a;
        },
        Survivors(n_stages, 0));
    std::vector<double> fractions(n_stages);
    for (std::size_t i = 0; i < n_stages; ++i) {
        fractions[i] = static_cast<double>(total[i]) / static_cast<double>(n_photons);
    }
    return fractions;
}

}  // namespace bellops
