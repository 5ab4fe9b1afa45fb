#pragma once

#include "fogran/partition.hpp"
#include "fogran/topology.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fogran {

// Distribution of one user count.
struct CountDist {
    enum Kind { Fixed, Poisson, Histogram } kind = Fixed;
    long value = 0;                                  // Fixed
    Rational lambda;                                 // Poisson
    std::vector<std::pair<long, Rational>> masses;   // Histogram (value, probability)

    static CountDist fixed(long v);
    static CountDist poisson(const Rational& lambda);
    static CountDist histogram(std::vector<std::pair<long, Rational>> masses);

    Rational mean() const;
    Rational variance() const;
    // Exact support with masses; Poisson is cut at the 1-1e-12 quantile and renormalized.
    std::vector<std::pair<long, Rational>> support() const;
    long sample(std::mt19937_64& rng) const;
};

struct TopologyDistribution {
    CountDist K_mbs;
    std::vector<CountDist> L;
    long N = 0;
    int H() const { return static_cast<int>(L.size()); }
    static TopologyDistribution point_mass(const Topology& topo);
};

struct EvalMode {
    enum Kind { Exhaustive, MonteCarlo } kind = Exhaustive;
    std::size_t cap = 1'000'000;     // Exhaustive: max realizations
    std::size_t samples = 100'000;   // MonteCarlo
    std::uint64_t seed = 1;
    static EvalMode exhaustive(std::size_t cap = 1'000'000) { return {Exhaustive, cap, 0, 0}; }
    static EvalMode monte_carlo(std::size_t samples, std::uint64_t seed) { return {MonteCarlo, 0, samples, seed}; }
};

struct AgnosticResult {
    MemoryLoadPoint point;
    double stderr_mbs = 0, stderr_sbs = 0;  // MonteCarlo only
    std::size_t realizations = 0;
};

// Expected loads of the topology-agnostic shared-link scheme with n coded-placement files.
AgnosticResult agnostic_shared_point(const TopologyDistribution& dist, const Partition& phi, int t, long n,
                                     const EvalMode& mode);
// Expected loads of the topology-agnostic sidelink scheme. unprimed_qt selects the
// bracket variant q'_{t+1} - q'_1 + q_t (unclipped q_t).
AgnosticResult agnostic_sidelink_point(const TopologyDistribution& dist, const Partition& phi, int t, long n,
                                       const EvalMode& mode, bool unprimed_qt = false);

// Per-realization loads (exposed for tests and figure sweeps).
Rational agnostic_shared_load(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n);
Rational agnostic_sidelink_load(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n,
                                bool unprimed_qt = false);
double agnostic_shared_load_d(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n);
double agnostic_sidelink_load_d(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n,
                                bool unprimed_qt = false);

// Variance objective E[sum_i (sum_{j in G_i} L_j - E[sum L]/G)^2].
Rational variance_objective(const TopologyDistribution& dist, const Partition& phi);
Partition variance_partition(const TopologyDistribution& dist, int G);

struct TailEstimate {
    std::size_t hits = 0, samples = 0;
    double probability() const { return samples ? double(hits) / double(samples) : 0.0; }
};
// Monte Carlo estimate of Pr{sum L + K_mbs > N}.
TailEstimate sanity_tail_probability(const TopologyDistribution& dist, long N, std::size_t samples,
                                     std::uint64_t seed);

}  // namespace fogran
