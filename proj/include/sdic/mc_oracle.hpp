#pragma once

// Monte-Carlo cross-validation: sample the scene's basis, form the sample
// covariance and feed it through the same Gaussian formulas (plug-in
// estimator). Draw i of basis element k is a pure function of (seed, i, k),
// and per-block partial sums are reduced in block order, so results are
// bit-identical for any thread count and for the serial reference kernel.

#include "sdic/gaussian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdic {

enum class Exec { Serial, Parallel };

inline constexpr std::int64_t kMcDefaultSamples = 1'000'000;
inline constexpr double kMcDefaultTol = 0.01;
inline constexpr double kMcComposedTol = 0.02;
inline constexpr std::int64_t kMcBlock = 16384;

/// Sample covariance (unbiased) of the scaled basis draws z_k = sqrt(var_k) * n_k.
Eigen::MatrixXd sample_basis_covariance(const Eigen::VectorXd& variances, std::int64_t n, std::uint64_t seed,
                                        Exec exec = Exec::Parallel);

/// Sample covariance of `names` (C * S_z * C^T); deterministic in (scene, names, n, seed).
Eigen::MatrixXd sample_covariance(const GaussianScene& scene, const NameList& names, std::int64_t n,
                                  std::uint64_t seed, Exec exec = Exec::Parallel);

/// weight * I(A;B|C); C may be empty.
struct MiTerm {
    NameList a;
    NameList b;
    NameList c;
    double weight = 1.0;
};

/// A query is a weighted sum of information terms, so composed identities
/// (e.g. a rate minus a binning cost) can be validated as one number.
struct McQuery {
    std::string description;
    std::vector<MiTerm> terms;
    std::optional<double> tol;
};

McQuery mi_query(std::string description, NameList a, NameList b, NameList c = {});

struct McPair {
    std::string description;
    double analytic = 0.0;
    double empirical = 0.0;
    double abs_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct McReport {
    std::vector<McPair> pairs;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::string generator;
    double log_base = kBits;
    bool pass = false;
};

McReport validate(const GaussianScene& scene, const std::vector<McQuery>& queries, std::int64_t n,
                  std::uint64_t seed, double tol = kMcDefaultTol, double log_base = kBits,
                  Exec exec = Exec::Parallel);

} // namespace sdic
