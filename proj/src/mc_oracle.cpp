#include "sdic/mc_oracle.hpp"

#include "sdic/error.hpp"
#include "sdic/philox.hpp"

#include <cmath>
#include <limits>

namespace sdic {

namespace {

struct BlockSums {
    Eigen::VectorXd sum;
    Eigen::MatrixXd cross;
};

// Draws for samples [begin, end). Counter layout: (pair index within the
// sample, sample index low, sample index high, 0).
BlockSums block_sums(const Eigen::VectorXd& sd, std::int64_t begin, std::int64_t end, Philox4x32::Key key) {
    const auto k = sd.size();
    BlockSums out{Eigen::VectorXd::Zero(k), Eigen::MatrixXd::Zero(k, k)};
    Eigen::VectorXd z(k);
    for (std::int64_t i = begin; i < end; ++i) {
        const auto lo = static_cast<std::uint32_t>(i);
        const auto hi = static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32);
        for (Eigen::Index j = 0; j < k; j += 2) {
            const auto pair = normal_pair(Philox4x32::generate({static_cast<std::uint32_t>(j / 2), lo, hi, 0}, key));
            z(j) = sd(j) * pair[0];
            if (j + 1 < k) z(j + 1) = sd(j + 1) * pair[1];
        }
        out.sum += z;
        out.cross.selfadjointView<Eigen::Lower>().rankUpdate(z);
    }
    out.cross = out.cross.selfadjointView<Eigen::Lower>();
    return out;
}

} // namespace

Eigen::MatrixXd sample_basis_covariance(const Eigen::VectorXd& variances, std::int64_t n, std::uint64_t seed,
                                        Exec exec) {
    if (n < 2) throw DomainError(ErrorCode::InvalidParams, "sample covariance needs n >= 2");
    const Eigen::VectorXd sd = variances.cwiseMax(0.0).cwiseSqrt();
    const auto key = Philox4x32::key_from_seed(seed);
    const std::int64_t blocks = (n + kMcBlock - 1) / kMcBlock;
    std::vector<BlockSums> partial(static_cast<std::size_t>(blocks));

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t b = 0; b < blocks; ++b) {
            partial[static_cast<std::size_t>(b)] = block_sums(sd, b * kMcBlock, std::min(n, (b + 1) * kMcBlock), key);
        }
    } else {
        for (std::int64_t b = 0; b < blocks; ++b) {
            partial[static_cast<std::size_t>(b)] = block_sums(sd, b * kMcBlock, std::min(n, (b + 1) * kMcBlock), key);
        }
    }

    const auto k = sd.size();
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(k, k);
    for (const auto& p : partial) {
        sum += p.sum;
        cross += p.cross;
    }
    const double nn = static_cast<double>(n);
    const Eigen::VectorXd mean = sum / nn;
    return (cross - nn * mean * mean.transpose()) / (nn - 1.0);
}

Eigen::MatrixXd sample_covariance(const GaussianScene& scene, const NameList& names, std::int64_t n,
                                  std::uint64_t seed, Exec exec) {
    const Eigen::MatrixXd c = scene.coefficient_matrix(names);
    return c * sample_basis_covariance(scene.variances(), n, seed, exec) * c.transpose();
}

McQuery mi_query(std::string description, NameList a, NameList b, NameList c) {
    return {std::move(description), {MiTerm{std::move(a), std::move(b), std::move(c), 1.0}}, std::nullopt};
}

McReport validate(const GaussianScene& scene, const std::vector<McQuery>& queries, std::int64_t n,
                  std::uint64_t seed, double tol, double log_base, Exec exec) {
    McReport rep;
    rep.n_samples = n;
    rep.seed = seed;
    rep.generator = Philox4x32::kName;
    rep.log_base = log_base;
    rep.pass = true;

    const Eigen::MatrixXd sz = sample_basis_covariance(scene.variances(), n, seed, exec);
    constexpr double inf = std::numeric_limits<double>::infinity();

    for (const auto& q : queries) {
        double analytic = 0.0, empirical = 0.0;
        bool analytic_inf = false, empirical_inf = false;
        for (const auto& t : q.terms) {
            const double exact = cond_mutual_info(scene, t.a, t.b, t.c, log_base);
            NameList all = t.a;
            all.insert(all.end(), t.b.begin(), t.b.end());
            all.insert(all.end(), t.c.begin(), t.c.end());
            const Eigen::MatrixXd cm = scene.coefficient_matrix(all);
            const Eigen::MatrixXd cov = cm * sz * cm.transpose();
            std::vector<int> idx(all.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
            std::span<const int> s(idx);
            const double est = cond_mutual_info_cov(cov, s.subspan(0, t.a.size()), s.subspan(t.a.size(), t.b.size()),
                                                    s.subspan(t.a.size() + t.b.size()), log_base);
            if (std::isinf(exact)) analytic_inf = true; else analytic += t.weight * exact;
            if (std::isinf(est)) empirical_inf = true; else empirical += t.weight * est;
        }
        McPair pair;
        pair.description = q.description;
        pair.tol = q.tol.value_or(tol);
        if (analytic_inf || empirical_inf) {
            // a dependency in the scene must show up as an exactly singular sample covariance
            pair.analytic = analytic_inf ? inf : analytic;
            pair.empirical = empirical_inf ? inf : empirical;
            pair.abs_err = analytic_inf == empirical_inf ? 0.0 : inf;
        } else {
            pair.analytic = analytic;
            pair.empirical = empirical;
            pair.abs_err = std::abs(analytic - empirical);
        }
        pair.pass = pair.abs_err <= pair.tol;
        rep.pass = rep.pass && pair.pass;
        rep.pairs.push_back(std::move(pair));
    }
    return rep;
}

} // namespace sdic
