#include "sdic/gaussian.hpp"

#include "sdic/error.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace sdic {

namespace {

// Cholesky factor grown one variable at a time in a caller-chosen order.
// A variable whose residual variance given the kept set is at most
// kSingularRel times its own variance is reported as dependent.
class SequentialCholesky {
public:
    explicit SequentialCholesky(const Eigen::MatrixXd& cov) : cov_(&cov) {}

    double residual(int i) const {
        const auto& cov = *cov_;
        double r = cov(i, i);
        for (std::size_t j = 0; j < kept_.size(); ++j) {
            double v = cov(kept_[j], i);
            for (std::size_t m = 0; m < j; ++m) v -= rows_[j][m] * tmp_[m];
            tmp_[j] = v / diag_[j];
            r -= tmp_[j] * tmp_[j];
        }
        return r;
    }

    bool dependent(int i, double r) const { return r <= kSingularRel * (*cov_)(i, i); }

    // Returns false (and keeps nothing) when `i` is dependent on the kept set.
    bool push(int i) {
        tmp_.resize(kept_.size() + 1);
        double r = residual(i);
        if (dependent(i, r)) return false;
        std::vector<double> row(tmp_.begin(), tmp_.begin() + static_cast<long>(kept_.size()));
        rows_.push_back(std::move(row));
        diag_.push_back(std::sqrt(r));
        kept_.push_back(i);
        logdet_ += std::log(r);
        return true;
    }

    double residual_checked(int i) {
        tmp_.resize(kept_.size() + 1);
        return residual(i);
    }

    double logdet() const { return logdet_; }
    const std::vector<int>& kept() const { return kept_; }

private:
    const Eigen::MatrixXd* cov_;
    std::vector<int> kept_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> diag_;
    mutable std::vector<double> tmp_;
    double logdet_ = 0.0;
};

std::vector<int> concat_indices(const NameList& a, const NameList& b, const NameList& c,
                                NameList& all) {
    all.clear();
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    all.insert(all.end(), c.begin(), c.end());
    std::vector<int> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return idx;
}

void require_disjoint(const NameList& x, const NameList& y, const char* what) {
    std::set<std::string_view> seen(x.begin(), x.end());
    for (const auto& n : y) {
        if (seen.count(n)) {
            throw DomainError(ErrorCode::OverlappingSets,
                              std::string(what) + " share variable '" + n + "'");
        }
    }
}

} // namespace

GaussianScene& GaussianScene::add_basis(std::string name, double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) {
        throw DomainError(ErrorCode::InvalidParams,
                          "basis element '" + name + "' needs a finite nonnegative variance");
    }
    if (has(name)) {
        throw DomainError(ErrorCode::InvalidParams, "duplicate variable name '" + name + "'");
    }
    basis_.push_back({name, variance});
    const auto n = static_cast<Eigen::Index>(basis_.size());
    for (auto& [_, v] : vars_) {
        v.conservativeResize(n);
        v(n - 1) = 0.0;
    }
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    unit(n - 1) = 1.0;
    vars_.emplace(name, std::move(unit));
    order_.push_back(std::move(name));
    return *this;
}

GaussianScene& GaussianScene::add_var(std::string name, const std::vector<Term>& terms) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_.size()));
    for (const auto& [var, k] : terms) v += k * coeffs(var);
    return add_var_coeffs(std::move(name), std::move(v));
}

GaussianScene& GaussianScene::add_var_coeffs(std::string name, Eigen::VectorXd v) {
    if (v.size() != static_cast<Eigen::Index>(basis_.size())) {
        throw DomainError(ErrorCode::InvalidParams,
                          "coefficient vector for '" + name + "' has wrong length");
    }
    if (has(name)) {
        throw DomainError(ErrorCode::InvalidParams, "duplicate variable name '" + name + "'");
    }
    vars_.emplace(name, std::move(v));
    order_.push_back(std::move(name));
    return *this;
}

Eigen::VectorXd GaussianScene::variances() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i) v(static_cast<Eigen::Index>(i)) = basis_[i].variance;
    return v;
}

bool GaussianScene::has(std::string_view name) const { return vars_.find(name) != vars_.end(); }

const Eigen::VectorXd& GaussianScene::coeffs(std::string_view name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) {
        throw DomainError(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
    }
    return it->second;
}

std::size_t GaussianScene::basis_index(std::string_view basis_name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].name == basis_name) return i;
    }
    throw DomainError(ErrorCode::UnknownVariable,
                      "unknown basis element '" + std::string(basis_name) + "'");
}

double GaussianScene::coeff(std::string_view var, std::string_view basis_name) const {
    return coeffs(var)(static_cast<Eigen::Index>(basis_index(basis_name)));
}

Eigen::MatrixXd GaussianScene::coefficient_matrix(const NameList& names) const {
    Eigen::MatrixXd c(static_cast<Eigen::Index>(names.size()), static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < names.size(); ++i) c.row(static_cast<Eigen::Index>(i)) = coeffs(names[i]).transpose();
    return c;
}

Eigen::MatrixXd covariance(const GaussianScene& scene, const NameList& names) {
    const Eigen::MatrixXd c = scene.coefficient_matrix(names);
    Eigen::MatrixXd cov = c * scene.variances().asDiagonal() * c.transpose();
    // exact symmetry; the product above can differ in the last bit
    return 0.5 * (cov + cov.transpose());
}

std::optional<double> entropy_cov(const Eigen::MatrixXd& cov, std::span<const int> idx, double log_base) {
    if (idx.empty()) {
        throw DomainError(ErrorCode::InvalidParams, "entropy of an empty set");
    }
    SequentialCholesky chol(cov);
    for (int i : idx) {
        if (!chol.push(i)) return std::nullopt;
    }
    const double n = static_cast<double>(idx.size());
    const double nats = 0.5 * (n * std::log(2.0 * std::numbers::pi * std::numbers::e) + chol.logdet());
    return nats / std::log(log_base);
}

double cond_mutual_info_cov(const Eigen::MatrixXd& cov, std::span<const int> a, std::span<const int> b,
                            std::span<const int> c, double log_base) {
    if (a.empty() || b.empty()) {
        throw DomainError(ErrorCode::InvalidParams, "mutual information needs nonempty sets");
    }
    SequentialCholesky given_c(cov);
    for (int i : c) given_c.push(i);

    // B' = members of B that are not functions of C and earlier members of B.
    SequentialCholesky b_given_c = given_c;
    std::vector<int> b_kept;
    const double base_logdet = given_c.logdet();
    for (int i : b) {
        if (b_given_c.push(i)) b_kept.push_back(i);
    }
    const double logdet_b_c = b_given_c.logdet() - base_logdet;

    SequentialCholesky b_given_ac = given_c;
    for (int i : a) b_given_ac.push(i);
    const double base_ac = b_given_ac.logdet();
    for (int i : b_kept) {
        double r = b_given_ac.residual_checked(i);
        if (b_given_ac.dependent(i, r)) return std::numeric_limits<double>::infinity();
        b_given_ac.push(i);
    }
    const double logdet_b_ac = b_given_ac.logdet() - base_ac;
    return 0.5 * (logdet_b_c - logdet_b_ac) / std::log(log_base);
}

std::optional<double> entropy(const GaussianScene& scene, const NameList& names, double log_base) {
    if (names.empty()) {
        throw DomainError(ErrorCode::InvalidParams, "entropy of an empty set");
    }
    const Eigen::MatrixXd cov = covariance(scene, names);
    std::vector<int> idx(names.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return entropy_cov(cov, idx, log_base);
}

double mutual_info(const GaussianScene& scene, const NameList& a, const NameList& b, double log_base) {
    return cond_mutual_info(scene, a, b, {}, log_base);
}

double cond_mutual_info(const GaussianScene& scene, const NameList& a, const NameList& b, const NameList& c,
                        double log_base) {
    require_disjoint(a, b, "A and B");
    require_disjoint(a, c, "A and C");
    require_disjoint(b, c, "B and C");
    // I(A;B|C) = I(B;A|C); a canonical order makes the two calls bit-identical
    const bool swap = b < a;
    const NameList& first = swap ? b : a;
    const NameList& second = swap ? a : b;
    NameList all;
    const auto idx = concat_indices(first, second, c, all);
    const Eigen::MatrixXd cov = covariance(scene, all);
    const auto na = static_cast<std::ptrdiff_t>(first.size());
    const auto nb = static_cast<std::ptrdiff_t>(second.size());
    std::span<const int> s(idx);
    return cond_mutual_info_cov(cov, s.subspan(0, static_cast<std::size_t>(na)),
                                s.subspan(static_cast<std::size_t>(na), static_cast<std::size_t>(nb)),
                                s.subspan(static_cast<std::size_t>(na + nb)), log_base);
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace sdic
