#pragma once

// Exact information measures for jointly Gaussian variables that are linear
// combinations of independent zero-mean Gaussian primitives.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdic {

inline constexpr double kBits = 2.0;
inline constexpr double kNats = std::numbers::e;

/// A variable whose conditional variance, relative to its own variance, falls
/// at or below this ratio is treated as linearly dependent on what precedes it.
inline constexpr double kSingularRel = 1e-12;

using NameList = std::vector<std::string>;
using Term = std::pair<std::string, double>;

struct BasisElement {
    std::string name;
    double variance = 0.0;
};

/// Named random variables over an independent Gaussian basis.
///
/// Every basis element is also registered as a variable of the same name, so
/// `add_var("Y", {{"X", 1.0}, {"N", 1.0}})` reads like the channel equation.
/// Adding a basis element later pads existing coefficient vectors with zero.
class GaussianScene {
public:
    GaussianScene& add_basis(std::string name, double variance);

    /// Defines `name` as sum(coeff * var) over existing variables (basis or derived).
    GaussianScene& add_var(std::string name, const std::vector<Term>& terms);
    GaussianScene& add_var_coeffs(std::string name, Eigen::VectorXd coeffs);

    const std::vector<BasisElement>& basis() const noexcept { return basis_; }
    std::size_t basis_size() const noexcept { return basis_.size(); }
    Eigen::VectorXd variances() const;

    bool has(std::string_view name) const;
    const Eigen::VectorXd& coeffs(std::string_view name) const;
    double coeff(std::string_view var, std::string_view basis_name) const;
    std::size_t basis_index(std::string_view basis_name) const;
    const NameList& var_names() const noexcept { return order_; }

    /// Rows are the coefficient vectors of `names`, in order.
    Eigen::MatrixXd coefficient_matrix(const NameList& names) const;

private:
    std::vector<BasisElement> basis_;
    std::map<std::string, Eigen::VectorXd, std::less<>> vars_;
    NameList order_;
};

/// C * diag(var) * C^T for the rows of `names`.
Eigen::MatrixXd covariance(const GaussianScene& scene, const NameList& names);

/// Differential entropy in units of `log_base`; nullopt when the variables are
/// linearly dependent (entropy is minus infinity).
std::optional<double> entropy(const GaussianScene& scene, const NameList& names,
                              double log_base = kBits);

/// I(A;B). Returns +infinity when some combination of B is a deterministic
/// function of A. Members of A (or B) that are functions of the rest of their
/// own set carry no extra information and are dropped before evaluation.
double mutual_info(const GaussianScene& scene, const NameList& a, const NameList& b,
                   double log_base = kBits);

/// I(A;B|C); same dependency handling as mutual_info, applied after conditioning.
double cond_mutual_info(const GaussianScene& scene, const NameList& a, const NameList& b,
                        const NameList& c, double log_base = kBits);

// Covariance-level kernels. Indices select rows/columns of `cov`; the scene
// overloads above forward here, and the Monte-Carlo oracle feeds sample
// covariances through the same code path.
std::optional<double> entropy_cov(const Eigen::MatrixXd& cov, std::span<const int> idx,
                                  double log_base = kBits);
double cond_mutual_info_cov(const Eigen::MatrixXd& cov, std::span<const int> a,
                            std::span<const int> b, std::span<const int> c,
                            double log_base = kBits);

/// Smallest eigenvalue estimate of a symmetric matrix (for PSD assertions).
double min_eigenvalue(const Eigen::MatrixXd& sym);

} // namespace sdic
