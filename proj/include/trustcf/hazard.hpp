#pragma once

#include <cstdint>
#include <vector>

#include "trustcf/observation.hpp"
#include "trustcf/support_window.hpp"

namespace trustcf {

/// Discrete monthly hazard model over the ages {delta+1, ..., xi}.
///
/// Arrays are index-aligned with the support: position i holds age
/// window.delta + 1 + i.  `n` is the number of observations behind an
/// estimated model; analytic models carry n = 0 with f_hat = lambda and
/// c_hat = 1 so the plug-in identity lambda = f_hat / c_hat still holds.
struct HazardModel {
    SupportWindow window;
    std::vector<double> lambda;
    std::vector<double> f_hat;
    std::vector<double> c_hat;
    long n = 0;

    int index_of(int age) const;       ///< throws when age is outside the support
    double lambda_at(int age) const { return lambda[static_cast<std::size_t>(index_of(age))]; }
    double f_at(int age) const { return f_hat[static_cast<std::size_t>(index_of(age))]; }
    double c_at(int age) const { return c_hat[static_cast<std::size_t>(index_of(age))]; }
};

/// Sampling covariance of the hazard estimates.
///
/// `diag` is index-aligned with the model support and already divided by
/// nothing: the variance of lambda_hat(x) is diag[i] / n.  Indices whose risk
/// set is empty have no defined variance; they carry NaN and are listed in
/// `undefined_ages`.  Off-diagonal terms of the hazard covariance are zero.
struct HazardCovariance {
    SupportWindow window;
    std::vector<double> diag;
    std::vector<int> undefined_ages;
    long n = 0;

    double variance_at(int age) const;  ///< diag/n; throws when undefined
    bool fully_defined() const { return undefined_ages.empty(); }
};

/// Analytic model with a constant hazard p over the window's support.
HazardModel make_constant_hazard_model(const SupportWindow& window, double p);

/// Analytic model from explicit per-age hazards (index-aligned with support).
HazardModel make_analytic_model(const SupportWindow& window, std::vector<double> lambda);

/// Life-table estimator under delayed entry and right censoring.
///
/// f_hat(x) = (1/n) #{terminations at age x},
/// c_hat(x) = (1/n) #{contracts with y <= x <= t},
/// lambda(x) = f_hat(x) / c_hat(x), and 0 where the risk set is empty.
///
/// Every triple is validated against the window: y in {delta+1, ..., m+delta},
/// y <= t, terminations satisfy t <= xi (and t <= y + tau while censoring is
/// active), censored records require an active censoring scheme and t = y + tau.
/// Throws std::invalid_argument naming the offending triple.
HazardModel estimate_hazard(const std::vector<ObservationTriple>& observations,
                            const SupportWindow& window);

/// Ages in the model support whose risk set was empty (c_hat = 0).
std::vector<int> unobserved_ages(const HazardModel& model);

/// Pr(lifetime >= x) for x in {delta+1, ..., xi+1}: the product of
/// (1 - lambda(k)) over delta+1 <= k < x.  The empty product is 1.
double survival_function(const HazardModel& model, int x);

/// Distribution of the remaining lifetime K >= 1 of a contract alive at age a
/// (delta <= a < xi).  Element k-1 holds Pr(K = k); the final element k = xi-a
/// absorbs all remaining mass so the vector sums to one exactly:
///   Pr(K = k)      = lambda(a+k) * prod_{j<k} (1 - lambda(a+j)),  k < xi - a
///   Pr(K = xi - a) = prod_{j < xi-a} (1 - lambda(a+j)).
std::vector<double> remaining_lifetime_pmf(const HazardModel& model, int a);

/// Large-sample covariance of the estimated hazards.  Requires n > 0.
/// diag(x) = f_hat(x) (c_hat(x) - f_hat(x)) / c_hat(x)^3; variance = diag / n.
HazardCovariance asymptotic_covariance(const HazardModel& model);

/// Extends a censored support {delta+1..xi} out to omega by carrying the last
/// estimated hazard flat and forcing termination at omega:
///   lambda(x) = lambda(xi) for xi < x < omega,  lambda(omega) = 1.
/// Appended ages carry f_hat = c_hat = 0 (no data).  A model already reaching
/// omega is returned unchanged.  Requires lambda(xi) > 0.
HazardModel extend_tail_geometric(const HazardModel& model);

/// Replaces zero hazards that are artifacts of sparse data: zeros strictly
/// between nonzero estimates are filled by linear interpolation in age, and
/// leading or trailing zeros copy the nearest nonzero estimate.  Where the
/// risk set is nonempty, f_hat is refreshed to lambda * c_hat so the plug-in
/// variance formula stays meaningful.  Throws when every hazard is zero.
HazardModel interpolate_zero_hazards(const HazardModel& model);

}  // namespace trustcf
