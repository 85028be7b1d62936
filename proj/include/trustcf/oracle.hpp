#pragma once

#include <cstdint>
#include <vector>

#include "trustcf/hazard.hpp"
#include "trustcf/observation.hpp"
#include "trustcf/rng.hpp"
#include "trustcf/support_window.hpp"

namespace trustcf {

/// Fully known joint law of (lifetime X, entry age Y) used to manufacture
/// datasets with computable truth.  X lives on {delta+1, ..., omega}, entry
/// ages on {delta+1, ..., m+delta}; X and Y are independent and a pair is
/// observable only when X >= Y.
struct OracleDistribution {
    SupportWindow window;
    std::vector<double> pmf_x;  ///< index i holds Pr(X = delta+1+i)
    std::vector<double> pmf_y;  ///< index i holds Pr(Y = delta+1+i)
    double alpha_accept = 0.0;  ///< Pr(X >= Y), the acceptance rate

    double px(int x) const;        ///< Pr(X = x), 0 outside the support
    double py(int y) const;        ///< Pr(Y = y), 0 outside the support
    double x_tail(int x) const;    ///< Pr(X >= x)
    double y_between(int lo, int hi) const;  ///< Pr(lo <= Y <= hi)
};

/// Exact observable-population quantities implied by an oracle, restricted to
/// the ages {delta+1, ..., xi} where the data can see them.
struct OracleTruth {
    std::vector<int> ages;
    std::vector<double> lambda_tau;  ///< true hazard of the observed population
    std::vector<double> f_star_tau;  ///< Pr(termination observed at age x)
    std::vector<double> c_tau;       ///< Pr(age x inside the observation interval)
};

/// Second-moment quantities for a pair of ages.
struct CrossMoments {
    double c_tau = 0.0;  ///< Pr(both ages covered and the later one uncensored)
    double r_tau = 0.0;  ///< same event with termination exactly at the later age
};

/// Exact covariance matrices of the estimator inputs (one-sample scale; the
/// n-sample covariance is the matrix divided by n).
struct OracleCovariances {
    std::vector<int> ages;
    std::vector<double> sigma_diag;                 ///< hazard variances, zero off-diagonal
    std::vector<std::vector<double>> sigma_c;       ///< covariance of the coverage counts
};

/// Outcome of repeatedly estimating on fresh oracle datasets.
struct ReplicationReport {
    std::vector<int> ages;
    long n = 0;
    long replicates = 0;
    std::uint64_t seed = 0;

    std::vector<double> lambda_true;
    std::vector<double> emp_mean;     ///< mean of lambda_hat per age
    std::vector<double> emp_var;      ///< sample variance of lambda_hat per age
    std::vector<double> theory_var;   ///< sigma_diag / n

    std::vector<double> emp_lo, emp_hi;    ///< 2.5 / 97.5 percentiles of lambda_hat
    std::vector<double> theo_lo, theo_hi;  ///< normal bands lambda +- z sqrt(sigma/n)

    std::vector<std::vector<double>> lambda_corr;  ///< empirical correlation of lambda_hat
    std::vector<std::vector<double>> c_emp_cov;    ///< empirical covariance of c_hat
    std::vector<std::vector<double>> c_theory_cov; ///< sigma_c / n

    double max_var_rel_err = 0.0;    ///< max |emp_var / theory_var - 1|
    double max_offdiag_corr = 0.0;   ///< max |corr| over distinct age pairs
    double max_band_rel_err = 0.0;   ///< max relative gap between band edges
    double max_c_cov_z = 0.0;        ///< max |emp - theory| in MC standard errors
};

/// Lifetimes truncated-geometric with rate p (all residual mass lumped at
/// omega), entry ages uniform.  Throws when p is outside (0, 1) or the
/// acceptance rate would be zero.
OracleDistribution make_truncated_geometric(const SupportWindow& window, double p);

/// Oracle from explicit pmfs (index-aligned as in OracleDistribution).
/// Both pmfs must sum to 1 within 1e-9; alpha_accept must be positive.
OracleDistribution make_oracle(const SupportWindow& window, std::vector<double> pmf_x,
                               std::vector<double> pmf_y);

/// n observation triples via rejection sampling: draw (X, Y) independently,
/// keep pairs with X >= Y, censor at Y + tau while censoring is active.
std::vector<ObservationTriple> generate_dataset(const OracleDistribution& oracle, long n,
                                                Rng& rng);

/// Exact lambda_tau, f_star_tau, c_tau by enumeration over the joint law.
OracleTruth true_conditional_quantities(const OracleDistribution& oracle);

/// Exact joint coverage / termination probabilities for an age pair.
CrossMoments cross_moments(const OracleDistribution& oracle, int k, int k2);

/// Exact Sigma (hazard, diagonal) and Sigma_c (coverage) matrices.
OracleCovariances covariance_matrices(const OracleDistribution& oracle);

/// Estimates on `replicates` fresh datasets of size n and compares the
/// empirical moments, bands and covariances against the exact ones.
ReplicationReport replication_study(const OracleDistribution& oracle, long n, long replicates,
                                    std::uint64_t seed);

}  // namespace trustcf
