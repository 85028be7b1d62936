#include "trustcf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "trustcf/stats.hpp"

namespace trustcf {

namespace {

double pmf_sum(const std::vector<double>& pmf) {
    double s = 0.0;
    for (double v : pmf) s += v;
    return s;
}

int sample_pmf(const std::vector<double>& pmf, int first, double u) {
    double cum = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        cum += pmf[i];
        if (cum >= u) return first + static_cast<int>(i);
    }
    return first + static_cast<int>(pmf.size()) - 1;
}

}  // namespace

double OracleDistribution::px(int x) const {
    int i = x - (window.delta + 1);
    if (i < 0 || i >= static_cast<int>(pmf_x.size())) return 0.0;
    return pmf_x[static_cast<std::size_t>(i)];
}

double OracleDistribution::py(int y) const {
    int i = y - (window.delta + 1);
    if (i < 0 || i >= static_cast<int>(pmf_y.size())) return 0.0;
    return pmf_y[static_cast<std::size_t>(i)];
}

double OracleDistribution::x_tail(int x) const {
    double s = 0.0;
    for (int k = std::max(x, window.delta + 1); k <= window.omega; ++k) s += px(k);
    return s;
}

double OracleDistribution::y_between(int lo, int hi) const {
    double s = 0.0;
    for (int y = std::max(lo, window.delta + 1); y <= std::min(hi, window.m + window.delta); ++y)
        s += py(y);
    return s;
}

OracleDistribution make_oracle(const SupportWindow& window, std::vector<double> pmf_x,
                               std::vector<double> pmf_y) {
    if (pmf_x.size() != static_cast<std::size_t>(window.omega - window.delta))
        throw std::invalid_argument("oracle: pmf_x must cover {delta+1, ..., omega}");
    if (pmf_y.size() != static_cast<std::size_t>(window.m))
        throw std::invalid_argument("oracle: pmf_y must cover {delta+1, ..., m+delta}");
    for (double v : pmf_x)
        if (v < 0.0) throw std::invalid_argument("oracle: negative pmf_x entry");
    for (double v : pmf_y)
        if (v < 0.0) throw std::invalid_argument("oracle: negative pmf_y entry");
    if (std::fabs(pmf_sum(pmf_x) - 1.0) > 1e-9)
        throw std::invalid_argument("oracle: pmf_x does not sum to 1");
    if (std::fabs(pmf_sum(pmf_y) - 1.0) > 1e-9)
        throw std::invalid_argument("oracle: pmf_y does not sum to 1");

    OracleDistribution oracle;
    oracle.window = window;
    oracle.pmf_x = std::move(pmf_x);
    oracle.pmf_y = std::move(pmf_y);

    double alpha = 0.0;
    for (int y = window.delta + 1; y <= window.m + window.delta; ++y)
        alpha += oracle.py(y) * oracle.x_tail(y);
    oracle.alpha_accept = alpha;
    if (!(alpha > 0.0))
        throw std::invalid_argument("oracle: Pr(X >= Y) is zero; nothing is observable");
    return oracle;
}

OracleDistribution make_truncated_geometric(const SupportWindow& window, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("truncated geometric: p must lie in (0, 1), got " +
                                    std::to_string(p));
    const int len = window.omega - window.delta;
    std::vector<double> pmf_x(static_cast<std::size_t>(len));
    double tail = 1.0;
    for (int i = 0; i < len - 1; ++i) {
        pmf_x[static_cast<std::size_t>(i)] = p * tail;
        tail *= 1.0 - p;
    }
    pmf_x[static_cast<std::size_t>(len - 1)] = tail;  // terminal lump at omega

    std::vector<double> pmf_y(static_cast<std::size_t>(window.m),
                              1.0 / static_cast<double>(window.m));
    return make_oracle(window, std::move(pmf_x), std::move(pmf_y));
}

std::vector<ObservationTriple> generate_dataset(const OracleDistribution& oracle, long n,
                                                Rng& rng) {
    if (n < 1) throw std::invalid_argument("generate_dataset: n must be >= 1");
    const SupportWindow& w = oracle.window;
    std::vector<ObservationTriple> out;
    out.reserve(static_cast<std::size_t>(n));
    while (static_cast<long>(out.size()) < n) {
        int x = sample_pmf(oracle.pmf_x, w.delta + 1, rng.uniform01());
        int y = sample_pmf(oracle.pmf_y, w.delta + 1, rng.uniform01());
        if (x < y) continue;  // pair never enters the observed pool
        ObservationTriple o;
        o.y = y;
        if (w.censoring_active && x > y + w.tau) {
            o.t = y + w.tau;
            o.event = false;
        } else {
            o.t = x;
            o.event = true;
        }
        out.push_back(o);
    }
    return out;
}

OracleTruth true_conditional_quantities(const OracleDistribution& oracle) {
    const SupportWindow& w = oracle.window;
    OracleTruth truth;
    for (int x = w.delta + 1; x <= w.xi; ++x) {
        // Age x is inside a contract's observation interval when its entry
        // age satisfies x - tau <= Y <= x; with censoring inactive any entry
        // at or before x qualifies.
        double y_cov = w.censoring_active ? oracle.y_between(x - w.tau, x)
                                          : oracle.y_between(w.delta + 1, x);
        double c = y_cov * oracle.x_tail(x) / oracle.alpha_accept;
        double f = y_cov * oracle.px(x) / oracle.alpha_accept;
        truth.ages.push_back(x);
        truth.c_tau.push_back(c);
        truth.f_star_tau.push_back(f);
        truth.lambda_tau.push_back(c > 0.0 ? f / c : 0.0);
    }
    return truth;
}

CrossMoments cross_moments(const OracleDistribution& oracle, int k, int k2) {
    const SupportWindow& w = oracle.window;
    if (!w.contains(k) || !w.contains(k2))
        throw std::invalid_argument("cross_moments: ages must lie in the support");
    const int lo = std::min(k, k2);
    const int hi = std::max(k, k2);
    double y_cov = w.censoring_active ? oracle.y_between(hi - w.tau, lo)
                                      : oracle.y_between(w.delta + 1, lo);
    CrossMoments cm;
    cm.c_tau = oracle.x_tail(hi) * y_cov / oracle.alpha_accept;
    cm.r_tau = oracle.px(hi) * y_cov / oracle.alpha_accept;
    return cm;
}

OracleCovariances covariance_matrices(const OracleDistribution& oracle) {
    const OracleTruth truth = true_conditional_quantities(oracle);
    const std::size_t size = truth.ages.size();

    OracleCovariances cov;
    cov.ages = truth.ages;
    cov.sigma_diag.resize(size);
    cov.sigma_c.assign(size, std::vector<double>(size, 0.0));

    for (std::size_t i = 0; i < size; ++i) {
        double f = truth.f_star_tau[i];
        double c = truth.c_tau[i];
        cov.sigma_diag[i] = c > 0.0 ? f * (c - f) / (c * c * c) : 0.0;
        for (std::size_t j = 0; j < size; ++j) {
            if (i == j) {
                cov.sigma_c[i][j] = c * (1.0 - c);
            } else {
                CrossMoments cm = cross_moments(oracle, truth.ages[i], truth.ages[j]);
                cov.sigma_c[i][j] = cm.c_tau - truth.c_tau[i] * truth.c_tau[j];
            }
        }
    }
    return cov;
}

ReplicationReport replication_study(const OracleDistribution& oracle, long n, long replicates,
                                    std::uint64_t seed) {
    if (replicates < 2)
        throw std::invalid_argument("replication_study: need at least 2 replicates");
    const SupportWindow& w = oracle.window;
    const OracleTruth truth = true_conditional_quantities(oracle);
    const OracleCovariances cov = covariance_matrices(oracle);
    const std::size_t size = truth.ages.size();
    const std::size_t reps = static_cast<std::size_t>(replicates);

    std::vector<std::vector<double>> lambda_draws(size, std::vector<double>(reps));
    std::vector<std::vector<double>> c_draws(size, std::vector<double>(reps));

    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng = Rng::substream(seed, r, 0);
        std::vector<ObservationTriple> data = generate_dataset(oracle, n, rng);
        HazardModel model = estimate_hazard(data, w);
        for (std::size_t i = 0; i < size; ++i) {
            lambda_draws[i][r] = model.lambda[i];
            c_draws[i][r] = model.c_hat[i];
        }
    }

    ReplicationReport rep;
    rep.ages = truth.ages;
    rep.n = n;
    rep.replicates = replicates;
    rep.seed = seed;
    rep.lambda_true = truth.lambda_tau;
    rep.emp_mean.resize(size);
    rep.emp_var.resize(size);
    rep.theory_var.resize(size);
    rep.emp_lo.resize(size);
    rep.emp_hi.resize(size);
    rep.theo_lo.resize(size);
    rep.theo_hi.resize(size);
    rep.lambda_corr.assign(size, std::vector<double>(size, 0.0));
    rep.c_emp_cov.assign(size, std::vector<double>(size, 0.0));
    rep.c_theory_cov.assign(size, std::vector<double>(size, 0.0));

    const double z975 = normal_quantile(0.975);
    for (std::size_t i = 0; i < size; ++i) {
        rep.emp_mean[i] = mean(lambda_draws[i]);
        rep.emp_var[i] = sample_variance(lambda_draws[i]);
        rep.theory_var[i] = cov.sigma_diag[i] / static_cast<double>(n);
        double half = z975 * std::sqrt(rep.theory_var[i]);
        rep.theo_lo[i] = truth.lambda_tau[i] - half;
        rep.theo_hi[i] = truth.lambda_tau[i] + half;
        std::vector<double> sorted = lambda_draws[i];
        std::sort(sorted.begin(), sorted.end());
        rep.emp_lo[i] = percentile_nearest_rank(sorted, 2.5);
        rep.emp_hi[i] = percentile_nearest_rank(sorted, 97.5);

        double var_rel = rep.theory_var[i] > 0.0
                             ? std::fabs(rep.emp_var[i] / rep.theory_var[i] - 1.0)
                             : 0.0;
        rep.max_var_rel_err = std::max(rep.max_var_rel_err, var_rel);
        if (rep.theo_lo[i] != 0.0)
            rep.max_band_rel_err =
                std::max(rep.max_band_rel_err,
                         std::fabs(rep.emp_lo[i] - rep.theo_lo[i]) / std::fabs(rep.theo_lo[i]));
        if (rep.theo_hi[i] != 0.0)
            rep.max_band_rel_err =
                std::max(rep.max_band_rel_err,
                         std::fabs(rep.emp_hi[i] - rep.theo_hi[i]) / std::fabs(rep.theo_hi[i]));
    }

    // Empirical second moments: correlations of lambda_hat, covariances of c_hat.
    // The theory matrix is filled up front: the z-score denominator below reads
    // its diagonal for both indices, including ones this loop has not reached.
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            rep.c_theory_cov[i][j] = cov.sigma_c[i][j] / static_cast<double>(n);

    std::vector<double> c_mean(size);
    for (std::size_t i = 0; i < size; ++i) c_mean[i] = mean(c_draws[i]);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < reps; ++r)
                s += (c_draws[i][r] - c_mean[i]) * (c_draws[j][r] - c_mean[j]);
            rep.c_emp_cov[i][j] = s / static_cast<double>(reps - 1);

            // MC standard error of a sample covariance, normal approximation.
            double se = std::sqrt((rep.c_theory_cov[i][i] * rep.c_theory_cov[j][j] +
                                   rep.c_theory_cov[i][j] * rep.c_theory_cov[i][j]) /
                                  static_cast<double>(reps));
            if (se > 0.0)
                rep.max_c_cov_z = std::max(
                    rep.max_c_cov_z, std::fabs(rep.c_emp_cov[i][j] - rep.c_theory_cov[i][j]) / se);

            if (i != j) {
                double si = std::sqrt(rep.emp_var[i]);
                double sj = std::sqrt(rep.emp_var[j]);
                double corr_s = 0.0;
                for (std::size_t r = 0; r < reps; ++r)
                    corr_s += (lambda_draws[i][r] - rep.emp_mean[i]) *
                              (lambda_draws[j][r] - rep.emp_mean[j]);
                corr_s /= static_cast<double>(reps - 1);
                double corr = (si > 0.0 && sj > 0.0) ? corr_s / (si * sj) : 0.0;
                rep.lambda_corr[i][j] = corr;
                rep.max_offdiag_corr = std::max(rep.max_offdiag_corr, std::fabs(corr));
            } else {
                rep.lambda_corr[i][j] = 1.0;
            }
        }
    }
    return rep;
}

}  // namespace trustcf
