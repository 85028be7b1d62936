#pragma once

#include <cstdint>
#include <vector>

#include "trustcf/pricing.hpp"
#include "trustcf/rng.hpp"

namespace trustcf {

struct SimulationConfig {
    long replicates = 1000;
    std::uint64_t seed = 0;
    int horizon = 0;             ///< months of trust cash flow to report
    bool random_hazard = false;  ///< redraw the hazard vector each replicate
    std::vector<double> percentiles = {2.5, 97.5};
};

/// Per-month trust cash flow summary across replicates.
/// rows[p][t] is the `percentiles[p]` percentile of month t+1's total.
struct BandMatrix {
    int horizon = 0;
    std::vector<double> percentiles;
    std::vector<double> mean_row;
    std::vector<std::vector<double>> rows;
};

/// Empirical distribution of the simulated trust present value.
struct ApvEmpirics {
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    double cte = 0.0;
    double alpha = 0.0;
    TailDirection tail = TailDirection::upper;
    long replicates = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;  ///< one simulated trust PV per replicate, kept for audit
};

/// Smallest k >= 1 with Pr(K <= k) >= u under the remaining-lifetime pmf of a
/// contract aged `age`; u in [0, 1).  Every u maps to some k <= xi - age.
int sample_termination(const HazardModel& model, int age, double u);

/// Draws a hazard vector with independent components
/// lambda*(x) ~ Normal(lambda(x), diag(x)/n), clamped to [0, 1], and returns
/// it as an analytic model on the same window.  Requires the covariance to be
/// defined at every supported age.
HazardModel sample_hazard_vector(const HazardModel& model, const HazardCovariance& covariance,
                                 Rng& rng);

/// Simulates the trust's monthly cash flow: each replicate draws one
/// termination month per contract, pays R up to termination and the residual
/// Z(a + k - 1) V in month k, then sums across contracts per calendar month.
/// Returns per-month means and nearest-rank percentile bands.
///
/// With config.random_hazard the hazard vector is redrawn per replicate from
/// its large-sample distribution (requires an estimated model whose
/// covariance is defined everywhere).
BandMatrix simulate_trust(const Portfolio& portfolio, const HazardModel& model,
                          const DepreciationCurve& curve, const SimulationConfig& config);

/// Simulates the distribution of the trust present value at `rate`: each
/// replicate draws one termination month per contract and discounts that
/// realized cash flow.  alpha and tail select the empirical CTE, the mean of
/// the worst alpha-fraction of replicates.
ApvEmpirics simulate_apv_distribution(const Portfolio& portfolio, const HazardModel& model,
                                      const DepreciationCurve& curve, double rate,
                                      const SimulationConfig& config, double alpha = 0.05,
                                      TailDirection tail = TailDirection::upper);

}  // namespace trustcf
