#pragma once

#include <string>
#include <vector>

#include "trustcf/depreciation.hpp"
#include "trustcf/hazard.hpp"

namespace trustcf {

/// Lease still alive at the valuation date.
struct LeaseContract {
    std::string id;
    double monthly_payment = 0.0;  ///< R, received at the end of each surviving month
    double vehicle_value = 0.0;    ///< V, the vehicle's value at origination
    int age = 0;                   ///< months since origination at the valuation date
};

/// The active contracts backing one trust, all under a common window.
struct Portfolio {
    SupportWindow window;
    std::vector<LeaseContract> contracts;
};

enum class TailDirection { upper, lower };

struct ContractPrice {
    std::string id;
    double apv = 0.0;
    double variance = 0.0;
    double sd = 0.0;
};

/// Valuation of the whole trust plus its per-contract breakdown.
struct PriceReport {
    double apv_trust = 0.0;
    double var_trust = 0.0;
    double sd_trust = 0.0;
    double rate = 0.0;
    double cte = 0.0;    ///< conditional tail expectation under the normal approximation
    double alpha = 0.0;  ///< tail probability used for the CTE
    TailDirection tail = TailDirection::upper;
    bool has_cte = false;
    std::vector<ContractPrice> contracts;
};

/// Present value realized if the contract terminates k months from now.
///
/// The lessee pays R at months 1..k; at termination the trust also receives
/// the vehicle's residual value Z(a + k - 1) * V, discounted k months.  The
/// vehicle is sold in the month before the final payment lands, so the
/// residual ratio is evaluated at age a + k - 1.
///
/// k must be >= 1; when max_remaining > 0 it is the largest admissible k
/// (typically xi - a under a fitted model) and larger k throws.
/// r = 0 is evaluated without discount factors.
double pv_realized(const LeaseContract& contract, const DepreciationCurve& curve, double rate,
                   int k, int max_remaining = 0);

/// Expected present value of the contract's remaining cash flows under the
/// model's remaining-lifetime distribution.
double apv_contract(const LeaseContract& contract, const HazardModel& model,
                    const DepreciationCurve& curve, double rate);

/// Variance of the contract's present value under the same distribution.
double var_pv_contract(const LeaseContract& contract, const HazardModel& model,
                       const DepreciationCurve& curve, double rate);

/// Prices every contract and aggregates: the trust APV is the sum of contract
/// APVs and, contracts being independent, the trust variance is the sum of
/// contract variances.  Throws with the contract id when one cannot be priced.
/// The returned report carries no CTE; see attach_cte.
PriceReport price_trust(const Portfolio& portfolio, const HazardModel& model,
                        const DepreciationCurve& curve, double rate);

/// Tail expectation of a normal: mean of the worst alpha-fraction of outcomes.
/// upper: E[X | X > q_{1-alpha}] = mu + sigma * pdf(z_{1-alpha}) / alpha,
/// lower: E[X | X < q_{alpha}]   = mu - sigma * pdf(z_{1-alpha}) / alpha.
/// alpha in (0, 1); sigma = 0 returns mu.
double cte_normal(double mu, double sigma, double alpha, TailDirection tail);

/// Fills the report's CTE fields using the normal approximation to the trust.
void attach_cte(PriceReport& report, double alpha, TailDirection tail);

}  // namespace trustcf
