#include "trustcf/pricing.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "trustcf/stats.hpp"

namespace trustcf {

namespace {

void check_contract(const LeaseContract& c) {
    if (c.monthly_payment < 0.0)
        throw std::invalid_argument("contract " + c.id + ": negative monthly payment");
    if (c.vehicle_value < 0.0)
        throw std::invalid_argument("contract " + c.id + ": negative vehicle value");
}

void check_age(const LeaseContract& c, const HazardModel& model) {
    const SupportWindow& w = model.window;
    if (c.age < w.delta || c.age >= w.xi)
        throw std::invalid_argument("contract " + c.id + ": age " + std::to_string(c.age) +
                                    " has no remaining lifetime under the model (support ends "
                                    "at " +
                                    std::to_string(w.xi) + "); extend the tail or refit");
}

}  // namespace

double pv_realized(const LeaseContract& contract, const DepreciationCurve& curve, double rate,
                   int k, int max_remaining) {
    check_contract(contract);
    if (rate < 0.0) throw std::invalid_argument("pv_realized: negative rate");
    if (k < 1) throw std::invalid_argument("pv_realized: k must be >= 1, got " + std::to_string(k));
    if (max_remaining > 0 && k > max_remaining)
        throw std::invalid_argument("pv_realized: k = " + std::to_string(k) +
                                    " exceeds the remaining support " +
                                    std::to_string(max_remaining));

    const double residual = curve.at(contract.age + k - 1) * contract.vehicle_value;
    if (rate == 0.0) return static_cast<double>(k) * contract.monthly_payment + residual;

    const double v = 1.0 / (1.0 + rate);
    // Annuity of R over k months plus the discounted residual.
    double annuity = contract.monthly_payment * (1.0 - std::pow(v, k)) / rate;
    return annuity + residual * std::pow(v, k);
}

double apv_contract(const LeaseContract& contract, const HazardModel& model,
                    const DepreciationCurve& curve, double rate) {
    check_contract(contract);
    check_age(contract, model);
    if (rate < 0.0) throw std::invalid_argument("apv_contract: negative rate");

    const std::vector<double> pmf = remaining_lifetime_pmf(model, contract.age);

    if (rate == 0.0) {
        double apv = 0.0;
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            int k = static_cast<int>(i) + 1;
            apv += pmf[i] * pv_realized(contract, curve, 0.0, k);
        }
        return apv;
    }

    // Closed form: PV(k) = R/r + (Z(a+k-1) V - R/r) v^k, and the pmf sums to
    // one, so APV = R/r + sum_k (Z(a+k-1) V - R/r) v^k Pr(K = k).
    const double perpetuity = contract.monthly_payment / rate;
    const double v = 1.0 / (1.0 + rate);
    double apv = perpetuity;
    double vk = 1.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        int k = static_cast<int>(i) + 1;
        vk *= v;
        double residual = curve.at(contract.age + k - 1) * contract.vehicle_value;
        apv += (residual - perpetuity) * vk * pmf[i];
    }
    return apv;
}

double var_pv_contract(const LeaseContract& contract, const HazardModel& model,
                       const DepreciationCurve& curve, double rate) {
    check_contract(contract);
    check_age(contract, model);
    if (rate < 0.0) throw std::invalid_argument("var_pv_contract: negative rate");

    const std::vector<double> pmf = remaining_lifetime_pmf(model, contract.age);

    if (rate == 0.0) {
        // Direct first and second moments of PV(K) = K R + Z(a+K-1) V.
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            int k = static_cast<int>(i) + 1;
            double pv = pv_realized(contract, curve, 0.0, k);
            m1 += pmf[i] * pv;
            m2 += pmf[i] * pv * pv;
        }
        return m2 - m1 * m1;
    }

    // With W_k = (Z(a+k-1) V - R/r) v^k:  PV = R/r + W_K, so
    // Var = E[W_K^2] - (E W_K)^2 = 2 (R/r) APV - (R/r)^2 + Q - APV^2,
    // where Q = sum_k W_k^2 Pr(K = k).
    const double perpetuity = contract.monthly_payment / rate;
    const double v = 1.0 / (1.0 + rate);
    const double apv = apv_contract(contract, model, curve, rate);
    double q = 0.0;
    double vk = 1.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        int k = static_cast<int>(i) + 1;
        vk *= v;
        double residual = curve.at(contract.age + k - 1) * contract.vehicle_value;
        double w = (residual - perpetuity) * vk;
        q += w * w * pmf[i];
    }
    return 2.0 * perpetuity * apv - perpetuity * perpetuity + q - apv * apv;
}

PriceReport price_trust(const Portfolio& portfolio, const HazardModel& model,
                        const DepreciationCurve& curve, double rate) {
    if (portfolio.contracts.empty())
        throw std::invalid_argument("price_trust: empty portfolio");

    PriceReport report;
    report.rate = rate;
    report.contracts.reserve(portfolio.contracts.size());
    for (const LeaseContract& c : portfolio.contracts) {
        try {
            ContractPrice price;
            price.id = c.id;
            price.apv = apv_contract(c, model, curve, rate);
            price.variance = var_pv_contract(c, model, curve, rate);
            price.sd = std::sqrt(std::max(0.0, price.variance));
            report.apv_trust += price.apv;
            report.var_trust += price.variance;  // contracts terminate independently
            report.contracts.push_back(std::move(price));
        } catch (const std::exception& e) {
            throw std::runtime_error("price_trust: contract " + c.id + ": " + e.what());
        }
    }
    report.sd_trust = std::sqrt(std::max(0.0, report.var_trust));
    return report;
}

double cte_normal(double mu, double sigma, double alpha, TailDirection tail) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("cte_normal: alpha must lie in (0, 1), got " +
                                    std::to_string(alpha));
    if (sigma < 0.0) throw std::invalid_argument("cte_normal: negative sigma");
    if (sigma == 0.0) return mu;
    const double z = normal_quantile(1.0 - alpha);
    const double load = sigma * normal_pdf(z) / alpha;
    return tail == TailDirection::upper ? mu + load : mu - load;
}

void attach_cte(PriceReport& report, double alpha, TailDirection tail) {
    report.cte = cte_normal(report.apv_trust, report.sd_trust, alpha, tail);
    report.alpha = alpha;
    report.tail = tail;
    report.has_cte = true;
}

}  // namespace trustcf
