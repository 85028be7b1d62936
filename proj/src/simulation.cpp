#include "trustcf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "trustcf/stats.hpp"

namespace trustcf {

namespace {

// Stream index reserved for the per-replicate hazard redraw; contract streams
// use their position in the portfolio.
constexpr std::uint64_t kHazardStream = 0xffffffffffffffffULL;

void check_simulation_inputs(const Portfolio& portfolio, const HazardModel& model,
                             const SimulationConfig& config) {
    if (portfolio.contracts.empty())
        throw std::invalid_argument("simulate: empty portfolio");
    if (config.replicates < 1)
        throw std::invalid_argument("simulate: replicates must be >= 1");
    for (double p : config.percentiles)
        if (p < 0.0 || p > 100.0)
            throw std::invalid_argument("simulate: percentile outside [0, 100]");
    for (const LeaseContract& c : portfolio.contracts) {
        if (c.age < model.window.delta || c.age >= model.window.xi)
            throw std::invalid_argument("simulate: contract " + c.id + ": age " +
                                        std::to_string(c.age) +
                                        " has no remaining lifetime under the model");
    }
}

// Remaining-lifetime CDFs for the distinct contract ages in the portfolio;
// rebuilt per replicate when the hazard vector is redrawn.
class TerminationSampler {
  public:
    TerminationSampler(const HazardModel& model, const Portfolio& portfolio) {
        for (const LeaseContract& c : portfolio.contracts) {
            auto [it, inserted] = cdf_.try_emplace(c.age);
            if (!inserted) continue;
            std::vector<double> pmf = remaining_lifetime_pmf(model, c.age);
            it->second.resize(pmf.size());
            double cum = 0.0;
            for (std::size_t i = 0; i < pmf.size(); ++i) {
                cum += pmf[i];
                it->second[i] = cum;
            }
        }
    }

    /// Smallest k with CDF(k) >= u; the last index absorbs rounding slack.
    int sample(int age, double u) const {
        const std::vector<double>& cdf = cdf_.at(age);
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) return static_cast<int>(cdf.size());
        return static_cast<int>(it - cdf.begin()) + 1;
    }

  private:
    std::map<int, std::vector<double>> cdf_;
};

}  // namespace

int sample_termination(const HazardModel& model, int age, double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument("sample_termination: u must lie in [0, 1)");
    const std::vector<double> pmf = remaining_lifetime_pmf(model, age);
    double cum = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        cum += pmf[i];
        if (cum >= u) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(pmf.size());  // guards the k = xi - age boundary against rounding
}

HazardModel sample_hazard_vector(const HazardModel& model, const HazardCovariance& covariance,
                                 Rng& rng) {
    if (covariance.n <= 0)
        throw std::invalid_argument("sample_hazard_vector: covariance lacks a sample size");
    if (!covariance.fully_defined()) {
        std::string ages;
        for (int a : covariance.undefined_ages) ages += " " + std::to_string(a);
        throw std::invalid_argument(
            "sample_hazard_vector: variance undefined at ages" + ages +
            "; interpolate zero hazards or refit before sampling");
    }
    if (covariance.diag.size() != model.lambda.size())
        throw std::invalid_argument("sample_hazard_vector: covariance does not match model");

    std::vector<double> lambda(model.lambda.size());
    const double n = static_cast<double>(covariance.n);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        double sd = std::sqrt(covariance.diag[i] / n);
        double draw = model.lambda[i] + sd * rng.normal01();
        lambda[i] = std::min(1.0, std::max(0.0, draw));
    }
    return make_analytic_model(model.window, std::move(lambda));
}

BandMatrix simulate_trust(const Portfolio& portfolio, const HazardModel& model,
                          const DepreciationCurve& curve, const SimulationConfig& config) {
    check_simulation_inputs(portfolio, model, config);
    if (config.horizon < 1)
        throw std::invalid_argument("simulate_trust: horizon must be >= 1");

    HazardCovariance covariance;
    if (config.random_hazard) covariance = asymptotic_covariance(model);
    TerminationSampler base_sampler(model, portfolio);

    const std::size_t horizon = static_cast<std::size_t>(config.horizon);
    const std::size_t reps = static_cast<std::size_t>(config.replicates);
    // months[t] collects the month t+1 trust total over replicates
    std::vector<std::vector<double>> months(horizon, std::vector<double>(reps, 0.0));

    for (std::size_t rep = 0; rep < reps; ++rep) {
        const TerminationSampler* sampler = &base_sampler;
        std::unique_ptr<TerminationSampler> redrawn;
        if (config.random_hazard) {
            Rng rng = Rng::substream(config.seed, rep, kHazardStream);
            HazardModel draw = sample_hazard_vector(model, covariance, rng);
            redrawn = std::make_unique<TerminationSampler>(draw, portfolio);
            sampler = redrawn.get();
        }
        for (std::size_t ci = 0; ci < portfolio.contracts.size(); ++ci) {
            const LeaseContract& c = portfolio.contracts[ci];
            Rng rng = Rng::substream(config.seed, rep, ci);
            int k = sampler->sample(c.age, rng.uniform01());
            // R lands in months 1..k, the residual in month k.
            for (int t = 1; t <= k && t <= config.horizon; ++t)
                months[static_cast<std::size_t>(t - 1)][rep] += c.monthly_payment;
            if (k <= config.horizon)
                months[static_cast<std::size_t>(k - 1)][rep] +=
                    curve.at(c.age + k - 1) * c.vehicle_value;
        }
    }

    BandMatrix bands;
    bands.horizon = config.horizon;
    bands.percentiles = config.percentiles;
    bands.mean_row.resize(horizon);
    bands.rows.assign(config.percentiles.size(), std::vector<double>(horizon));
    for (std::size_t t = 0; t < horizon; ++t) {
        bands.mean_row[t] = mean(months[t]);
        std::sort(months[t].begin(), months[t].end());
        for (std::size_t p = 0; p < config.percentiles.size(); ++p)
            bands.rows[p][t] = percentile_nearest_rank(months[t], config.percentiles[p]);
    }
    return bands;
}

ApvEmpirics simulate_apv_distribution(const Portfolio& portfolio, const HazardModel& model,
                                      const DepreciationCurve& curve, double rate,
                                      const SimulationConfig& config, double alpha,
                                      TailDirection tail) {
    check_simulation_inputs(portfolio, model, config);
    if (rate < 0.0) throw std::invalid_argument("simulate_apv_distribution: negative rate");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("simulate_apv_distribution: alpha must lie in (0, 1)");

    HazardCovariance covariance;
    if (config.random_hazard) covariance = asymptotic_covariance(model);
    TerminationSampler base_sampler(model, portfolio);

    const std::size_t reps = static_cast<std::size_t>(config.replicates);
    ApvEmpirics out;
    out.values.resize(reps);

    for (std::size_t rep = 0; rep < reps; ++rep) {
        const TerminationSampler* sampler = &base_sampler;
        std::unique_ptr<TerminationSampler> redrawn;
        if (config.random_hazard) {
            Rng rng = Rng::substream(config.seed, rep, kHazardStream);
            HazardModel draw = sample_hazard_vector(model, covariance, rng);
            redrawn = std::make_unique<TerminationSampler>(draw, portfolio);
            sampler = redrawn.get();
        }
        double total = 0.0;
        for (std::size_t ci = 0; ci < portfolio.contracts.size(); ++ci) {
            const LeaseContract& c = portfolio.contracts[ci];
            Rng rng = Rng::substream(config.seed, rep, ci);
            int k = sampler->sample(c.age, rng.uniform01());
            total += pv_realized(c, curve, rate, k);
        }
        out.values[rep] = total;
    }

    std::vector<double> sorted = out.values;
    std::sort(sorted.begin(), sorted.end());
    out.mean = mean(sorted);
    out.median = percentile_nearest_rank(sorted, 50.0);
    out.sd = std::sqrt(sample_variance(sorted));
    out.alpha = alpha;
    out.tail = tail;
    out.replicates = config.replicates;
    out.seed = config.seed;

    // Empirical CTE: mean of the worst alpha-fraction (ceil(alpha n) values).
    std::size_t tail_count = static_cast<std::size_t>(
        std::ceil(alpha * static_cast<double>(reps)));
    if (tail_count < 1) tail_count = 1;
    if (tail_count > reps) tail_count = reps;
    double tail_sum = 0.0;
    if (tail == TailDirection::upper) {
        for (std::size_t i = reps - tail_count; i < reps; ++i) tail_sum += sorted[i];
    } else {
        for (std::size_t i = 0; i < tail_count; ++i) tail_sum += sorted[i];
    }
    out.cte = tail_sum / static_cast<double>(tail_count);
    return out;
}

}  // namespace trustcf
