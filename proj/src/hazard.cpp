#include "trustcf/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace trustcf {

namespace {

std::string triple_text(const ObservationTriple& o, std::size_t i) {
    return "observation #" + std::to_string(i) + " (y=" + std::to_string(o.y) +
           ", t=" + std::to_string(o.t) + ", event=" + (o.event ? "true" : "false") + ")";
}

void check_support_sizes(const SupportWindow& w, std::size_t got) {
    if (got != static_cast<std::size_t>(w.support_size()))
        throw std::invalid_argument("hazard model: expected " +
                                    std::to_string(w.support_size()) +
                                    " support entries, got " + std::to_string(got));
}

}  // namespace

int HazardModel::index_of(int age) const {
    if (!window.contains(age))
        throw std::invalid_argument("hazard model: age " + std::to_string(age) +
                                    " outside support {" + std::to_string(window.delta + 1) +
                                    ", ..., " + std::to_string(window.xi) + "}");
    return age - (window.delta + 1);
}

double HazardCovariance::variance_at(int age) const {
    if (!window.contains(age))
        throw std::invalid_argument("hazard covariance: age " + std::to_string(age) +
                                    " outside support");
    double d = diag[static_cast<std::size_t>(age - (window.delta + 1))];
    if (std::isnan(d))
        throw std::invalid_argument("hazard covariance: variance undefined at age " +
                                    std::to_string(age) + " (empty risk set)");
    return d / static_cast<double>(n);
}

HazardModel make_constant_hazard_model(const SupportWindow& window, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("constant hazard: p must lie in [0, 1], got " +
                                    std::to_string(p));
    return make_analytic_model(window,
                               std::vector<double>(static_cast<std::size_t>(window.support_size()), p));
}

HazardModel make_analytic_model(const SupportWindow& window, std::vector<double> lambda) {
    check_support_sizes(window, lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (!(lambda[i] >= 0.0 && lambda[i] <= 1.0))
            throw std::invalid_argument("analytic model: hazard at age " +
                                        std::to_string(window.delta + 1 + static_cast<int>(i)) +
                                        " outside [0, 1]");
    HazardModel model;
    model.window = window;
    model.f_hat = lambda;  // keeps lambda = f_hat / c_hat with c_hat = 1
    model.c_hat.assign(lambda.size(), 1.0);
    model.lambda = std::move(lambda);
    model.n = 0;
    return model;
}

HazardModel estimate_hazard(const std::vector<ObservationTriple>& observations,
                            const SupportWindow& w) {
    if (observations.empty())
        throw std::invalid_argument("estimate_hazard: no observations");

    const std::size_t size = static_cast<std::size_t>(w.support_size());
    std::vector<long> events(size, 0);
    std::vector<long> risk_diff(size + 1, 0);

    for (std::size_t i = 0; i < observations.size(); ++i) {
        const ObservationTriple& o = observations[i];
        if (o.y < w.delta + 1 || o.y > w.m + w.delta)
            throw std::invalid_argument("estimate_hazard: entry age out of range in " +
                                        triple_text(o, i));
        if (o.y > w.xi)
            // A contract entering beyond xi could never be seen alive.
            throw std::invalid_argument(
                "estimate_hazard: entry age beyond the observable support in " +
                triple_text(o, i));
        if (o.t < o.y)
            throw std::invalid_argument("estimate_hazard: t < y in " + triple_text(o, i));
        if (o.event) {
            if (o.t > w.xi)
                throw std::invalid_argument("estimate_hazard: termination beyond xi=" +
                                            std::to_string(w.xi) + " in " + triple_text(o, i));
            if (w.censoring_active && o.t > o.y + w.tau)
                throw std::invalid_argument(
                    "estimate_hazard: termination after the cohort's censoring age in " +
                    triple_text(o, i));
            events[static_cast<std::size_t>(o.t - (w.delta + 1))] += 1;
        } else {
            if (!w.censoring_active)
                throw std::invalid_argument(
                    "estimate_hazard: censored record in a window without censoring: " +
                    triple_text(o, i));
            if (o.t != o.y + w.tau)
                throw std::invalid_argument("estimate_hazard: censored record must have t = y + "
                                            "tau = " +
                                            std::to_string(o.y + w.tau) + " in " +
                                            triple_text(o, i));
            if (o.t >= w.omega)
                // Alive at omega is impossible: such cohorts are fully observed.
                throw std::invalid_argument(
                    "estimate_hazard: censored at or beyond the maximum lifetime in " +
                    triple_text(o, i));
        }
        // Risk-set membership y <= x <= t via a difference array.
        risk_diff[static_cast<std::size_t>(o.y - (w.delta + 1))] += 1;
        std::size_t end = static_cast<std::size_t>(o.t - (w.delta + 1)) + 1;
        if (end <= size) risk_diff[end] -= 1;
    }

    HazardModel model;
    model.window = w;
    model.n = static_cast<long>(observations.size());
    model.lambda.resize(size);
    model.f_hat.resize(size);
    model.c_hat.resize(size);

    const double n = static_cast<double>(model.n);
    long at_risk = 0;
    for (std::size_t i = 0; i < size; ++i) {
        at_risk += risk_diff[i];
        model.f_hat[i] = static_cast<double>(events[i]) / n;
        model.c_hat[i] = static_cast<double>(at_risk) / n;
        model.lambda[i] = at_risk > 0 ? model.f_hat[i] / model.c_hat[i] : 0.0;
    }
    return model;
}

std::vector<int> unobserved_ages(const HazardModel& model) {
    std::vector<int> ages;
    for (std::size_t i = 0; i < model.c_hat.size(); ++i)
        if (model.c_hat[i] == 0.0) ages.push_back(model.window.delta + 1 + static_cast<int>(i));
    return ages;
}

double survival_function(const HazardModel& model, int x) {
    const SupportWindow& w = model.window;
    if (x < w.delta + 1 || x > w.xi + 1)
        throw std::invalid_argument("survival_function: x must lie in {" +
                                    std::to_string(w.delta + 1) + ", ..., " +
                                    std::to_string(w.xi + 1) + "}, got " + std::to_string(x));
    double s = 1.0;
    for (int k = w.delta + 1; k < x; ++k) s *= 1.0 - model.lambda_at(k);
    return s;
}

std::vector<double> remaining_lifetime_pmf(const HazardModel& model, int a) {
    const SupportWindow& w = model.window;
    if (a < w.delta || a >= w.xi)
        throw std::invalid_argument("remaining_lifetime_pmf: age must satisfy " +
                                    std::to_string(w.delta) + " <= a < " + std::to_string(w.xi) +
                                    ", got " + std::to_string(a));
    const int len = w.xi - a;
    std::vector<double> pmf(static_cast<std::size_t>(len));
    double alive = 1.0;  // prod_{j<k} (1 - lambda(a+j)), conditioned on survival past a
    for (int k = 1; k < len; ++k) {
        pmf[static_cast<std::size_t>(k - 1)] = alive * model.lambda_at(a + k);
        alive *= 1.0 - model.lambda_at(a + k);
    }
    pmf[static_cast<std::size_t>(len - 1)] = alive;  // terminal lump keeps total mass at 1
    return pmf;
}

HazardCovariance asymptotic_covariance(const HazardModel& model) {
    if (model.n <= 0)
        throw std::invalid_argument(
            "asymptotic_covariance: requires an estimated model (n > 0)");
    HazardCovariance cov;
    cov.window = model.window;
    cov.n = model.n;
    cov.diag.resize(model.lambda.size());
    for (std::size_t i = 0; i < model.lambda.size(); ++i) {
        double f = model.f_hat[i];
        double c = model.c_hat[i];
        if (c > 0.0) {
            cov.diag[i] = f * (c - f) / (c * c * c);
        } else {
            cov.diag[i] = std::numeric_limits<double>::quiet_NaN();
            cov.undefined_ages.push_back(model.window.delta + 1 + static_cast<int>(i));
        }
    }
    return cov;
}

HazardModel extend_tail_geometric(const HazardModel& model) {
    const SupportWindow& w = model.window;
    if (w.xi == w.omega) return model;

    double last = model.lambda.back();
    if (!(last > 0.0))
        throw std::invalid_argument(
            "extend_tail_geometric: hazard at xi is zero; interpolate or refit before "
            "extending");

    HazardModel out = model;
    out.window.xi = w.omega;  // support now runs to the contractual maximum
    for (int x = w.xi + 1; x <= w.omega; ++x) {
        out.lambda.push_back(x == w.omega ? 1.0 : last);
        out.f_hat.push_back(0.0);  // appended ages carry no data
        out.c_hat.push_back(0.0);
    }
    return out;
}

HazardModel interpolate_zero_hazards(const HazardModel& model) {
    const std::size_t size = model.lambda.size();
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < size; ++i)
        if (model.lambda[i] > 0.0) nonzero.push_back(i);
    if (nonzero.empty())
        throw std::invalid_argument("interpolate_zero_hazards: every hazard is zero");

    HazardModel out = model;
    for (std::size_t i = 0; i < size; ++i) {
        if (model.lambda[i] > 0.0) continue;
        if (i < nonzero.front()) {
            out.lambda[i] = model.lambda[nonzero.front()];  // leading run: nearest carry
        } else if (i > nonzero.back()) {
            out.lambda[i] = model.lambda[nonzero.back()];  // trailing run: nearest carry
        } else {
            auto hi = std::upper_bound(nonzero.begin(), nonzero.end(), i);
            std::size_t right = *hi;
            std::size_t left = *(hi - 1);
            double t = static_cast<double>(i - left) / static_cast<double>(right - left);
            out.lambda[i] = (1.0 - t) * model.lambda[left] + t * model.lambda[right];
        }
        // Keep the plug-in relation where a risk set exists so the variance
        // formula reflects the interpolated hazard.
        if (out.c_hat[i] > 0.0) out.f_hat[i] = out.lambda[i] * out.c_hat[i];
    }
    return out;
}

}  // namespace trustcf
