#include "doctest.h"
#include "trustcf/hazard.hpp"
#include "trustcf/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace trustcf;

namespace {

// Brute-force counting oracle for the estimator, written independently of the
// library's difference-array implementation.
struct BruteCounts {
    std::vector<double> f, c, lambda;
};

BruteCounts brute_estimate(const std::vector<ObservationTriple>& obs, const SupportWindow& w) {
    BruteCounts out;
    const double n = static_cast<double>(obs.size());
    for (int x = w.delta + 1; x <= w.xi; ++x) {
        long events = 0, at_risk = 0;
        for (const ObservationTriple& o : obs) {
            if (o.event && o.t == x) ++events;
            if (o.y <= x && x <= o.t) ++at_risk;
        }
        out.f.push_back(events / n);
        out.c.push_back(at_risk / n);
        out.lambda.push_back(at_risk > 0 ? static_cast<double>(events) / at_risk : 0.0);
    }
    return out;
}

std::vector<ObservationTriple> random_triples(const SupportWindow& w, int count, Rng& rng) {
    std::vector<ObservationTriple> obs;
    for (int i = 0; i < count; ++i) {
        int y = w.delta + 1 + static_cast<int>(rng.uniform01() * w.m);
        if (y > w.m + w.delta) y = w.m + w.delta;
        int horizon = std::min(w.xi, w.censoring_active ? y + w.tau : w.xi);
        ObservationTriple o;
        o.y = y;
        // Only cohorts whose observation ends before omega can be censored.
        bool censorable = w.censoring_active && y + w.tau < w.omega;
        if (censorable && rng.uniform01() < 0.3) {
            o.t = y + w.tau;
            o.event = false;
        } else {
            o.t = y + static_cast<int>(rng.uniform01() * (horizon - y + 1));
            if (o.t > horizon) o.t = horizon;
            o.event = true;
        }
        obs.push_back(o);
    }
    return obs;
}

}  // namespace

TEST_CASE("hand-counted example: two terminations among three at risk") {
    SupportWindow w = make_support_window(0, 2, 4, 5);  // tau = 2, xi = 4
    std::vector<ObservationTriple> obs = {{1, 2, true}, {2, 2, true}, {1, 3, false}};
    HazardModel m = estimate_hazard(obs, w);
    CHECK(m.n == 3);
    CHECK(m.f_at(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(m.c_at(2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.lambda_at(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // age 1: only the two entrants at y = 1 are at risk, no termination
    CHECK(m.c_at(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(m.lambda_at(1) == 0.0);
}

TEST_CASE("estimator agrees with brute-force counting on random data") {
    SupportWindow w = make_support_window(2, 8, 20, 25);  // tau = 14, xi = 20
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ObservationTriple> obs = random_triples(w, 200, rng);
        HazardModel m = estimate_hazard(obs, w);
        BruteCounts brute = brute_estimate(obs, w);
        for (std::size_t i = 0; i < brute.f.size(); ++i) {
            CHECK(m.f_hat[i] == doctest::Approx(brute.f[i]).epsilon(1e-15));
            CHECK(m.c_hat[i] == doctest::Approx(brute.c[i]).epsilon(1e-15));
            CHECK(m.lambda[i] == doctest::Approx(brute.lambda[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("plug-in identity holds at every observed index") {
    SupportWindow w = make_support_window(0, 6, 12, 15);
    Rng rng(7);
    std::vector<ObservationTriple> obs = random_triples(w, 500, rng);
    HazardModel m = estimate_hazard(obs, w);
    for (std::size_t i = 0; i < m.lambda.size(); ++i) {
        if (m.c_hat[i] > 0.0) {
            // The estimate is defined as the ratio, so the ratio itself is exact.
            CHECK(m.lambda[i] == m.f_hat[i] / m.c_hat[i]);
            CHECK(m.lambda[i] * m.c_hat[i] ==
                  doctest::Approx(m.f_hat[i]).epsilon(1e-14));
        } else {
            CHECK(m.lambda[i] == 0.0);
            CHECK(m.f_hat[i] == 0.0);
        }
    }
}

TEST_CASE("estimator rejects malformed triples") {
    SupportWindow w = make_support_window(0, 4, 8, 9);  // tau = 4, xi = 8
    CHECK_THROWS_AS(estimate_hazard({}, w), std::invalid_argument);
    CHECK_THROWS_AS(estimate_hazard({{0, 2, true}}, w), std::invalid_argument);   // y < delta+1
    CHECK_THROWS_AS(estimate_hazard({{5, 5, true}}, w), std::invalid_argument);   // y > m+delta
    CHECK_THROWS_AS(estimate_hazard({{2, 1, true}}, w), std::invalid_argument);   // t < y
    CHECK_THROWS_AS(estimate_hazard({{1, 2, false}}, w), std::invalid_argument);  // t != y+tau
    CHECK_THROWS_AS(estimate_hazard({{1, 7, true}}, w), std::invalid_argument);   // t > y+tau
    CHECK_THROWS_AS(estimate_hazard({{4, 8, false}}, w), std::invalid_argument);  // alive at omega

    SupportWindow open = make_support_window(0, 2, 3, 100);  // censoring disabled
    CHECK_THROWS_AS(estimate_hazard({{1, 3, false}}, open), std::invalid_argument);
}

TEST_CASE("unobserved ages are reported and left at zero hazard") {
    SupportWindow w = make_support_window(0, 3, 6, 9);  // tau = 5, xi = 6
    // Entrants only at y = 3; ages 1 and 2 are never covered.
    std::vector<ObservationTriple> obs = {{3, 4, true}, {3, 6, true}, {3, 5, true}};
    HazardModel m = estimate_hazard(obs, w);
    std::vector<int> dark = unobserved_ages(m);
    REQUIRE(dark.size() == 2);
    CHECK(dark[0] == 1);
    CHECK(dark[1] == 2);
    CHECK(m.lambda_at(1) == 0.0);
    CHECK(m.c_at(1) == 0.0);
}

TEST_CASE("survival function is the running product of survival fractions") {
    SupportWindow w = make_support_window(0, 10, 24, 100);
    HazardModel m = make_constant_hazard_model(w, 0.2);
    CHECK(survival_function(m, 1) == 1.0);  // empty product
    CHECK(survival_function(m, 4) == doctest::Approx(std::pow(0.8, 3)).epsilon(1e-15));
    CHECK_THROWS_AS(survival_function(m, 0), std::invalid_argument);
    CHECK_THROWS_AS(survival_function(m, 26), std::invalid_argument);

    // Against a brute-force product on an estimated model.
    SupportWindow w2 = make_support_window(1, 5, 14, 18);
    Rng rng(11);
    std::vector<ObservationTriple> obs = random_triples(w2, 400, rng);
    HazardModel est = estimate_hazard(obs, w2);
    for (int x = w2.delta + 1; x <= w2.xi + 1; ++x) {
        double prod = 1.0;
        for (int k = w2.delta + 1; k < x; ++k) prod *= 1.0 - est.lambda_at(k);
        CHECK(survival_function(est, x) == doctest::Approx(prod).epsilon(1e-14));
    }

    // Nonincreasing in x.
    double prev = 2.0;
    for (int x = w2.delta + 1; x <= w2.xi + 1; ++x) {
        double s = survival_function(est, x);
        CHECK(s <= prev + 1e-15);
        prev = s;
    }
}

TEST_CASE("remaining lifetime pmf sums to one and matches the ratio form") {
    SupportWindow w = make_support_window(0, 10, 24, 100);
    HazardModel m = make_constant_hazard_model(w, 0.2);

    SUBCASE("terminal lump absorbs the residual mass") {
        std::vector<double> pmf = remaining_lifetime_pmf(m, 6);
        REQUIRE(pmf.size() == 18);  // k = 1..xi-a
        double total = 0.0;
        for (double p : pmf) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // Geometric body and lump: Pr(K=k) = 0.2 * 0.8^(k-1), lump 0.8^17.
        for (int k = 1; k < 18; ++k)
            CHECK(pmf[k - 1] == doctest::Approx(0.2 * std::pow(0.8, k - 1)).epsilon(1e-12));
        CHECK(pmf[17] == doctest::Approx(std::pow(0.8, 17)).epsilon(1e-12));
    }

    SUBCASE("ratio form: Pr(K=k) = f(a+k)-type product identity") {
        // Pr(K = k) should equal lambda(a+k) * S(a+k) / S(a+1) for k < xi-a,
        // with S the survival function.
        std::vector<double> pmf = remaining_lifetime_pmf(m, 3);
        for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
            int k = static_cast<int>(i) + 1;
            double expected = m.lambda_at(3 + k) * survival_function(m, 3 + k) /
                              survival_function(m, 3 + 1);
            CHECK(pmf[i] == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    SUBCASE("age bounds") {
        CHECK_THROWS_AS(remaining_lifetime_pmf(m, -1), std::invalid_argument);
        CHECK_THROWS_AS(remaining_lifetime_pmf(m, 24), std::invalid_argument);
        // a = delta is allowed: the contract is one month from the first
        // supported age.
        std::vector<double> pmf = remaining_lifetime_pmf(m, 0);
        CHECK(pmf.size() == 24);
        // a = xi - 1 leaves a single certain month.
        pmf = remaining_lifetime_pmf(m, 23);
        REQUIRE(pmf.size() == 1);
        CHECK(pmf[0] == 1.0);
    }
}

TEST_CASE("asymptotic covariance diagonal") {
    SupportWindow w = make_support_window(0, 2, 3, 5);
    std::vector<ObservationTriple> obs;
    // Construct counts giving f_hat = 0.2, c_hat = 0.5 at age 2: n = 10,
    // 2 terminations at age 2, 5 contracts covering age 2 in total.  The
    // five t = 1 events leave age 2 uncovered.
    for (int i = 0; i < 5; ++i) obs.push_back({1, 1, true});
    obs.push_back({1, 2, true});
    obs.push_back({2, 2, true});
    obs.push_back({1, 3, true});
    obs.push_back({2, 3, true});
    obs.push_back({2, 3, true});
    HazardModel m = estimate_hazard(obs, w);
    REQUIRE(m.n == 10);
    REQUIRE(m.f_at(2) == doctest::Approx(0.2).epsilon(1e-15));
    REQUIRE(m.c_at(2) == doctest::Approx(0.5).epsilon(1e-15));

    HazardCovariance cov = asymptotic_covariance(m);
    // f (c - f) / c^3 = 0.2 * 0.3 / 0.125 = 0.48
    CHECK(cov.diag[m.index_of(2)] == doctest::Approx(0.48).epsilon(1e-12));
    CHECK(cov.variance_at(2) == doctest::Approx(0.048).epsilon(1e-12));
    CHECK(cov.fully_defined());

    SUBCASE("empty risk set leaves the variance undefined") {
        SupportWindow w2 = make_support_window(0, 3, 6, 9);
        std::vector<ObservationTriple> sparse = {{3, 4, true}, {3, 6, true}};
        HazardModel m2 = estimate_hazard(sparse, w2);
        HazardCovariance cov2 = asymptotic_covariance(m2);
        CHECK_FALSE(cov2.fully_defined());
        CHECK(cov2.undefined_ages == std::vector<int>{1, 2});
        CHECK_THROWS_AS(cov2.variance_at(1), std::invalid_argument);
        CHECK(std::isnan(cov2.diag[0]));
    }

    SUBCASE("analytic models have no sampling variance to report") {
        CHECK_THROWS_AS(asymptotic_covariance(make_constant_hazard_model(w, 0.2)),
                        std::invalid_argument);
    }
}

TEST_CASE("tail extension carries the last hazard and forces termination") {
    SupportWindow w = make_support_window(0, 10, 24, 22);  // xi = 21
    std::vector<double> lambda(21, 0.1);
    lambda[20] = 0.3;
    HazardModel m = make_analytic_model(w, lambda);
    HazardModel ext = extend_tail_geometric(m);
    CHECK(ext.window.xi == 24);
    REQUIRE(ext.lambda.size() == 24);
    CHECK(ext.lambda_at(22) == 0.3);
    CHECK(ext.lambda_at(23) == 0.3);
    CHECK(ext.lambda_at(24) == 1.0);
    CHECK(ext.f_at(22) == 0.0);
    CHECK(ext.c_at(22) == 0.0);
    // Original entries untouched.
    CHECK(ext.lambda_at(21) == 0.3);
    CHECK(ext.lambda_at(1) == 0.1);

    SUBCASE("model already reaching omega is unchanged") {
        HazardModel full = make_constant_hazard_model(make_support_window(0, 10, 24, 100), 0.2);
        HazardModel same = extend_tail_geometric(full);
        CHECK(same.window.xi == full.window.xi);
        CHECK(same.lambda == full.lambda);
    }

    SUBCASE("zero hazard at xi cannot seed the tail") {
        std::vector<double> l2(21, 0.1);
        l2[20] = 0.0;
        HazardModel bad = make_analytic_model(w, l2);
        CHECK_THROWS_AS(extend_tail_geometric(bad), std::invalid_argument);
    }
}

TEST_CASE("zero-hazard interpolation") {
    SupportWindow w = make_support_window(0, 5, 10, 16);  // tau = 10 >= omega-1: no censoring cap
    SUBCASE("interior zero is linearly interpolated") {
        std::vector<double> lambda = {0.2, 0.0, 0.4, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.2};
        HazardModel m = make_analytic_model(w, lambda);
        HazardModel fixed = interpolate_zero_hazards(m);
        CHECK(fixed.lambda_at(2) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(fixed.lambda_at(1) == 0.2);
        CHECK(fixed.lambda_at(3) == 0.4);
    }
    SUBCASE("interior run interpolates across the gap") {
        std::vector<double> lambda = {0.2, 0.0, 0.0, 0.0, 0.6, 0.1, 0.1, 0.1, 0.1, 0.2};
        HazardModel fixed = interpolate_zero_hazards(make_analytic_model(w, lambda));
        CHECK(fixed.lambda_at(2) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(fixed.lambda_at(3) == doctest::Approx(0.4).epsilon(1e-15));
        CHECK(fixed.lambda_at(4) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("leading and trailing zeros copy the nearest estimate") {
        std::vector<double> lambda = {0.0, 0.0, 0.4, 0.1, 0.1, 0.1, 0.1, 0.1, 0.3, 0.0};
        HazardModel fixed = interpolate_zero_hazards(make_analytic_model(w, lambda));
        CHECK(fixed.lambda_at(1) == 0.4);
        CHECK(fixed.lambda_at(2) == 0.4);
        CHECK(fixed.lambda_at(10) == 0.3);
    }
    SUBCASE("all zeros is unrecoverable") {
        std::vector<double> lambda(10, 0.0);
        CHECK_THROWS_AS(interpolate_zero_hazards(make_analytic_model(w, lambda)),
                        std::invalid_argument);
    }
    SUBCASE("estimated counts are refreshed where a risk set exists") {
        SupportWindow w2 = make_support_window(0, 3, 10, 9);  // tau = 5, xi = 8
        std::vector<ObservationTriple> obs = {{1, 2, true},  {1, 6, false}, {2, 3, true},
                                              {2, 7, false}, {3, 5, true},  {3, 8, false}};
        HazardModel m2 = estimate_hazard(obs, w2);
        REQUIRE(m2.lambda_at(4) == 0.0);
        REQUIRE(m2.c_at(4) > 0.0);
        HazardModel fixed = interpolate_zero_hazards(m2);
        CHECK(fixed.lambda_at(4) > 0.0);
        CHECK(fixed.f_at(4) == doctest::Approx(fixed.lambda_at(4) * fixed.c_at(4)).epsilon(1e-15));
        // Covariance is now defined wherever coverage exists.
        HazardCovariance cov = asymptotic_covariance(fixed);
        CHECK(cov.variance_at(4) > 0.0);
    }
}
