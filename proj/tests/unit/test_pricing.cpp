#include "doctest.h"
#include "fixtures.hpp"
#include "trustcf/pricing.hpp"
#include "trustcf/rng.hpp"
#include "trustcf/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace trustcf;

namespace {

// Independent pricing oracle: remaining-lifetime pmf by direct products over
// the hazard vector, present values by explicit month-by-month discounting.
std::vector<double> oracle_pmf(const HazardModel& m, int a) {
    const int len = m.window.xi - a;
    std::vector<double> pmf(static_cast<std::size_t>(len), 0.0);
    for (int k = 1; k < len; ++k) {
        double prod = m.lambda_at(a + k);
        for (int j = 1; j < k; ++j) prod *= 1.0 - m.lambda_at(a + j);
        pmf[static_cast<std::size_t>(k - 1)] = prod;
    }
    double lump = 1.0;
    for (int j = 1; j < len; ++j) lump *= 1.0 - m.lambda_at(a + j);
    pmf[static_cast<std::size_t>(len - 1)] = lump;
    return pmf;
}

double oracle_pv(const LeaseContract& c, const DepreciationCurve& curve, double r, int k) {
    double pv = 0.0;
    for (int j = 1; j <= k; ++j) pv += c.monthly_payment * std::pow(1.0 + r, -j);
    pv += curve.at(c.age + k - 1) * c.vehicle_value * std::pow(1.0 + r, -k);
    return pv;
}

double oracle_apv(const LeaseContract& c, const HazardModel& m, const DepreciationCurve& curve,
                  double r) {
    std::vector<double> pmf = oracle_pmf(m, c.age);
    double apv = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i)
        apv += pmf[i] * oracle_pv(c, curve, r, static_cast<int>(i) + 1);
    return apv;
}

double oracle_var(const LeaseContract& c, const HazardModel& m, const DepreciationCurve& curve,
                  double r) {
    std::vector<double> pmf = oracle_pmf(m, c.age);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        double pv = oracle_pv(c, curve, r, static_cast<int>(i) + 1);
        m1 += pmf[i] * pv;
        m2 += pmf[i] * pv * pv;
    }
    return m2 - m1 * m1;
}

HazardModel random_model(Rng& rng) {
    int omega = 8 + static_cast<int>(rng.uniform01() * 20);
    SupportWindow w = make_support_window(0, 4, omega, 200);
    std::vector<double> lambda(static_cast<std::size_t>(w.support_size()));
    for (double& l : lambda) l = 0.02 + 0.5 * rng.uniform01();
    return make_analytic_model(w, lambda);
}

DepreciationCurve random_curve(int max_age, Rng& rng) {
    DepreciationCurve curve;
    double z = 1.0;
    for (int j = 0; j <= max_age; ++j) {
        curve.values[j] = z;
        z *= 0.88 + 0.1 * rng.uniform01();
    }
    return curve;
}

}  // namespace

TEST_CASE("realized PV without discounting is payments plus residual") {
    DepreciationCurve curve = fixtures::reference_curve();
    LeaseContract c{"L1", 100.0, 100000.0, 6};
    // k months of R plus Z(age + k - 1) V, no discount factors.
    CHECK(pv_realized(c, curve, 0.0, 3) ==
          doctest::Approx(300.0 + std::pow(1.05, -8) * 100000.0).epsilon(1e-15));
    CHECK(pv_realized(c, curve, 0.0, 1) ==
          doctest::Approx(100.0 + std::pow(1.05, -6) * 100000.0).epsilon(1e-15));
}

TEST_CASE("realized PV reproduces the reference three-month payoff") {
    DepreciationCurve curve = fixtures::reference_curve();
    LeaseContract c{"L1", 100.0, 100000.0, 6};
    double pv = pv_realized(c, curve, fixtures::kRate, 3);
    CHECK(std::fabs(pv - 62223.25) <= 0.005);
    CHECK(pv == doctest::Approx(fixtures::kPv3).epsilon(1e-12));
}

TEST_CASE("realized PV agrees with explicit discounting and honors bounds") {
    Rng rng(314);
    DepreciationCurve curve = random_curve(40, rng);
    for (int trial = 0; trial < 200; ++trial) {
        LeaseContract c{"X", 50.0 + 900.0 * rng.uniform01(), 5000.0 + 90000.0 * rng.uniform01(),
                        static_cast<int>(rng.uniform01() * 10)};
        double r = trial % 5 == 0 ? 0.0 : 0.1 * rng.uniform01();
        int k = 1 + static_cast<int>(rng.uniform01() * 20);
        CHECK(pv_realized(c, curve, r, k) ==
              doctest::Approx(oracle_pv(c, curve, r, k)).epsilon(1e-9));
    }
    LeaseContract c{"X", 100.0, 1000.0, 2};
    CHECK_THROWS_AS(pv_realized(c, curve, 0.01, 0), std::invalid_argument);
    CHECK_THROWS_AS(pv_realized(c, curve, -0.01, 3), std::invalid_argument);
    CHECK_THROWS_AS(pv_realized(c, curve, 0.01, 7, 6), std::invalid_argument);
    CHECK_NOTHROW(pv_realized(c, curve, 0.01, 6, 6));
}

TEST_CASE("closed-form APV and variance match enumeration") {
    Rng rng(2718);
    for (int trial = 0; trial < 500; ++trial) {
        HazardModel m = random_model(rng);
        DepreciationCurve curve = random_curve(m.window.omega, rng);
        int age = static_cast<int>(rng.uniform01() * (m.window.xi - 1));
        LeaseContract c{"X", 50.0 + 900.0 * rng.uniform01(),
                        5000.0 + 90000.0 * rng.uniform01(), age};
        double rates[] = {0.0, 0.003, 0.01, 0.03, 0.1};
        double r = rates[trial % 5];
        CHECK(apv_contract(c, m, curve, r) ==
              doctest::Approx(oracle_apv(c, m, curve, r)).epsilon(1e-9));
        CHECK(var_pv_contract(c, m, curve, r) ==
              doctest::Approx(oracle_var(c, m, curve, r)).epsilon(1e-7));
    }
}

TEST_CASE("APV is continuous as the rate vanishes") {
    HazardModel m = fixtures::reference_model();
    DepreciationCurve curve = fixtures::reference_curve();
    LeaseContract c{"L1", 100.0, 100000.0, 6};
    double at_zero = apv_contract(c, m, curve, 0.0);
    double near_zero = apv_contract(c, m, curve, 1e-9);
    CHECK(std::fabs(near_zero - at_zero) / at_zero < 1e-4);
}

TEST_CASE("reference pool closed-form valuation") {
    HazardModel m = fixtures::reference_model();
    DepreciationCurve curve = fixtures::reference_curve();
    Portfolio pool = fixtures::reference_portfolio();
    PriceReport report = price_trust(pool, m, curve, fixtures::kRate);

    REQUIRE(report.contracts.size() == 2);
    CHECK(std::fabs(report.contracts[0].apv - 56197.86) <= 0.02);
    CHECK(std::fabs(report.contracts[0].sd - 14328.49) <= 0.02);
    CHECK(std::fabs(report.contracts[1].apv - 40765.56) <= 0.02);
    CHECK(std::fabs(report.contracts[1].sd - 8342.445) <= 0.02);
    CHECK(std::fabs(report.var_trust - fixtures::kVarTrust) <= 1.0);

    // Tighter pins against the frozen full-precision values.
    CHECK(report.contracts[0].apv == doctest::Approx(fixtures::kApv1).epsilon(1e-12));
    CHECK(report.contracts[0].sd == doctest::Approx(fixtures::kSd1).epsilon(1e-10));
    CHECK(report.contracts[1].apv == doctest::Approx(fixtures::kApv2).epsilon(1e-12));
    CHECK(report.contracts[1].sd == doctest::Approx(fixtures::kSd2).epsilon(1e-10));

    // Trust aggregates are plain sums over contracts.
    CHECK(report.apv_trust ==
          doctest::Approx(report.contracts[0].apv + report.contracts[1].apv).epsilon(1e-15));
    CHECK(report.var_trust == doctest::Approx(report.contracts[0].variance +
                                              report.contracts[1].variance)
                                  .epsilon(1e-15));
}

TEST_CASE("trust valuation is additive over portfolio splits") {
    HazardModel m = fixtures::reference_model();
    DepreciationCurve curve = fixtures::reference_curve();
    Portfolio pool = fixtures::wide_portfolio();
    PriceReport whole = price_trust(pool, m, curve, 0.01);

    Portfolio first{pool.window, {}}, second{pool.window, {}};
    for (std::size_t i = 0; i < pool.contracts.size(); ++i)
        (i % 2 ? first : second).contracts.push_back(pool.contracts[i]);
    PriceReport a = price_trust(first, m, curve, 0.01);
    PriceReport b = price_trust(second, m, curve, 0.01);
    CHECK(whole.apv_trust == doctest::Approx(a.apv_trust + b.apv_trust).epsilon(1e-12));
    CHECK(whole.var_trust == doctest::Approx(a.var_trust + b.var_trust).epsilon(1e-12));
}

TEST_CASE("richer residual curves price higher") {
    HazardModel m = fixtures::reference_model();
    DepreciationCurve low = fixtures::reference_curve();
    DepreciationCurve high = low;
    for (auto& [age, z] : high.values) z = std::min(1.0, z * 1.1);
    LeaseContract c{"L1", 100.0, 100000.0, 6};
    CHECK(apv_contract(c, m, high, 0.03) > apv_contract(c, m, low, 0.03));
}

TEST_CASE("unpriceable contracts abort with their id") {
    HazardModel m = fixtures::reference_model();
    DepreciationCurve curve = fixtures::reference_curve();
    Portfolio pool;
    pool.window = m.window;
    pool.contracts = {{"GOOD", 100.0, 50000.0, 5}, {"TOO_OLD", 100.0, 50000.0, 24}};
    try {
        price_trust(pool, m, curve, 0.03);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("TOO_OLD") != std::string::npos);
    }
    CHECK_THROWS_AS(price_trust(Portfolio{m.window, {}}, m, curve, 0.03),
                    std::invalid_argument);
}

TEST_CASE("normal tail expectation") {
    SUBCASE("standard upper tail at 5%") {
        CHECK(cte_normal(0.0, 1.0, 0.05, TailDirection::upper) ==
              doctest::Approx(2.0627128075074275).epsilon(1e-12));
    }
    SUBCASE("location-scale and symmetry") {
        double mu = 150.0, sigma = 12.0;
        double up = cte_normal(mu, sigma, 0.05, TailDirection::upper);
        double dn = cte_normal(mu, sigma, 0.05, TailDirection::lower);
        CHECK(up == doctest::Approx(mu + sigma * 2.0627128075074275).epsilon(1e-12));
        CHECK(up + dn == doctest::Approx(2.0 * mu).epsilon(1e-12));
        CHECK(dn < mu);
        CHECK(mu < up);
    }
    SUBCASE("tighter tails are more extreme") {
        double a = cte_normal(0.0, 1.0, 0.01, TailDirection::upper);
        double b = cte_normal(0.0, 1.0, 0.05, TailDirection::upper);
        double c = cte_normal(0.0, 1.0, 0.25, TailDirection::upper);
        CHECK(a > b);
        CHECK(b > c);
    }
    SUBCASE("degenerate and invalid inputs") {
        CHECK(cte_normal(42.0, 0.0, 0.05, TailDirection::upper) == 42.0);
        CHECK_THROWS_AS(cte_normal(0.0, 1.0, 0.0, TailDirection::upper), std::invalid_argument);
        CHECK_THROWS_AS(cte_normal(0.0, 1.0, 1.0, TailDirection::upper), std::invalid_argument);
        CHECK_THROWS_AS(cte_normal(0.0, -1.0, 0.05, TailDirection::upper), std::invalid_argument);
    }
    SUBCASE("attach_cte fills the report") {
        PriceReport r;
        r.apv_trust = 1000.0;
        r.sd_trust = 100.0;
        attach_cte(r, 0.05, TailDirection::upper);
        CHECK(r.has_cte);
        CHECK(r.cte == doctest::Approx(1000.0 + 100.0 * 2.0627128075074275).epsilon(1e-12));
        CHECK(r.alpha == 0.05);
    }
}
