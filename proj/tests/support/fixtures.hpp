#pragma once

// Shared test fixtures: the two-lease reference pool with frozen closed-form
// values, a multi-cohort life table whose fitted hazard is flat by
// construction, and a wider pool for distributional checks.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "trustcf/depreciation.hpp"
#include "trustcf/hazard.hpp"
#include "trustcf/ingest.hpp"
#include "trustcf/pricing.hpp"
#include "trustcf/support_window.hpp"

namespace fixtures {

using namespace trustcf;

// Frozen valuation numbers for the reference pool at a 3%/month rate: two
// seasoned leases (ages 6 and 9) under a flat 20%/month termination hazard
// with lifetimes capped at 24 months and residuals Z(j) = 1.05^-j.
inline constexpr double kRate = 0.03;
inline constexpr double kPv3 = 62223.250823736125;  // lease 1 PV when k = 3
inline constexpr double kApv1 = 56197.85691105421;
inline constexpr double kSd1 = 14328.491589953082;
inline constexpr double kApv2 = 40765.55867376075;
inline constexpr double kSd2 = 8342.444581342199;
inline constexpr double kVarTrust = 274902053.0;  // rounded reference, +-1

inline SupportWindow reference_window() {
    // Snapshot far past m + omega: every lifetime fully observed.
    return make_support_window(0, 10, 24, 100);
}

inline HazardModel reference_model() {
    return make_constant_hazard_model(reference_window(), 0.2);
}

inline DepreciationCurve reference_curve() {
    DepreciationCurve curve;
    for (int j = 0; j <= 23; ++j) curve.values[j] = std::pow(1.05, -j);
    return curve;
}

inline Portfolio reference_portfolio() {
    Portfolio p;
    p.window = reference_window();
    p.contracts = {{"L1", 100.0, 100000.0, 6}, {"L2", 500.0, 80000.0, 9}};
    return p;
}

// ---------------------------------------------------------------------------
// Life-table extract.
//
// Window (delta 0, m 17, omega 24, epsilon 20): tau = 2, xi = 19.  Cohort
// T = 1..17 enters observation at age y = 18 - T and is watched over ages
// y..y+2.  Each cohort holds 125 leases: 25 terminate at age y, 20 at y+1,
// 16 at y+2 and 64 are still open at the snapshot.  Every covered age loses
// exactly one fifth of its risk set, so the pooled hazard estimate is 0.2 at
// all ages 1..19 no matter how cohorts overlap.  Residuals follow
// Z(j) = 1.05^-j evaluated at the sale month, one month before termination.

inline SupportWindow life_table_window() { return make_support_window(0, 17, 24, 20); }

inline std::vector<LeaseRecord> life_table_records() {
    std::vector<LeaseRecord> records;
    records.reserve(17 * 125);
    int serial = 0;
    for (int T = 1; T <= 17; ++T) {
        const int y = 18 - T;
        auto push = [&](int terminate_age /* 0 = open */) {
            LeaseRecord r;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "C%04d", ++serial);
            r.id = buf;
            r.origination_month = T;
            r.scheduled_term = 24;
            r.monthly_payment = 100.0 + 25.0 * (serial % 7);
            r.vehicle_value = 30000.0 + 1000.0 * (serial % 11);
            if (terminate_age > 0) {
                r.termination_month = T + terminate_age;
                r.residual_paid = std::pow(1.05, -(terminate_age - 1)) * r.vehicle_value;
            }
            records.push_back(std::move(r));
        };
        for (int i = 0; i < 25; ++i) push(y);
        for (int i = 0; i < 20; ++i) push(y + 1);
        for (int i = 0; i < 16; ++i) push(y + 2);
        for (int i = 0; i < 64; ++i) push(0);
    }
    return records;
}

// Two open leases against the life-table window: ages 20 - 14 = 6 and
// 20 - 11 = 9 at the snapshot, matching the reference pool.
inline std::vector<LeaseRecord> pricing_records() {
    std::vector<LeaseRecord> records;
    LeaseRecord l1;
    l1.id = "L1";
    l1.origination_month = 14;
    l1.scheduled_term = 24;
    l1.monthly_payment = 100.0;
    l1.vehicle_value = 100000.0;
    records.push_back(l1);
    LeaseRecord l2;
    l2.id = "L2";
    l2.origination_month = 11;
    l2.scheduled_term = 24;
    l2.monthly_payment = 500.0;
    l2.vehicle_value = 80000.0;
    records.push_back(l2);
    return records;
}

// ---------------------------------------------------------------------------
// Wider pool for central-limit and tail checks: 120 contracts with varied
// payments, values and ages, all priced under the reference model.

inline Portfolio wide_portfolio() {
    Portfolio p;
    p.window = reference_window();
    for (int i = 0; i < 120; ++i) {
        LeaseContract c;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "P%03d", i);
        c.id = buf;
        c.age = i % 19;  // ages 0..18, all strictly inside the support
        c.monthly_payment = 100.0 + 45.0 * (i % 13);
        c.vehicle_value = 20000.0 + 5900.0 * (i % 17);
        p.contracts.push_back(std::move(c));
    }
    return p;
}

}  // namespace fixtures
