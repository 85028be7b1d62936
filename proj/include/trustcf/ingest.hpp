#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trustcf/depreciation.hpp"
#include "trustcf/observation.hpp"
#include "trustcf/pricing.hpp"
#include "trustcf/support_window.hpp"

namespace trustcf {

/// One row of the servicer extract.
struct LeaseRecord {
    std::string id;
    int origination_month = 0;
    int scheduled_term = 0;
    double monthly_payment = 0.0;
    double vehicle_value = 0.0;
    std::optional<int> termination_month;   ///< absent while the lease is open
    std::optional<double> residual_paid;    ///< absent unless terminated
};

/// Reads the lease CSV `id,origination_month,scheduled_term,monthly_payment,
/// vehicle_value,termination_month,residual_paid` (trailing two fields may be
/// empty).  All malformed rows and duplicate ids are collected and reported in
/// one std::runtime_error carrying row numbers; nothing is returned partially.
std::vector<LeaseRecord> parse_portfolio(std::istream& in);
std::vector<LeaseRecord> parse_portfolio_file(const std::string& path);

/// Why a record contributed no observation.
struct ExcludedRecord {
    std::string id;
    std::string reason;
};

/// Everything derive_observations decides about the extract.
///
/// Every input record lands in exactly one bucket: an event triple, a
/// censored triple (with its live contract in `active`), or `excluded`.
/// n_events + n_censored + excluded.size() equals the input size.
struct DerivedObservations {
    std::vector<ObservationTriple> triples;
    Portfolio active;
    std::vector<ExcludedRecord> excluded;
    long n_events = 0;
    long n_censored = 0;
};

/// Classifies records against the window.
///
/// A record originated in month T enters observation at age
/// y = m + delta + 1 - T.  Records terminated by the snapshot yield an event
/// triple at age termination_month - T (capped at omega); terminations that
/// predate entry are excluded.  Open records yield a censored triple and an
/// active LeaseContract aged epsilon - T.  Records whose scheduled term is
/// not `term_months`, whose origination lies outside 1..m, or whose implied
/// state is impossible are excluded with a reason.
DerivedObservations derive_observations(const std::vector<LeaseRecord>& records,
                                        const SupportWindow& window, int term_months);

/// Mean residual ratio by vehicle sale age: each terminated record with a
/// residual contributes residual_paid / vehicle_value at age
/// (termination_month - origination_month) - 1, the month the vehicle was
/// sold.  Points with a mean ratio outside [0, 1.2] are flagged.  Records
/// without a residual or still open are skipped.
std::vector<RawDepreciationPoint> estimate_depreciation(const std::vector<LeaseRecord>& records);

}  // namespace trustcf
