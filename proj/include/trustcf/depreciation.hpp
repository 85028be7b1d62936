#pragma once

#include <map>
#include <vector>

namespace trustcf {

/// Average residual-value ratio observed at one vehicle age.
///
/// `age` is the month the vehicle was sold (one month before the lease's
/// termination age), `ratio` the mean of residual_paid / vehicle_value over
/// `count` contracts.  `flagged` marks a mean outside the plausible band.
struct RawDepreciationPoint {
    int age = 0;
    double ratio = 0.0;
    long count = 0;
    bool flagged = false;
};

/// Residual value of a vehicle as a fraction of its original value, by age in
/// months.  Z(0) = 1 means no depreciation yet; values decline toward zero.
struct DepreciationCurve {
    std::map<int, double> values;
    bool linear_fallback = false;  ///< true when too few points forced a fallback fit

    /// Ratio at `age`; throws std::invalid_argument when absent.
    double at(int age) const;
    bool covers(int age) const { return values.count(age) > 0; }
};

/// Locally weighted quadratic smoother over raw ratio points, evaluated at
/// every integer age in [age_min, age_max] (defaults to [0, max point age]).
///
/// Each evaluation age fits a quadratic by weighted least squares over the
/// ceil(span * #points) nearest points under tricube weights, then clamps the
/// fit to [0, 1].  Fewer than four points fall back to linear interpolation
/// between the points (constant beyond the ends) and set linear_fallback.
///
/// span must lie in (0, 1]; points must be non-empty with distinct ages.
DepreciationCurve smooth_depreciation(const std::vector<RawDepreciationPoint>& points,
                                      double span = 0.75, int age_min = 0, int age_max = -1);

}  // namespace trustcf
