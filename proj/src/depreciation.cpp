#include "trustcf/depreciation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustcf {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

/// Piecewise-linear interpolation through the points, constant beyond the ends.
double linear_value(const std::vector<RawDepreciationPoint>& pts, double x) {
    if (x <= pts.front().age) return pts.front().ratio;
    if (x >= pts.back().age) return pts.back().ratio;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (x <= pts[i].age) {
            double x0 = pts[i - 1].age, x1 = pts[i].age;
            double t = (x - x0) / (x1 - x0);
            return (1.0 - t) * pts[i - 1].ratio + t * pts[i].ratio;
        }
    }
    return pts.back().ratio;
}

/// Weighted least-squares quadratic evaluated at x0.  Falls back to the
/// weighted mean when the normal equations are singular (degenerate window).
double local_quadratic(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<double>& ws, double x0) {
    // Normal equations for basis {1, (x-x0), (x-x0)^2}; the constant term is
    // then the fitted value at x0.
    double s[5] = {0, 0, 0, 0, 0};
    double b[3] = {0, 0, 0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = xs[i] - x0;
        double w = ws[i];
        double dp = 1.0;
        for (int k = 0; k <= 4; ++k) {
            s[k] += w * dp;
            if (k <= 2) b[k] += w * dp * ys[i];
            dp *= d;
        }
    }
    double a[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
    double rhs[3] = {b[0], b[1], b[2]};
    // Gaussian elimination with partial pivoting on the 3x3 system.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-12) {
            // Singular: not enough distinct ages in the window.
            return s[0] > 0.0 ? b[0] / s[0] : 0.0;
        }
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 3; ++r) {
            double factor = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= factor * a[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    double beta2 = rhs[2] / a[2][2];
    double beta1 = (rhs[1] - a[1][2] * beta2) / a[1][1];
    double beta0 = (rhs[0] - a[0][1] * beta1 - a[0][2] * beta2) / a[0][0];
    return beta0;
}

}  // namespace

double DepreciationCurve::at(int age) const {
    auto it = values.find(age);
    if (it == values.end())
        throw std::invalid_argument("depreciation curve: no value at age " + std::to_string(age));
    return it->second;
}

DepreciationCurve smooth_depreciation(const std::vector<RawDepreciationPoint>& points, double span,
                                      int age_min, int age_max) {
    if (points.empty())
        throw std::invalid_argument("smooth_depreciation: no points");
    if (!(span > 0.0 && span <= 1.0))
        throw std::invalid_argument("smooth_depreciation: span must lie in (0, 1], got " +
                                    std::to_string(span));

    std::vector<RawDepreciationPoint> pts = points;
    std::sort(pts.begin(), pts.end(),
              [](const RawDepreciationPoint& a, const RawDepreciationPoint& b) {
                  return a.age < b.age;
              });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].age == pts[i - 1].age)
            throw std::invalid_argument("smooth_depreciation: duplicate point age " +
                                        std::to_string(pts[i].age));

    if (age_max < 0) age_max = pts.back().age;
    if (age_min > age_max)
        throw std::invalid_argument("smooth_depreciation: empty evaluation range");

    DepreciationCurve curve;

    if (pts.size() < 4) {
        curve.linear_fallback = true;
        for (int age = age_min; age <= age_max; ++age)
            curve.values[age] = clamp01(linear_value(pts, static_cast<double>(age)));
        return curve;
    }

    const std::size_t q =
        std::max<std::size_t>(4, static_cast<std::size_t>(
                                     std::ceil(span * static_cast<double>(pts.size()))));

    for (int age = age_min; age <= age_max; ++age) {
        const double x0 = static_cast<double>(age);
        std::vector<std::size_t> order(pts.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double da = std::fabs(pts[a].age - x0), db = std::fabs(pts[b].age - x0);
            return da != db ? da < db : pts[a].age < pts[b].age;
        });
        const std::size_t take = std::min(q, pts.size());
        double dmax = std::fabs(pts[order[take - 1]].age - x0);
        std::vector<double> xs, ys, ws;
        xs.reserve(take);
        for (std::size_t i = 0; i < take; ++i) {
            const RawDepreciationPoint& p = pts[order[i]];
            double w = 1.0;
            if (dmax > 0.0) {
                double u = std::fabs(p.age - x0) / dmax;
                double t = 1.0 - u * u * u;
                w = t * t * t;
            }
            if (w <= 0.0) continue;
            xs.push_back(static_cast<double>(p.age));
            ys.push_back(p.ratio);
            ws.push_back(w);
        }
        double fitted = xs.size() >= 3 ? local_quadratic(xs, ys, ws, x0)
                                       : linear_value(pts, x0);
        curve.values[age] = clamp01(fitted);
    }
    return curve;
}

}  // namespace trustcf
