#pragma once

namespace trustcf {

/// Geometry of the observation scheme for a single securitized pool.
///
/// Months are 1-based calendar indices.  A contract originated in month T
/// enters the pool holding a lifetime of at least `delta + 1` months and at
/// most `omega` months.  The pool admits originations from months 1..m, and
/// the data snapshot is taken at calendar month `epsilon`.
struct SupportWindow {
    int delta = 0;    ///< minimum lifetime minus one; lifetimes start at delta + 1
    int m = 1;        ///< last origination month admitted to the pool
    int omega = 1;    ///< maximum contract lifetime in months
    int epsilon = 0;  ///< calendar month of the data snapshot

    // Derived quantities, filled in by make_support_window.
    int tau = 0;  ///< months of seasoning beyond entry before censoring binds
    int xi = 0;   ///< last age at which terminations are observable
    bool censoring_active = false;  ///< false when every contract must have resolved

    /// First age in the observable support, delta + 1.
    int support_begin() const { return delta + 1; }
    /// Number of ages in the observable support {delta+1, ..., xi}.
    int support_size() const { return xi - delta; }
    /// True when age x lies in the observable support.
    bool contains(int x) const { return x >= delta + 1 && x <= xi; }
};

/// Validates the raw parameters and derives tau, xi and the censoring flag.
///
/// Entry ages are y = m + delta + 1 - T for T in 1..m, so y ranges over
/// {delta+1, ..., m+delta}.  The snapshot must land at or after the youngest
/// cohort's entry (epsilon >= m + delta + 1).  When epsilon > m + omega the
/// snapshot postdates every possible termination and censoring is disabled;
/// tau is then capped at omega - delta - 1 so that y + tau >= omega holds for
/// every cohort.
///
/// Throws std::invalid_argument on inconsistent parameters.
SupportWindow make_support_window(int delta, int m, int omega, int epsilon);

}  // namespace trustcf
