#include "trustcf/support_window.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace trustcf {

SupportWindow make_support_window(int delta, int m, int omega, int epsilon) {
    if (delta < 0)
        throw std::invalid_argument("support window: delta must be >= 0, got " +
                                    std::to_string(delta));
    if (omega <= delta)
        throw std::invalid_argument("support window: omega must exceed delta (omega=" +
                                    std::to_string(omega) + ", delta=" + std::to_string(delta) +
                                    ")");
    if (m < 1)
        throw std::invalid_argument("support window: m must be >= 1, got " + std::to_string(m));
    if (epsilon < m + delta + 1)
        throw std::invalid_argument(
            "support window: epsilon must be >= m + delta + 1 so the youngest cohort has "
            "entered (epsilon=" +
            std::to_string(epsilon) + ", m + delta + 1 = " + std::to_string(m + delta + 1) + ")");

    SupportWindow w;
    w.delta = delta;
    w.m = m;
    w.omega = omega;
    w.epsilon = epsilon;
    w.censoring_active = epsilon <= m + omega;
    // With censoring active, a cohort entering at age y is observed up to age
    // y + tau.  Past m + omega every contract has resolved; the cap keeps
    // y + tau >= omega for all cohorts so no censored record can exist.
    w.tau = w.censoring_active ? epsilon - (m + delta + 1) : omega - delta - 1;
    w.xi = std::min(omega, epsilon - 1);
    return w;
}

}  // namespace trustcf
