#pragma once

namespace trustcf {

/// One contract's contribution to the lifetime study.
///
/// `y` is the age at which the contract entered observation, `t` the last age
/// at which it was seen.  `event` is true when the contract terminated at age
/// t, false when observation was cut off there with the contract still alive.
struct ObservationTriple {
    int y = 0;
    int t = 0;
    bool event = false;
};

}  // namespace trustcf
