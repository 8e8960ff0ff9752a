#include "uds.hpp"

#include <algorithm>

#include "errors.hpp"

namespace uds {

double normalize_metric(double value, double lower, double upper) {
    if (upper <= lower) throw ValidationError("normalization needs upper > lower");
    return std::clamp((value - lower) / (upper - lower), 0.0, 1.0);
}

}  // namespace uds
