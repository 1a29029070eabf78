#include "qfab/rng.hpp"

#include <cmath>

namespace qfab {

double Rng::gaussian() {
    // Box-Muller; u clamped away from 0 so log stays finite.
    double u = uniform();
    if (u < 0x1.0p-60) u = 0x1.0p-60;
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
}

} // namespace qfab
