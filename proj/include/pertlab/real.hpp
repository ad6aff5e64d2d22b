#pragma once

#include <complex>

namespace pertlab {

// Scalar type used by every floating-point module. Changing this alias is the
// only edit needed for a higher-precision build.
using real = double;
using complex = std::complex<real>;

// Largest cutoff for which exp(x^2)-sized intermediates stay representable.
inline constexpr real kCutoffMax = 25.0;

}  // namespace pertlab
