#pragma once

#include "holo/types.hpp"

namespace holo {

/// Forward 2-D DFT, negative exponent, unnormalized (matches the F in the
/// propagation formulas; inverse applies the 1/(H*W) factor).
ComplexField fft2(const ComplexField& field);

/// Inverse 2-D DFT, positive exponent, scaled by 1/(H*W). fft2 then ifft2 is
/// the identity up to roundoff.
ComplexField ifft2(const ComplexField& field);

namespace fft_detail {
// In-place transforms over raw row-major buffers; plan cache is internal and
// thread-safe (plan creation is serialized, execution is concurrent).
void transform(Complex* data, int height, int width, bool inverse);
} // namespace fft_detail

} // namespace holo
