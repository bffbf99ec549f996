#pragma once

#include <span>

#include "qam/envelope.hpp"

namespace qam {

/// Pointwise max (sup) or min (inf) of f''/f' over the family, sampled on
/// the quadrature grid implied by `opts`.
RatioEnvelope ratio_envelope(std::span<const Generator> family, EnvelopeKind kind,
                             const EnvelopeOptions& opts = {});

/// u(x) = int_{x0}^{x} exp(int_{x0}^{t} G(s) ds) dt by cumulative trapezoid
/// on the envelope's grid; the result is downsampled to `opts.grid_n`
/// nodes. No certificates are attached.
EnvelopeResult integrate_envelope(const RatioEnvelope& env, const EnvelopeOptions& opts = {});

/// ratio_envelope + integrate_envelope + certificates.
EnvelopeResult envelope_generator_c2(std::span<const Generator> family, EnvelopeKind kind,
                                     const EnvelopeOptions& opts = {});

}  // namespace qam
