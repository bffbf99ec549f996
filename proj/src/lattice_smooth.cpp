#include "qam/lattice_smooth.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qam/error.hpp"

namespace qam {

RatioEnvelope ratio_envelope(std::span<const Generator> family, EnvelopeKind kind,
                             const EnvelopeOptions& opts) {
  const Interval I = family_interval(family);
  for (const Generator& f : family) {
    if (!f.has_second_derivative() || !f.is_c1()) {
      throw Error(ErrorKind::SecondDerivativeUnavailable,
                  to_string(f.family()) + " member carries no second derivative");
    }
  }
  const std::size_t n = quadrature_size(opts);
  const double x0 = resolve_anchor(I, opts);
  const bool sup = kind == EnvelopeKind::Sup;
  std::vector<double> G(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = I.node(i, n);
    double best = sup ? -INFINITY : INFINITY;
    for (const Generator& f : family) {
      const double r = f.second_derivative(x) / f.derivative(x);
      best = sup ? std::max(best, r) : std::min(best, r);
    }
    G[i] = best;
  }
  return RatioEnvelope{kind, GridFunction(I, std::move(G)), x0};
}

EnvelopeResult integrate_envelope(const RatioEnvelope& env, const EnvelopeOptions& opts) {
  const std::size_t n = env.G.size();
  if (opts.grid_n < 2 || (n - 1) % (opts.grid_n - 1) != 0) {
    throw Error(ErrorKind::InvalidArgument, "output grid does not divide the envelope grid");
  }
  const std::size_t factor = (n - 1) / (opts.grid_n - 1);
  const GridFunction inner = env.G.cumulative_integral(env.anchor);
  Generator u = generator_from_log_slope(inner, env.anchor, factor);
  return EnvelopeResult{env.kind, std::move(u), env, {}, {}};
}

EnvelopeResult envelope_generator_c2(std::span<const Generator> family, EnvelopeKind kind,
                                     const EnvelopeOptions& opts) {
  EnvelopeResult result = integrate_envelope(ratio_envelope(family, kind, opts), opts);
  attach_certificates(result, family, opts);
  return result;
}

}  // namespace qam
