#pragma once

#include "biphoton/mode.hpp"

namespace biphoton {

enum class FourierDirection {
  /// momentum -> position, f(x) = (1/2pi) * integral F(q) exp(+i x.q) d^2q
  kForward,
  /// position -> momentum, the adjoint of kForward
  kInverse,
};

/// Discrete counterpart of the continuous transverse Fourier transform.
///
/// The result lives on grid().conjugate(). On the half-cell lattice the
/// discrete kernel (h/sqrt(2pi)) exp(i x_k q_j) is exactly unitary with
/// respect to the midpoint-rule inner products, so Parseval and the
/// inverse-forward identity hold to rounding, and the transform commutes
/// exactly with the y-reflection. Throws std::invalid_argument when the
/// direction does not match the mode's representation.
TransverseMode fourier_2d(const TransverseMode& mode, FourierDirection direction);

}  // namespace biphoton
