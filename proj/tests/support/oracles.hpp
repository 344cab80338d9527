#pragma once

// Independent reference computations for the tests: curve lengths by
// quadrature and closed forms re-evaluated in 50-digit arithmetic.

#include <array>
#include <functional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hypgeom/bounds.hpp"
#include "hypgeom/hyperboloid.hpp"
#include "hypgeom/models.hpp"

namespace hypgeom::testing {

using Real = boost::multiprecision::cpp_bin_float_50;

/// Length of the curve c on [a, b] in the hyperboloid model: composite midpoint
/// rule on the Minkowski speed |c'(t)|, with c' by central differences. The
/// panel count doubles until the relative change drops below rel_tol.
double curve_length(const std::function<Vec4(double)>& c, double a, double b, double rel_tol = 1e-10);

/// Length of the image under the Klein homothety y -> lambda y of the Klein
/// segment from k0 to k1, integrating the Klein-model line element.
double homothety_chord_image_length(const KleinPoint& k0, const KleinPoint& k1, double lambda,
                                    double rel_tol = 1e-10);

/// Hyperbolic length of the Klein segment from k0 to k1 (lambda = 1 above).
double klein_chord_length(const KleinPoint& k0, const KleinPoint& k1);

/// arcosh(-<p, q>) in 50-digit arithmetic from the double coordinates.
double mp_dist(const Vec4& p, const Vec4& q);

/// Law-of-cosines angle opposite a, in 50-digit arithmetic.
double mp_angle(double a, double b, double c);

/// The eight terms of the separation bound in 50-digit arithmetic, in the
/// library's term order. Vacuous arcosh terms are NaN.
std::array<Real, 8> mp_bound_terms(const BoundInputs& in);

/// Same for the uniform bound.
std::array<Real, 8> mp_uniform_bound_terms(const UniformBoundInputs& in);

/// Largest relative difference between the eight terms of b and the
/// reference, with matching vacuous flags required (else +inf).
double max_term_rel_error(const SeparationBound& b, const std::array<Real, 8>& ref);

}  // namespace hypgeom::testing
