#pragma once

// Overflow-safe scalar helpers shared by the closed-form bounds.

namespace hypgeom {

/// ln cosh(a), finite for every finite a.
double lncosh(double a);

/// arcosh(e^y) for y >= 0, finite for every finite y.
double acosh_exp(double y);

/// Clamps x into [lo, hi] when it is within slack of the interval; throws
/// DomainError naming `what` when it is further out.
double clamp_checked(double x, double lo, double hi, double slack, const char* what);

}  // namespace hypgeom
