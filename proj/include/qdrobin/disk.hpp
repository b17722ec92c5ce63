#pragma once

#include "qdrobin/link.hpp"

// Transcendental-equation eigencurves and constants for disks. Separated
// angular modes reduce the boundary condition on the unit disk to
//   a J_k(x) = x J_{k+1}(x),                k >= 0, first root below j_{k,1},
//   x J_{|k|-1}(x) + a J_{|k|}(x) = 0,      k < 0, first root past j_{|k|-1,1},
// with mu = x^2 and the general radius handled by mu_{R D}(a) = mu_D(R a)/R^2.
// These serve both as solver oracles and as the same-area reference disk in
// the Faber-Krahn comparisons.

namespace qdrobin {

struct DiskConstants {
  double radius = 1.0;
  double lambda_dirichlet = 0.0;  // (j_{0,1}/R)^2
  double q = 0.0;                 // 2/R
  double area = 0.0;
  double perimeter = 0.0;
};

DiskConstants disk_constants(double radius);

/// j_{0,1}^2, the unit-disk Dirichlet eigenvalue, at full precision.
double lambda_dirichlet_unit_disk();

struct DiskMode {
  int mode = 0;      // angular index of the minimizing mode
  double root = 0.0; // Bessel-equation root x for that mode
  double mu = 0.0;   // min over modes of x^2 (radius-scaled)
};

/// First eigenvalue of the dbar-Robin eigencurve on a disk, minimized over
/// angular modes k in {-k_max..k_max}. Throws if the minimizing mode lands
/// within 2 of the cutoff (never observed; the radial mode k = 0 wins in
/// practice, but we compute rather than assume).
DiskMode mu_disk_detail(double a, double radius = 1.0, int k_max = 8);
double mu_disk(double a, double radius = 1.0, int k_max = 8);

/// Convenience wrapper: first Dirac eigenvalue of the disk through the
/// curve-intersection recipe with the analytic eigencurve.
RecipeResult lambda_disk(double theta, double mass, double radius = 1.0,
                         double tol = 1e-12);

}  // namespace qdrobin
