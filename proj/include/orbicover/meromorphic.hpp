#pragma once

#include "orbicover/cover_moduli.hpp"

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace orbicover {

using Complex = std::complex<double>;

struct Puncture {
    Complex point;
    int multiplicity = 1;
};

/// h(z) = scale * prod (z - zero)^m / prod (z - pole)^m on the Riemann sphere.
/// Zeros are the negative punctures, poles the positive ones. A pole or zero at infinity is not listed;
/// its order is whatever makes the divisor degree zero (see order_at_infinity).
class RationalCover {
  public:
    RationalCover(std::vector<Puncture> zeros, std::vector<Puncture> poles, Complex scale = 1.0);

    const std::vector<Puncture>& zeros() const { return zeros_; }
    const std::vector<Puncture>& poles() const { return poles_; }
    Complex scale() const { return scale_; }

    /// Signed order of h at infinity: positive for a zero, negative for a pole.
    int order_at_infinity() const;

    /// Principal-branch-free log h(z); throws at a puncture.
    Complex log_value(Complex z) const;

  private:
    std::vector<Puncture> zeros_;
    std::vector<Puncture> poles_;
    Complex scale_;
};

/// Point of the target cylinder R x S^1 with both coordinates normalized by 2 pi; t lies in [0,1).
struct CylinderPoint {
    double s;
    double t;
};

CylinderPoint evaluate(const RationalCover& cover, Complex z);

struct WindingResult {
    int winding;
    double measured;
    double residue;
};

/// Winding number of arg h along a circle enclosing exactly one finite puncture:
/// +m at a zero of order m, -m at a pole of order m.
WindingResult winding_multiplicity(const RationalCover& cover, Complex center, double radius, int samples);

/// Winding of arg h along a large circle, reported as the local order at infinity.
WindingResult winding_at_infinity(const RationalCover& cover, double radius, int samples);

struct NeckShift {
    double measured;
    double expected;
};

/// Realizes a neck of length 2r as the cover z -> z^m and integrates the R-coordinate over both boundary circles.
NeckShift neck_shift_check(int m, double r, int samples = 1 << 10);

RationalCover scale_family(const RationalCover& cover, Complex factor);

/// Random rational function with the profile's zero/pole multiplicities, all punctures finite and
/// pairwise at distance >= min_separation inside the disc of radius 2.
RationalCover realize_profile(const MultiplicityProfile& profile, std::mt19937_64& rng, double min_separation = 0.25);

struct PunctureReport {
    std::string label;  // "+k" for the k-th positive puncture, "-k" for the k-th negative one
    int expected;
    WindingResult result;
};

/// Measures every finite puncture of the cover on a circle of radius 0.4 * (distance to nearest other puncture).
std::vector<PunctureReport> verify_multiplicities(const RationalCover& cover, int samples = 256);

}  // namespace orbicover
