#include "orbicover/meromorphic.hpp"

#include "orbicover/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace orbicover {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResidueTolerance = 1e-6;

double wrap_angle(double a)
{
    return std::remainder(a, kTwoPi);
}

std::vector<Complex> all_points(const RationalCover& cover)
{
    std::vector<Complex> pts;
    for (const auto& p : cover.zeros())
        pts.push_back(p.point);
    for (const auto& p : cover.poles())
        pts.push_back(p.point);
    return pts;
}

WindingResult contour_winding(const RationalCover& cover, Complex center, double radius, int samples)
{
    if (samples < 64)
        throw PreconditionError("winding needs at least 64 samples");
    double total = 0.0;
    double max_step = 0.0;
    double prev = cover.log_value(center + radius).imag();
    for (int j = 1; j <= samples; ++j) {
        const double theta = kTwoPi * j / samples;
        const double cur = cover.log_value(center + std::polar(radius, theta)).imag();
        const double step = wrap_angle(cur - prev);
        max_step = std::max(max_step, std::abs(step));
        total += step;
        prev = cur;
    }
    if (max_step > std::numbers::pi / 2)
        throw ValidationError("contour undersampled or too close to another puncture (angle step " +
                              std::to_string(max_step) + ")");
    const double measured = total / kTwoPi;
    const double rounded = std::round(measured);
    const double residue = std::abs(measured - rounded);
    if (residue >= kResidueTolerance)
        throw ValidationError("winding residue " + std::to_string(residue) + " exceeds tolerance");
    return {static_cast<int>(rounded), measured, residue};
}

}  // namespace

RationalCover::RationalCover(std::vector<Puncture> zeros, std::vector<Puncture> poles, Complex scale)
    : zeros_(std::move(zeros)), poles_(std::move(poles)), scale_(scale)
{
    if (scale_ == Complex(0.0))
        throw ValidationError("cover scale must be nonzero");
    for (const auto& p : zeros_)
        if (p.multiplicity < 1)
            throw ValidationError("zero multiplicities must be positive");
    for (const auto& p : poles_)
        if (p.multiplicity < 1)
            throw ValidationError("pole multiplicities must be positive");
    const auto pts = all_points(*this);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j])
                throw ValidationError("cover punctures must be pairwise distinct");
}

int RationalCover::order_at_infinity() const
{
    int order = 0;
    for (const auto& p : zeros_)
        order -= p.multiplicity;
    for (const auto& p : poles_)
        order += p.multiplicity;
    return order;
}

Complex RationalCover::log_value(Complex z) const
{
    Complex acc = std::log(scale_);
    for (const auto& p : zeros_) {
        if (z == p.point)
            throw PreconditionError("evaluation at a zero of the cover");
        acc += static_cast<double>(p.multiplicity) * std::log(z - p.point);
    }
    for (const auto& p : poles_) {
        if (z == p.point)
            throw PreconditionError("evaluation at a pole of the cover");
        acc -= static_cast<double>(p.multiplicity) * std::log(z - p.point);
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        throw PreconditionError("evaluation at a puncture of the cover");
    return acc;
}

CylinderPoint evaluate(const RationalCover& cover, Complex z)
{
    const Complex lg = cover.log_value(z);
    double t = std::fmod(lg.imag() / kTwoPi, 1.0);
    if (t < 0)
        t += 1.0;
    if (t >= 1.0)
        t = 0.0;
    return {lg.real() / kTwoPi, t};
}

WindingResult winding_multiplicity(const RationalCover& cover, Complex center, double radius, int samples)
{
    if (!(radius > 0))
        throw PreconditionError("winding radius must be positive");
    int inside = 0;
    for (const auto& p : all_points(cover)) {
        const double d = std::abs(p - center);
        if (std::abs(d - radius) <= 1e-12 * radius)
            throw PreconditionError("a puncture lies on the winding contour");
        if (d < radius)
            ++inside;
    }
    if (inside != 1)
        throw PreconditionError("winding contour must enclose exactly one puncture, encloses " + std::to_string(inside));
    return contour_winding(cover, center, radius, samples);
}

WindingResult winding_at_infinity(const RationalCover& cover, double radius, int samples)
{
    for (const auto& p : all_points(cover))
        if (std::abs(p) >= radius)
            throw PreconditionError("the contour around infinity must enclose every finite puncture");
    auto r = contour_winding(cover, 0.0, radius, samples);
    // A counterclockwise circle around all finite punctures winds clockwise around infinity.
    return {-r.winding, -r.measured, r.residue};
}

NeckShift neck_shift_check(int m, double r, int samples)
{
    if (m == 0)
        throw PreconditionError("neck multiplicity must be nonzero");
    if (r < 0)
        throw PreconditionError("neck half-length must be nonnegative");
    if (samples < (1 << 10))
        throw PreconditionError("neck quadrature needs at least 1024 samples");

    const RationalCover neck = m > 0 ? RationalCover({{0.0, m}}, {}) : RationalCover({}, {{0.0, -m}});
    auto boundary_mean = [&](double s) {
        // trapezoid rule on the periodic circle {s} x S^1
        double acc = 0.0;
        for (int j = 0; j < samples; ++j) {
            const double t = static_cast<double>(j) / samples;
            acc += evaluate(neck, std::exp(Complex(kTwoPi * s, kTwoPi * t))).s;
        }
        return acc / samples;
    };
    const double measured = boundary_mean(r) - boundary_mean(-r);
    if (!std::isfinite(measured))
        throw InvariantViolation("neck quadrature produced a non-finite value");
    return {measured, 2.0 * m * r};
}

RationalCover scale_family(const RationalCover& cover, Complex factor)
{
    if (factor == Complex(0.0))
        throw PreconditionError("scale factor must be nonzero");
    return RationalCover(cover.zeros(), cover.poles(), cover.scale() * factor);
}

RationalCover realize_profile(const MultiplicityProfile& profile, std::mt19937_64& rng, double min_separation)
{
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<Complex> pts;
    const std::size_t needed = profile.positives().size() + profile.negatives().size();
    int attempts = 0;
    while (pts.size() < needed) {
        if (++attempts > 100000)
            throw PreconditionError("could not place punctures with the requested separation");
        Complex z(coord(rng), coord(rng));
        if (std::abs(z) > 2.0)
            continue;
        bool ok = std::all_of(pts.begin(), pts.end(), [&](Complex w) { return std::abs(z - w) >= min_separation; });
        if (ok)
            pts.push_back(z);
    }
    std::vector<Puncture> zeros, poles;
    std::size_t i = 0;
    for (int m : profile.positives())
        poles.push_back({pts[i++], m});
    for (int m : profile.negatives())
        zeros.push_back({pts[i++], m});
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    std::uniform_real_distribution<double> modulus(0.5, 2.0);
    return RationalCover(std::move(zeros), std::move(poles), std::polar(modulus(rng), phase(rng)));
}

std::vector<PunctureReport> verify_multiplicities(const RationalCover& cover, int samples)
{
    const auto pts = all_points(cover);
    auto nearest = [&](Complex p) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& q : pts)
            if (q != p)
                d = std::min(d, std::abs(q - p));
        return std::isfinite(d) ? d : 1.0;
    };
    std::vector<PunctureReport> out;
    for (std::size_t k = 0; k < cover.poles().size(); ++k) {
        const auto& p = cover.poles()[k];
        out.push_back({"+" + std::to_string(k + 1), -p.multiplicity,
                       winding_multiplicity(cover, p.point, 0.4 * nearest(p.point), samples)});
    }
    for (std::size_t k = 0; k < cover.zeros().size(); ++k) {
        const auto& p = cover.zeros()[k];
        out.push_back({"-" + std::to_string(k + 1), p.multiplicity,
                       winding_multiplicity(cover, p.point, 0.4 * nearest(p.point), samples)});
    }
    return out;
}

}  // namespace orbicover
