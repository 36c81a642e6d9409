#include "dcg/predicates.hpp"

#include <cmath>
#include <gmpxx.h>

namespace dcg {
namespace {

constexpr double kEps = 0x1.0p-53;
// Static filter bounds from Shewchuk's adaptive predicates.
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

int sign_of(const mpq_class& v) { return sgn(v); }

int orient_exact(Point a, Point b, Point c) {
    const mpq_class ax(a.real()), ay(a.imag());
    const mpq_class bx(b.real()), by(b.imag());
    const mpq_class cx(c.real()), cy(c.imag());
    const mpq_class det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    return sign_of(det);
}

int incircle_exact(Point a, Point b, Point c, Point d) {
    const mpq_class dx(d.real()), dy(d.imag());
    const mpq_class adx = mpq_class(a.real()) - dx, ady = mpq_class(a.imag()) - dy;
    const mpq_class bdx = mpq_class(b.real()) - dx, bdy = mpq_class(b.imag()) - dy;
    const mpq_class cdx = mpq_class(c.real()) - dx, cdy = mpq_class(c.imag()) - dy;
    const mpq_class alift = adx * adx + ady * ady;
    const mpq_class blift = bdx * bdx + bdy * bdy;
    const mpq_class clift = cdx * cdx + cdy * cdy;
    const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                          clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

}  // namespace

int orient2d(Point a, Point b, Point c) {
    const double detleft = (a.real() - c.real()) * (b.imag() - c.imag());
    const double detright = (a.imag() - c.imag()) * (b.real() - c.real());
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kOrientBound * detsum) return det > 0 ? 1 : -1;
    return orient_exact(a, b, c);
}

int incircle(Point a, Point b, Point c, Point d) {
    const double adx = a.real() - d.real(), ady = a.imag() - d.imag();
    const double bdx = b.real() - d.real(), bdy = b.imag() - d.imag();
    const double cdx = c.real() - d.real(), cdy = c.imag() - d.imag();

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double alift = adx * adx + ady * ady;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double blift = bdx * bdx + bdy * bdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > kIncircleBound * permanent) return det > 0 ? 1 : -1;
    return incircle_exact(a, b, c, d);
}

}  // namespace dcg
