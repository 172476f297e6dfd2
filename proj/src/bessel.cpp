#include "coopemit/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

namespace coopemit {

double bessel(BesselKind kind, int order, double x) {
    if (order != 0 && order != 1)
        throw std::domain_error("bessel: only orders 0 and 1 are supported, got " + std::to_string(order));
    if (std::isnan(x)) throw std::domain_error("bessel: NaN argument");
    if (kind == BesselKind::first) {
        if (x < 0.0) throw std::domain_error("bessel: J_n requires x >= 0");
        return boost::math::cyl_bessel_j(order, x);
    }
    if (!(x > 0.0)) throw std::domain_error("bessel: Y_n requires x > 0");
    return boost::math::cyl_neumann(order, x);
}

} // namespace coopemit
