#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include "glsbi/error.hpp"

namespace glsbi {

// Chi-squared distribution through the regularized lower incomplete gamma
// function P(k/2, x/2) and its inverse.

inline double chi_squared_cdf(double x, double dof) {
    if (!(dof > 0.0))
        throw Error(Errc::parameter, "chi-squared degrees of freedom must be positive");
    if (x <= 0.0)
        return 0.0;
    return boost::math::gamma_p(0.5 * dof, 0.5 * x);
}

inline double chi_squared_sf(double x, double dof) {
    if (!(dof > 0.0))
        throw Error(Errc::parameter, "chi-squared degrees of freedom must be positive");
    if (x <= 0.0)
        return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

inline double chi_squared_quantile(double prob, double dof) {
    if (!(prob > 0.0 && prob < 1.0))
        throw Error(Errc::parameter, "chi-squared quantile needs a probability in (0,1)");
    if (!(dof > 0.0))
        throw Error(Errc::parameter, "chi-squared degrees of freedom must be positive");
    return 2.0 * boost::math::gamma_p_inv(0.5 * dof, prob);
}

} // namespace glsbi
