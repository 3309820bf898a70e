#include "modisc/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "modisc/mesh.hpp"

namespace modisc {

ExponentPair::ExponentPair(double p_) : p(p_) {
    if (!(p > 2.0) || !std::isfinite(p))
        throw std::invalid_argument("ExponentPair: p must lie in (2, inf)");
    p_prime = p / (p - 1.0);
    p_pp = p / (p - 2.0);
}

void RegularityInputs::validate() const {
    if (!(alpha > 0.0) || !(beta >= alpha))
        throw std::invalid_argument("RegularityInputs: need 0 < alpha <= beta");
    if (!(P > 2.0)) throw std::invalid_argument("RegularityInputs: need P > 2");
    if (!(p >= 2.0) || !(p <= P))
        throw std::invalid_argument("RegularityInputs: need 2 <= p <= P");
    if (!(C_L >= 1.0)) throw std::invalid_argument("RegularityInputs: need C_L >= 1");
    if (d != 2 && d != 3) throw std::invalid_argument("RegularityInputs: d must be 2 or 3");
}

double eta(double p, double P) {
    if (!(P > 2.0) || !std::isfinite(P) || !(p >= 2.0) || !(p <= P))
        throw std::invalid_argument("eta: arguments outside T = {2 < P < inf, 2 <= p <= P}");
    return (0.5 - 1.0 / p) / (0.5 - 1.0 / P);
}

double laplace_constant_bound(double p, int d, double C_L) {
    if (!(p >= 2.0)) throw std::invalid_argument("laplace_constant_bound: need p >= 2");
    if (d != 2 && d != 3) throw std::invalid_argument("laplace_constant_bound: d must be 2 or 3");
    if (!(C_L >= 1.0)) throw std::invalid_argument("laplace_constant_bound: need C_L >= 1");
    return std::max(C_L * std::pow(p, d + 1), 1.0);
}

double p_star(double t, double P, double C_P) {
    if (!(t >= 0.0) || !(t <= 1.0)) throw std::invalid_argument("p_star: need t in [0,1]");
    if (!(P > 2.0)) throw std::invalid_argument("p_star: need P > 2");
    if (!(C_P >= 1.0)) throw std::invalid_argument("p_star: need C_P >= 1");
    if (C_P == 1.0) return P;  // Poisson case
    if (t >= 1.0 - 1.0 / C_P) return P;
    const double slope = std::log(1.0 / (1.0 - t)) / std::log(C_P) * (0.5 - 1.0 / P);
    return 1.0 / (0.5 - slope);
}

double c_reg(const RegularityInputs& in, double C_P) {
    in.validate();
    if (!(C_P >= 1.0)) throw std::invalid_argument("c_reg: need C_P >= 1");
    const double pow_eta = std::pow(C_P, eta(in.p, in.P));
    const double denom = 1.0 - pow_eta * (1.0 - in.alpha / in.beta);
    if (!(denom > 0.0))
        throw std::domain_error(
            "c_reg: denominator nonpositive (p >= p*(alpha/beta, P); reduce p)");
    return pow_eta / (in.beta * denom);
}

PMaxResult p_max(double alpha_over_beta, double P, double C_P, double c) {
    if (!(c > 0.0) || !(c < 1.0)) throw std::invalid_argument("p_max: need c in (0,1)");
    if (!(P > 2.0) || !(C_P > 1.0)) throw std::invalid_argument("p_max: need P > 2, C_P > 1");
    if (!(alpha_over_beta > 0.0) || alpha_over_beta > 1.0 - 1.0 / C_P)
        throw std::invalid_argument("p_max: outside the large-perturbation regime");
    const double half_gap = 0.5 - 1.0 / P;
    const double slope = c * std::log(1.0 / (1.0 - alpha_over_beta)) / std::log(C_P) * half_gap;
    PMaxResult r;
    r.p_max = 1.0 / (0.5 - slope);
    r.lower_bound = 2.0 + 4.0 * c * alpha_over_beta / std::log(C_P) * half_gap;
    return r;
}

RegimeBound perturbation_regime_bound(const RegularityInputs& in, double c) {
    in.validate();
    const double ratio = in.alpha / in.beta;
    const double P_pow = std::pow(in.P, in.d + 1);
    if (ratio >= 1.0 - 1.0 / (2.0 * in.C_L * P_pow))
        return {PerturbationRegime::Small, 2.0 * in.C_L * P_pow / in.beta};
    const double C_P = laplace_constant_bound(in.P, in.d, in.C_L);
    if (ratio <= 1.0 - 1.0 / C_P) {
        if (!(c > 0.0) || !(c < 1.0))
            throw std::invalid_argument("perturbation_regime_bound: need c in (0,1)");
        const double gap = 1.0 - ratio;
        return {PerturbationRegime::Large, 1.0 / (in.beta * (std::pow(gap, c) - gap))};
    }
    return {PerturbationRegime::Generic, c_reg(in, C_P)};
}

double czygmund_C(int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("czygmund_C: d must be 2 or 3");
    const double dd = d;
    return std::pow(2.0, d + 2) + std::pow(2.0, d + 1) * dd * (dd + 5.0) +
           2.0 * std::pow(std::numbers::pi, 0.5 * dd) / std::tgamma(0.5 * dd) *
               std::pow(dd, 0.5 * dd - 1.0);
}

double czygmund_Cdp(int d, double p) {
    if (!(p > 1.0) || !(p < 2.0)) throw std::invalid_argument("czygmund_Cdp: need p in (1,2)");
    const double Cd = czygmund_C(d);
    return 2.0 * std::pow(p / (p - 1.0) + p / (2.0 - p), 1.0 / p) * std::pow(Cd, 2.0 / p - 1.0);
}

double czygmund_C1(int d, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("czygmund_C1: need p in (1, inf)");
    if (p <= 1.5) return czygmund_Cdp(d, p);
    const double C32 = czygmund_Cdp(d, 1.5);
    if (p <= 2.0) return std::pow(C32, 3.0 / p * (2.0 - p));
    const double pprime = p / (p - 1.0);
    if (p < 3.0) return std::pow(C32, 3.0 / pprime * (2.0 - pprime));
    return czygmund_Cdp(d, pprime);
}

double theta(double r, double t) {
    if (r == t) return 0.0;
    if (!(t > 2.0)) throw std::invalid_argument("theta: need t > 2");
    if (r == 2.0) return 1.0;
    if (!(r > 2.0) || !(r < t)) throw std::invalid_argument("theta: need 2 <= r <= t");
    return 2.0 * (t - r) / (r * (t - 2.0));
}

FriedrichsBound friedrichs_bound(double domain_diameter, double alpha_lower) {
    if (!(alpha_lower > 0.0))
        throw std::invalid_argument("friedrichs_bound: alpha must be positive");
    FriedrichsBound b;
    b.C_F = domain_diameter / (std::numbers::sqrt2 * std::numbers::pi);
    b.C_Omega = b.C_F / std::sqrt(alpha_lower);
    return b;
}

FriedrichsBound friedrichs_bound(const TriangleMesh& mesh, double alpha_lower) {
    return friedrichs_bound(mesh.diameter(), alpha_lower);
}

}  // namespace modisc
