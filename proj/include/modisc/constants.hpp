#ifndef MODISC_CONSTANTS_HPP
#define MODISC_CONSTANTS_HPP

#include <string>

namespace modisc {

class TriangleMesh;

/// Working exponent p in (2,inf) with its Hoelder adjoint p' = p/(p-1) and
/// the exponent p'' = p/(p-2) satisfying 2/p + 1/p'' = 1.
struct ExponentPair {
    double p;
    double p_prime;
    double p_pp;

    explicit ExponentPair(double p_);
};

/// Everything the W^{1,p} regularity bounds depend on.
struct RegularityInputs {
    double alpha;  // lower spectral bound
    double beta;   // upper spectral bound
    double P;      // integrability exponent of the data, P in (2, inf)
    double p;      // working exponent, 2 <= p <= P
    double C_L = 1.0;
    int d = 2;

    void validate() const;
};

/// Interpolation exponent eta(p,P) = (1/2 - 1/p) / (1/2 - 1/P) on
/// T = {2 < P < inf, 2 <= p <= P}; 0 at p = 2, 1 at p = P.
double eta(double p, double P);

/// Upper bound C_L * p^{d+1} for the Laplace W^{1,p}-regularity constant on
/// bounded C^1 domains, clamped from below by 1 (C_2 = 1 exactly).
double laplace_constant_bound(double p, int d, double C_L);

/// Largest admissible gradient-integrability exponent p*(t, P) for spectral
/// ratio t = alpha/beta and Laplace constant C_P; continuous, nondecreasing,
/// p*(0,P) = 2 and p*(t,P) = P for t >= 1 - 1/C_P. C_P = 1 returns P.
double p_star(double t, double P, double C_P);

/// W^{1,p}-regularity constant
///   C_reg = (1/beta) * C_P^{eta(p,P)} / (1 - C_P^{eta(p,P)} (1 - alpha/beta)).
/// Throws std::domain_error when the denominator is nonpositive, which
/// happens exactly when p >= p*(alpha/beta, P).
double c_reg(const RegularityInputs& in, double C_P);

/// Large-perturbation exponent cap together with its Taylor lower bound
///   p_max >= 2 + 4c (alpha/beta) / log C_P * (1/2 - 1/P).
struct PMaxResult {
    double p_max;
    double lower_bound;
};
PMaxResult p_max(double alpha_over_beta, double P, double C_P, double c);

enum class PerturbationRegime { Small, Large, Generic };

struct RegimeBound {
    PerturbationRegime regime;
    double constant;
};

/// Regularity constant by regime: small perturbations
/// (alpha/beta >= 1 - 1/(2 C_L P^{d+1})) give (2 C_L / beta) P^{d+1} for all
/// 2 <= p < P; large perturbations (alpha/beta <= 1 - 1/C_P) give
/// (1/beta) / ((1-alpha/beta)^c - (1-alpha/beta)) for 2 <= p < p_max;
/// otherwise the generic c_reg at the inputs' own p.
RegimeBound perturbation_regime_bound(const RegularityInputs& in, double c);

/// C(d) = 2^{d+2} + 2^{d+1} d (d+5) + (2 pi^{d/2} / Gamma(d/2)) d^{d/2-1}.
double czygmund_C(int d);

/// C(d,p) = 2 (p/(p-1) + p/(2-p))^{1/p} C(d)^{2/p-1} for 1 < p < 2.
double czygmund_Cdp(int d, double p);

/// Four-branch Calderon-Zygmund constant C1(d,p); satisfies C1(d,2) = 1,
/// C1(d,p) = C1(d,p') and C1 >= 1.
double czygmund_C1(int d, double p);

/// theta(r,t) = 2(t-r)/(r(t-2)), the exponent with 1/r = theta/2+(1-theta)/t.
/// Closure values: theta = 1 at r = 2 and theta = 0 at r = t.
double theta(double r, double t);

struct FriedrichsBound {
    double C_F;      // diam(Omega) / (sqrt(2) pi)
    double C_Omega;  // C_F / sqrt(alpha_lower)
};
FriedrichsBound friedrichs_bound(const TriangleMesh& mesh, double alpha_lower);
FriedrichsBound friedrichs_bound(double domain_diameter, double alpha_lower);

}  // namespace modisc

#endif
