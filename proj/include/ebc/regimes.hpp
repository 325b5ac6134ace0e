#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "ebc/ebc_families.hpp"

namespace ebc {

// Power-law scaling of the layer conductivities:
//   sigma(delta) = c_sigma * delta^p_sigma,  mu(delta) = c_mu * delta^p_mu.
// Limits then reduce to exact exponent arithmetic.
struct ScalingLaw {
    double c_sigma = 1.0, p_sigma = 0.0;
    double c_mu = 1.0, p_mu = 0.0;

    ScalingLaw() = default;
    ScalingLaw(double cs, double ps, double cm, double pm)
        : c_sigma(cs), p_sigma(ps), c_mu(cm), p_mu(pm) {
        if (!(c_sigma > 0.0) || !(c_mu > 0.0))
            throw std::invalid_argument("ScalingLaw: coefficients must be positive");
        if (!std::isfinite(p_sigma) || !std::isfinite(p_mu))
            throw std::invalid_argument("ScalingLaw: exponents must be finite");
    }

    double sigma(double delta) const { return c_sigma * std::pow(delta, p_sigma); }
    double mu(double delta) const { return c_mu * std::pow(delta, p_mu); }
};

struct ExtendedLimit {
    enum class Kind { Zero, Finite, Infinite };
    Kind kind = Kind::Zero;
    double value = 0.0; // meaningful only for Finite (strictly positive)

    static ExtendedLimit zero() { return {Kind::Zero, 0.0}; }
    static ExtendedLimit finite(double v) {
        if (!(v > 0.0)) throw std::invalid_argument("ExtendedLimit: finite value must be > 0");
        return {Kind::Finite, v};
    }
    static ExtendedLimit infinite() { return {Kind::Infinite, 0.0}; }

    bool is_zero() const { return kind == Kind::Zero; }
    bool is_finite() const { return kind == Kind::Finite; }
    bool is_infinite() const { return kind == Kind::Infinite; }

    std::string describe() const {
        switch (kind) {
            case Kind::Zero: return "0";
            case Kind::Finite: return std::to_string(value);
            case Kind::Infinite: return "inf";
        }
        return "?";
    }
};

struct LimitTriple {
    ExtendedLimit b;     // lim sigma/delta
    ExtendedLimit gamma; // lim sqrt(sigma*mu)
    ExtendedLimit beta;  // lim mu*delta
};

// Exponent sign decides the limit: positive -> 0, zero -> the coefficient,
// negative -> infinity.  gamma uses the square-root convention
// gamma = lim sqrt(sigma*mu).
inline LimitTriple limits_of(const ScalingLaw& law) {
    auto from_exponent = [](double p, double coeff) {
        if (p > 0.0) return ExtendedLimit::zero();
        if (p == 0.0) return ExtendedLimit::finite(coeff);
        return ExtendedLimit::infinite();
    };
    LimitTriple t;
    t.b = from_exponent(law.p_sigma - 1.0, law.c_sigma);
    t.gamma = from_exponent(0.5 * (law.p_sigma + law.p_mu),
                            std::sqrt(law.c_sigma * law.c_mu));
    t.beta = from_exponent(law.p_mu + 1.0, law.c_mu);
    return t;
}

// sigma * delta^3 -> 0 iff the exponent p_sigma + 3 is positive.
inline bool check_sigma_delta_cubed(const ScalingLaw& law) {
    return law.p_sigma + 3.0 > 0.0;
}

struct RegimeCell {
    int case_id = 1; // 1: b=0, 2: b finite, 3: b=inf
    ExtendedLimit b, gamma, beta;
    bool feasible = false;
    std::string reason; // populated when infeasible
    EbcFamily family;   // meaningful only when feasible
    bool requires_sigma_delta_cubed = false;
    bool sigma_delta_cubed_ok = true;
};

namespace detail {

// gamma^2 / b in the extended sense; indeterminate forms (0/0, inf/inf)
// admit any beta.
enum class ExtendedRatio { Zero, Finite, Infinite, Any };

inline ExtendedRatio gamma_sq_over_b(const ExtendedLimit& gamma, const ExtendedLimit& b,
                                     double& value) {
    using K = ExtendedLimit::Kind;
    const K g2 = gamma.kind; // gamma^2 has the same kind as gamma
    if (g2 == K::Zero && b.kind == K::Zero) return ExtendedRatio::Any;
    if (g2 == K::Infinite && b.kind == K::Infinite) return ExtendedRatio::Any;
    if (b.kind == K::Zero) return ExtendedRatio::Infinite;     // nonzero / 0
    if (b.kind == K::Infinite)
        return g2 == K::Infinite ? ExtendedRatio::Infinite : ExtendedRatio::Zero;
    // b finite
    if (g2 == K::Zero) return ExtendedRatio::Zero;
    if (g2 == K::Infinite) return ExtendedRatio::Infinite;
    value = gamma.value * gamma.value / b.value;
    return ExtendedRatio::Finite;
}

} // namespace detail

// Table-1 lookup for an explicit (b, gamma, beta) triple.  A triple is
// feasible iff beta = gamma^2 / b holds in the extended sense; the dashed
// cells are exactly the violations.
inline RegimeCell classify_triple(const LimitTriple& t) {
    RegimeCell cell;
    cell.b = t.b;
    cell.gamma = t.gamma;
    cell.beta = t.beta;
    cell.case_id = t.b.is_zero() ? 1 : (t.b.is_finite() ? 2 : 3);

    double ratio_value = 0.0;
    const auto ratio = detail::gamma_sq_over_b(t.gamma, t.b, ratio_value);
    using R = detail::ExtendedRatio;
    const bool consistent =
        ratio == R::Any ||
        (ratio == R::Zero && t.beta.is_zero()) ||
        (ratio == R::Infinite && t.beta.is_infinite()) ||
        (ratio == R::Finite && t.beta.is_finite());
    if (!consistent) {
        cell.feasible = false;
        cell.reason = "beta = gamma^2/b violated: gamma^2/b is " +
                      std::string(ratio == R::Zero ? "0" : ratio == R::Infinite ? "inf" : "finite") +
                      " but beta is " + t.beta.describe();
        return cell;
    }
    cell.feasible = true;

    switch (cell.case_id) {
        case 1:
            if (t.gamma.is_zero())
                cell.family = EbcFamily::decoupled_neumann();
            else if (t.gamma.is_finite())
                cell.family = EbcFamily::dtn_coupling(t.gamma.value, Height::infinite());
            else
                cell.family = EbcFamily::constant_trace_decoupled();
            break;
        case 2:
            if (t.gamma.is_zero())
                cell.family = EbcFamily::robin_contact(t.b.value);
            else if (t.gamma.is_finite())
                cell.family = EbcFamily::dtn_coupling(
                    t.gamma.value, Height(t.beta.value / t.gamma.value));
            else
                cell.family = EbcFamily::constant_trace_robin(t.b.value);
            break;
        case 3:
            if (t.beta.is_zero())
                cell.family = EbcFamily::perfect_transmission();
            else if (t.beta.is_finite())
                cell.family = EbcFamily::flux_jump_lb(t.beta.value);
            else
                cell.family = EbcFamily::constant_trace_transmission();
            break;
    }
    return cell;
}

// Full classification of a scaling law.  The sigma*delta^3 side condition is
// required exactly in Case 3 with mu/sigma -> 0 (p_mu > p_sigma); violating
// it does not make the cell infeasible, it flags the run.
inline RegimeCell classify(const ScalingLaw& law) {
    RegimeCell cell = classify_triple(limits_of(law));
    cell.requires_sigma_delta_cubed = (cell.case_id == 3 && law.p_mu > law.p_sigma);
    cell.sigma_delta_cubed_ok = check_sigma_delta_cubed(law);
    return cell;
}

} // namespace ebc
