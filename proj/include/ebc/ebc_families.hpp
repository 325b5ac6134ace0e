#pragma once

#include <stdexcept>
#include <string>

#include "ebc/dtn.hpp"
#include "ebc/sphere.hpp"

namespace ebc {

// The nine effective interface families.  Parameters are carried inline;
// only the ones named by the active kind are meaningful.
struct EbcFamily {
    enum class Kind {
        DecoupledNeumann,
        RobinContact,
        DtnCoupling,
        PerfectTransmission,
        FluxJumpLB,
        ConstantTraceDecoupled,
        ConstantTraceRobin,
        ConstantTraceTransmission,
    };

    Kind kind = Kind::PerfectTransmission;
    double b = 0.0;        // contact coefficient (RobinContact, ConstantTraceRobin)
    double gamma = 0.0;    // DtN strength (DtnCoupling)
    Height H = Height(1.0);// DtN strip height (DtnCoupling)
    double beta = 0.0;     // surface diffusivity (FluxJumpLB)

    static EbcFamily decoupled_neumann() { return {Kind::DecoupledNeumann, 0, 0, Height(1), 0}; }
    static EbcFamily robin_contact(double b) {
        require_positive(b, "RobinContact b");
        return {Kind::RobinContact, b, 0, Height(1), 0};
    }
    static EbcFamily dtn_coupling(double gamma, Height H) {
        require_positive(gamma, "DtnCoupling gamma");
        return {Kind::DtnCoupling, 0, gamma, H, 0};
    }
    static EbcFamily perfect_transmission() { return {Kind::PerfectTransmission, 0, 0, Height(1), 0}; }
    static EbcFamily flux_jump_lb(double beta) {
        if (beta < 0.0) throw std::invalid_argument("FluxJumpLB beta must be >= 0");
        return {Kind::FluxJumpLB, 0, 0, Height(1), beta};
    }
    static EbcFamily constant_trace_decoupled() { return {Kind::ConstantTraceDecoupled, 0, 0, Height(1), 0}; }
    static EbcFamily constant_trace_robin(double b) {
        require_positive(b, "ConstantTraceRobin b");
        return {Kind::ConstantTraceRobin, b, 0, Height(1), 0};
    }
    static EbcFamily constant_trace_transmission() { return {Kind::ConstantTraceTransmission, 0, 0, Height(1), 0}; }

    std::string name() const {
        switch (kind) {
            case Kind::DecoupledNeumann: return "DecoupledNeumann";
            case Kind::RobinContact: return "RobinContact";
            case Kind::DtnCoupling: return "DtnCoupling";
            case Kind::PerfectTransmission: return "PerfectTransmission";
            case Kind::FluxJumpLB: return "FluxJumpLB";
            case Kind::ConstantTraceDecoupled: return "ConstantTraceDecoupled";
            case Kind::ConstantTraceRobin: return "ConstantTraceRobin";
            case Kind::ConstantTraceTransmission: return "ConstantTraceTransmission";
        }
        return "?";
    }

  private:
    static void require_positive(double v, const char* what) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
    }
};

// Canonical per-mode interface data.  Sign convention throughout: the
// interface normal points out of the inner ball, so both normal derivatives
// below are plain radial derivatives at r1.
//   Coefficients     : k1 v1'(r1-) = c11 v1 + c12 v2,
//                      k2 v2'(r1+) = c21 v1 + c22 v2  (traces v1, v2)
//   ValueContinuity  : v1 = v2 = v and k1 v1' - k2 v2' = -flux_jump * v,
//                      flux_jump = beta * lambda_l >= 0 (mode form of the
//                      surface-diffusion jump beta * Laplace-Beltrami v)
//   DirichletZeroBoth: v1 = v2 = 0 (constant-trace families, l >= 1)
struct ModeBoundaryCoupling {
    enum class Form { Coefficients, ValueContinuity, DirichletZeroBoth };

    Form form = Form::ValueContinuity;
    double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;
    double flux_jump = 0.0;

    static ModeBoundaryCoupling coefficients(double c11, double c12, double c21, double c22) {
        ModeBoundaryCoupling c;
        c.form = Form::Coefficients;
        c.c11 = c11; c.c12 = c12; c.c21 = c21; c.c22 = c22;
        return c;
    }
    static ModeBoundaryCoupling value_continuity(double flux_jump) {
        ModeBoundaryCoupling c;
        c.form = Form::ValueContinuity;
        c.flux_jump = flux_jump;
        return c;
    }
    static ModeBoundaryCoupling dirichlet_zero_both() {
        ModeBoundaryCoupling c;
        c.form = Form::DirichletZeroBoth;
        return c;
    }
};

// Table-1 cell -> per-mode interface data for degree l.
inline ModeBoundaryCoupling mode_boundary_conditions(const EbcFamily& family, int l,
                                                     const SphereGeometry& geom) {
    if (l < 0) throw std::invalid_argument("mode_boundary_conditions: l >= 0");
    const double lam = lb_eigenvalue(l, geom);
    using K = EbcFamily::Kind;
    switch (family.kind) {
        case K::DecoupledNeumann:
            return ModeBoundaryCoupling::coefficients(0, 0, 0, 0);
        case K::RobinContact:
            return ModeBoundaryCoupling::coefficients(-family.b, family.b,
                                                      -family.b, family.b);
        case K::DtnCoupling: {
            const double j1 = dtn_mode_multiplier(DtnKind::FirstKind, lam, family.H);
            const double j2 = dtn_mode_multiplier(DtnKind::SecondKind, lam, family.H);
            const double g = family.gamma;
            return ModeBoundaryCoupling::coefficients(g * j1, -g * j2, g * j2, -g * j1);
        }
        case K::PerfectTransmission:
            return ModeBoundaryCoupling::value_continuity(0.0);
        case K::FluxJumpLB:
            return ModeBoundaryCoupling::value_continuity(family.beta * lam);
        case K::ConstantTraceDecoupled:
            if (l == 0) return ModeBoundaryCoupling::coefficients(0, 0, 0, 0);
            return ModeBoundaryCoupling::dirichlet_zero_both();
        case K::ConstantTraceRobin:
            if (l == 0)
                return ModeBoundaryCoupling::coefficients(-family.b, family.b,
                                                          -family.b, family.b);
            return ModeBoundaryCoupling::dirichlet_zero_both();
        case K::ConstantTraceTransmission:
            if (l == 0) return ModeBoundaryCoupling::value_continuity(0.0);
            return ModeBoundaryCoupling::dirichlet_zero_both();
    }
    throw std::logic_error("mode_boundary_conditions: unknown family");
}

} // namespace ebc
