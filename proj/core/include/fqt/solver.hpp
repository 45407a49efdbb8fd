#pragma once

#include <array>
#include <optional>

#include "fqt/localtest.hpp"
#include "fqt/qform.hpp"

namespace fqt {

struct ZeroVector {
    PVec v;          // primitive polynomial zero in the caller's coordinates
    Transform trace;  // substitutions accumulated by the solver (informational)
};

struct SolveOutcome {
    std::optional<ZeroVector> zero;
    std::optional<AnisotropyCertificate> certificate;

    bool is_zero() const { return zero.has_value(); }
    static SolveOutcome of_zero(PVec v, Transform trace) {
        SolveOutcome o;
        o.zero = ZeroVector{std::move(v), std::move(trace)};
        return o;
    }
    static SolveOutcome of_certificate(AnisotropyCertificate c) {
        SolveOutcome o;
        o.certificate = std::move(c);
        return o;
    }
};

// Residue-class data produced by the splitting lemmas: for every monic
// irreducible a = b (mod D) with deg(a) = epsilon (mod 2), both halves of the
// split represent f_1...f_k (g_1...g_l) a.
struct SplitPlan {
    std::vector<size_t> sigma;  // slot r holds original coefficient index sigma[r]; the first two are the binary side
    int epsilon = 0;
    Poly b, D;
    PVec f_list, g_list;  // common prime divisors of the two sides (g_list used by the quaternary split)

    Poly f_product() const;
    Poly g_product() const;
};

// Nontrivial zero of a regular diagonal form with constant coefficients;
// n >= 3 always succeeds, n = 2 decides by the square test.
SolveOutcome solve_const_form(const std::vector<Fq>& coeffs, Rng& rng);

// Zero of a_1 x^2 + a_2 y^2 from the square root of -a_2/a_1.
SolveOutcome solve_binary(const RatFunc& a1, const RatFunc& a2, Rng& rng);

// Ternary solver. Decides isotropy against the local conditions at the primes
// of the minimized determinant and, for isotropic forms, returns a zero with
// deg(v_i) <= deg(a_j a_k)/2 for the input coefficients.
SolveOutcome solve_ternary(const Poly& a1, const Poly& a2, const Poly& a3, Rng& rng);

// Vector v with form(v) = c, or nullopt when no representation exists.
std::optional<RVec> represent_value(const DiagForm& form, const Poly& c, Rng& rng);

struct Minimized {
    DiagForm form;
    Transform transform;
};

// Quaternary minimization: squarefree coefficients, cube-free determinant, the
// two-divisor square condition, and a square-majority of leading coefficients.
// Detects anisotropy at a finite place while repairing the third property.
std::optional<Minimized> minimize_quaternary(const std::array<Poly, 4>& a, Rng& rng,
                                             AnisotropyCertificate* cert_out);

// Both minimize_quinary outputs are unconditional: squarefree coefficients and
// a cube-free determinant.
Minimized minimize_quinary(const std::array<Poly, 5>& a, Rng& rng);

// Splitting for a minimized quaternary form whose binary subforms are
// anisotropic and which is isotropic at infinity.
SplitPlan split_quaternary(const DiagForm& minimized, Rng& rng);

// Splitting for a squarefree cube-free quinary form whose ternary subforms are
// anisotropic.
SplitPlan split_quinary(const DiagForm& minimized, Rng& rng);

// Algorithm 1: zero of a diagonal quaternary form or an anisotropy
// certificate (finite place from minimization, or infinity).
SolveOutcome solve_quaternary(const std::array<Poly, 4>& a, Rng& rng);

// Algorithm 2: zero of a diagonal quinary form; never anisotropic.
SolveOutcome solve_quinary(const std::array<Poly, 5>& a, Rng& rng);

// Diagonal dispatch for any dimension >= 1 (>= 6 restricts to the first five
// variables).
SolveOutcome solve_diag(const DiagForm& form, Rng& rng);

// Full pipeline for an arbitrary Gram matrix: radical shortcut,
// orthogonalization, denominator clearing, dimension dispatch, pull-back.
SolveOutcome solve_any(const GramMatrix& A, Rng& rng);

// Zero of a constant quadratic form given by a symmetric F_q Gram matrix.
// Shared by the constant-form entry point and the ternary solver's
// leading-coefficient step. nullopt iff the form is anisotropic over F_q.
std::optional<FVec> const_form_zero(const FMat& gram, const FieldPtr& F, Rng& rng);

}  // namespace fqt
