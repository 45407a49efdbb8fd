#pragma once

#include <array>

#include "fqt/funcfield.hpp"

namespace fqt {

// Isotropy of a_1 x_1^2 + a_2 x_2^2 + a_3 x_3^2 over the f-adic completion.
// Exponents are reduced mod 2 first; with mixed parities the test is whether
// -f^{-v_f(a_i a_j)} a_i a_j is a square mod f for the equal-parity pair (i, j).
bool ternary_local_finite(const Poly& a1, const Poly& a2, const Poly& a3, const Poly& f);

// The same question over F_q((1/t)): degree parities and leading coefficients.
bool ternary_local_infinity(const Poly& a1, const Poly& a2, const Poly& a3);

// Quaternary form with squarefree coefficients at a finite place. When f
// divides exactly two coefficients the criterion is that -a_k a_l or
// -(a_i/f)(a_j/f) is a square mod f; all other divisibility patterns reduce to
// an isotropic ternary subform or to the unramified case and yield true.
bool quaternary_local_finite(const std::array<Poly, 4>& a, const Poly& f);

// Quaternary form with squarefree coefficients at infinity. Three coefficients
// sharing a degree parity force isotropy; in the balanced two-even/two-odd case
// the form is anisotropic iff -c_i c_j and -c_k c_l are both non-squares.
bool quaternary_local_infinity(const std::array<Poly, 4>& a);

enum class AnisoCondition {
    BinaryNonsquare,
    TernaryFiniteLemma,
    TernaryInfinityLemma,
    QuaternaryFiniteLemma,
    QuaternaryInfinityLemma,
    UnaryRegular,
};

const char* to_string(AnisoCondition c);
AnisoCondition aniso_condition_from_string(const std::string& s);

// Certificate of anisotropy: the place, the named failed test, and the
// coefficients it was run on. verify() reruns that test.
struct AnisotropyCertificate {
    Place place;
    int dim = 0;
    AnisoCondition condition = AnisoCondition::BinaryNonsquare;
    PVec coeffs;   // coefficients the local test was applied to
    RVec witness;  // the residues / leading coefficients / non-square element checked
    std::string note;

    bool verify() const;
};

AnisotropyCertificate make_binary_certificate(const RatFunc& ratio, const FieldPtr& F);

}  // namespace fqt
