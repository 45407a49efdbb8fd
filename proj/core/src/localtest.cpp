#include "fqt/localtest.hpp"

namespace fqt {

namespace {

Poly strip_prime(const Poly& a, const Poly& f, unsigned times) {
    Poly r = a;
    for (unsigned i = 0; i < times; ++i) r = r / f;
    return r;
}

}  // namespace

bool ternary_local_finite(const Poly& a1, const Poly& a2, const Poly& a3, const Poly& f) {
    FQT_REQUIRE(!a1.is_zero() && !a2.is_zero() && !a3.is_zero(), "ternary local test needs nonzero coefficients");
    std::array<Poly, 3> a = {a1, a2, a3};
    std::array<unsigned, 3> v;
    for (size_t i = 0; i < 3; ++i) v[i] = a[i].is_constant() ? 0 : multiplicity(f, a[i]);
    if ((v[0] & 1) == (v[1] & 1) && (v[1] & 1) == (v[2] & 1)) return true;
    // exactly two share a parity
    size_t i = 0, j = 1;
    if ((v[0] & 1) == (v[1] & 1)) {
        i = 0, j = 1;
    } else if ((v[0] & 1) == (v[2] & 1)) {
        i = 0, j = 2;
    } else {
        i = 1, j = 2;
    }
    Poly prod = strip_prime(a[i], f, v[i]) * strip_prime(a[j], f, v[j]);
    // remaining even power of f in the product is a square and cannot change the class
    return residue_is_square(-prod, f);
}

bool ternary_local_infinity(const Poly& a1, const Poly& a2, const Poly& a3) {
    FQT_REQUIRE(!a1.is_zero() && !a2.is_zero() && !a3.is_zero(), "ternary local test needs nonzero coefficients");
    std::array<int64_t, 3> d = {a1.deg(), a2.deg(), a3.deg()};
    std::array<Fq, 3> c = {a1.lc(), a2.lc(), a3.lc()};
    if ((d[0] & 1) == (d[1] & 1) && (d[1] & 1) == (d[2] & 1)) return true;
    size_t i = 0, j = 1;
    if ((d[0] & 1) == (d[1] & 1)) {
        i = 0, j = 1;
    } else if ((d[0] & 1) == (d[2] & 1)) {
        i = 0, j = 2;
    } else {
        i = 1, j = 2;
    }
    return ff_is_square(-(c[i] * c[j]));
}

bool quaternary_local_finite(const std::array<Poly, 4>& a, const Poly& f) {
    std::array<unsigned, 4> v;
    for (size_t i = 0; i < 4; ++i) {
        FQT_REQUIRE(!a[i].is_zero(), "quaternary local test needs nonzero coefficients");
        FQT_REQUIRE(squarefree_decompose(a[i]).square_root.is_one(),
                    "quaternary local test requires squarefree coefficients");
        v[i] = a[i].is_constant() ? 0 : multiplicity(f, a[i]);
    }
    std::vector<size_t> divided, free;
    for (size_t i = 0; i < 4; ++i) (v[i] ? divided : free).push_back(i);
    // 0, 1, 3 or 4 divided coefficients leave a ternary subform with equal
    // parities, hence local isotropy
    if (divided.size() != 2) return true;
    size_t i = divided[0], j = divided[1], k = free[0], l = free[1];
    if (residue_is_square(-(a[k] * a[l]), f)) return true;
    return residue_is_square(-((a[i] / f) * (a[j] / f)), f);
}

bool quaternary_local_infinity(const std::array<Poly, 4>& a) {
    std::array<int64_t, 4> d;
    std::array<Fq, 4> c;
    for (size_t i = 0; i < 4; ++i) {
        FQT_REQUIRE(!a[i].is_zero(), "quaternary local test needs nonzero coefficients");
        FQT_REQUIRE(squarefree_decompose(a[i]).square_root.is_one(),
                    "quaternary local test requires squarefree coefficients");
        d[i] = a[i].deg();
        c[i] = a[i].lc();
    }
    std::vector<size_t> even, odd;
    for (size_t i = 0; i < 4; ++i) ((d[i] & 1) ? odd : even).push_back(i);
    // three coefficients of equal degree parity: drop the fourth
    if (even.size() != 2) return true;
    bool even_pair_square = ff_is_square(-(c[even[0]] * c[even[1]]));
    bool odd_pair_square = ff_is_square(-(c[odd[0]] * c[odd[1]]));
    return even_pair_square || odd_pair_square;
}

const char* to_string(AnisoCondition c) {
    switch (c) {
        case AnisoCondition::BinaryNonsquare: return "binary-nonsquare";
        case AnisoCondition::TernaryFiniteLemma: return "ternary-finite";
        case AnisoCondition::TernaryInfinityLemma: return "ternary-infinity";
        case AnisoCondition::QuaternaryFiniteLemma: return "quaternary-finite";
        case AnisoCondition::QuaternaryInfinityLemma: return "quaternary-infinity";
        case AnisoCondition::UnaryRegular: return "unary-regular";
    }
    return "?";
}

AnisoCondition aniso_condition_from_string(const std::string& s) {
    for (AnisoCondition c : {AnisoCondition::BinaryNonsquare, AnisoCondition::TernaryFiniteLemma,
                             AnisoCondition::TernaryInfinityLemma, AnisoCondition::QuaternaryFiniteLemma,
                             AnisoCondition::QuaternaryInfinityLemma, AnisoCondition::UnaryRegular}) {
        if (s == to_string(c)) return c;
    }
    throw domain_error("unknown anisotropy condition '" + s + "'");
}

bool AnisotropyCertificate::verify() const {
    switch (condition) {
        case AnisoCondition::UnaryRegular:
            return dim == 1 && coeffs.size() == 1 && !coeffs[0].is_zero();
        case AnisoCondition::BinaryNonsquare:
            return dim == 2 && witness.size() == 1 && !witness[0].is_zero() && !rf_is_square(witness[0]);
        case AnisoCondition::TernaryFiniteLemma:
            return dim == 3 && coeffs.size() == 3 && !place.infinite &&
                   !ternary_local_finite(coeffs[0], coeffs[1], coeffs[2], place.f);
        case AnisoCondition::TernaryInfinityLemma:
            return dim == 3 && coeffs.size() == 3 && place.infinite &&
                   !ternary_local_infinity(coeffs[0], coeffs[1], coeffs[2]);
        case AnisoCondition::QuaternaryFiniteLemma:
            return dim == 4 && coeffs.size() == 4 && !place.infinite &&
                   !quaternary_local_finite(std::array<Poly, 4>{coeffs[0], coeffs[1], coeffs[2], coeffs[3]}, place.f);
        case AnisoCondition::QuaternaryInfinityLemma:
            return dim == 4 && coeffs.size() == 4 && place.infinite &&
                   !quaternary_local_infinity(std::array<Poly, 4>{coeffs[0], coeffs[1], coeffs[2], coeffs[3]});
    }
    return false;
}

AnisotropyCertificate make_binary_certificate(const RatFunc& ratio, const FieldPtr& F) {
    FQT_CHECK(!ratio.is_zero() && !rf_is_square(ratio), "binary certificate requires a non-square ratio");
    AnisotropyCertificate cert;
    cert.dim = 2;
    cert.condition = AnisoCondition::BinaryNonsquare;
    cert.witness = {ratio};
    // pin a concrete place where the ratio is locally a non-square: a prime of
    // odd multiplicity if one exists, otherwise infinity (non-square leading
    // scalar, even valuation everywhere)
    auto nsq = squarefree_decompose(ratio.num());
    auto dsq = squarefree_decompose(ratio.den());
    Poly oddpart = nsq.squarefree * dsq.squarefree;
    if (!oddpart.is_constant()) {
        Rng rng(0);
        auto fac = factor(oddpart, rng);
        cert.place = Place::finite(fac.factors.front().first);
    } else {
        cert.place = Place::infinity(F);
    }
    return cert;
}

}  // namespace fqt
