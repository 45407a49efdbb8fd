#include "doctest.h"
#include "fqt/localtest.hpp"
#include "support/local_oracle.hpp"

using namespace fqt;
using fqt::testsupport::brute_local_solvable_cached;
using fqt::testsupport::brute_local_solvable_infinity;
using fqt::testsupport::infinity_rewrite;

namespace {
Poly P(const FieldPtr& F, const std::string& s) { return parse_poly(F, s); }
}  // namespace

TEST_CASE("ternary local tests, fixed values") {
    auto F3 = Field::make(3);
    auto F5 = Field::make(5);
    Poly t3 = P(F3, "t"), t5 = P(F5, "t");

    CHECK_FALSE(ternary_local_finite(P(F3, "t"), P(F3, "1"), P(F3, "1"), t3));
    CHECK(ternary_local_finite(P(F5, "t"), P(F5, "1"), P(F5, "1"), t5));
    CHECK(ternary_local_finite(P(F3, "1"), P(F3, "1"), P(F3, "1"), t3));
    CHECK(ternary_local_finite(P(F5, "1"), P(F5, "1"), P(F5, "1"), t5));

    CHECK(ternary_local_infinity(P(F3, "t"), P(F3, "t^3"), P(F3, "2*t")));  // all odd degrees
    CHECK_FALSE(ternary_local_infinity(P(F3, "1"), P(F3, "1"), P(F3, "t")));
    CHECK(ternary_local_infinity(P(F5, "1"), P(F5, "1"), P(F5, "t")));
}

TEST_CASE("quaternary local tests, fixed values") {
    auto F3 = Field::make(3);
    auto F5 = Field::make(5);

    CHECK_FALSE(quaternary_local_finite({P(F3, "t"), P(F3, "t"), P(F3, "1"), P(F3, "1")}, P(F3, "t")));
    CHECK(quaternary_local_finite({P(F5, "t"), P(F5, "t"), P(F5, "1"), P(F5, "1")}, P(F5, "t")));
    // f does not divide the product of the coefficients
    CHECK(quaternary_local_finite({P(F3, "t"), P(F3, "t"), P(F3, "1"), P(F3, "1")}, P(F3, "t+1")));
    // f divides exactly one or three coefficients
    CHECK(quaternary_local_finite({P(F3, "t"), P(F3, "1"), P(F3, "1"), P(F3, "1")}, P(F3, "t")));
    CHECK(quaternary_local_finite({P(F3, "t"), P(F3, "t"), P(F3, "t"), P(F3, "1")}, P(F3, "t")));

    CHECK_THROWS_AS(quaternary_local_finite({P(F3, "t^2"), P(F3, "1"), P(F3, "1"), P(F3, "1")}, P(F3, "t")),
                    domain_error);

    CHECK_FALSE(quaternary_local_infinity({P(F3, "1"), P(F3, "1"), P(F3, "t"), P(F3, "t")}));
    CHECK(quaternary_local_infinity({P(F5, "1"), P(F5, "1"), P(F5, "t"), P(F5, "t")}));
    CHECK(quaternary_local_infinity({P(F3, "1"), P(F3, "t"), P(F3, "t"), P(F3, "2*t")}));
    CHECK_THROWS_AS(quaternary_local_infinity({P(F3, "t^2"), P(F3, "1"), P(F3, "1"), P(F3, "1")}), domain_error);
}

TEST_CASE("local tests agree with the mod f^3 primitive-solution oracle") {
    auto F3 = Field::make(3);
    // all coefficients of degree <= 1 over F_3, places of degree 1
    std::vector<Poly> pool;
    for (int c1 = 0; c1 <= 2; ++c1)
        for (int c0 = 0; c0 <= 2; ++c0) {
            if (c1 == 0 && c0 == 0) continue;
            pool.push_back(Poly(F3, {F3->elem(c0), F3->elem(c1)}));
        }
    std::vector<Poly> places = {P(F3, "t"), P(F3, "t+1")};

    Rng rng(123);
    int checked3 = 0, checked4 = 0;
    while (checked3 < 250) {
        Poly a = pool[rng.below(pool.size())], b = pool[rng.below(pool.size())], c = pool[rng.below(pool.size())];
        const Poly& f = places[rng.below(places.size())];
        CHECK(ternary_local_finite(a, b, c, f) == brute_local_solvable_cached({a, b, c}, f));
        CHECK(ternary_local_infinity(a, b, c) == brute_local_solvable_infinity({a, b, c}));
        ++checked3;
    }
    while (checked4 < 120) {
        std::array<Poly, 4> a = {pool[rng.below(pool.size())], pool[rng.below(pool.size())],
                                 pool[rng.below(pool.size())], pool[rng.below(pool.size())]};
        bool squarefree = true;
        for (const Poly& x : a) squarefree = squarefree && squarefree_decompose(x).square_root.is_one();
        if (!squarefree) continue;
        const Poly& f = places[rng.below(places.size())];
        CHECK(quaternary_local_finite(a, f) == brute_local_solvable_cached({a[0], a[1], a[2], a[3]}, f));
        CHECK(quaternary_local_infinity(a) == brute_local_solvable_infinity({a[0], a[1], a[2], a[3]}));
        ++checked4;
    }
}

TEST_CASE("local tests are invariant under permutation and square scaling") {
    auto F5 = Field::make(5);
    Rng rng(55);
    Poly f = P(F5, "t+2");
    for (int i = 0; i < 60; ++i) {
        std::array<Poly, 3> a;
        for (auto& x : a) {
            do {
                x = Poly::random_below(F5, 3, rng);
            } while (x.is_zero());
        }
        bool base_f = ternary_local_finite(a[0], a[1], a[2], f);
        bool base_i = ternary_local_infinity(a[0], a[1], a[2]);
        CHECK(ternary_local_finite(a[2], a[0], a[1], f) == base_f);
        CHECK(ternary_local_infinity(a[1], a[2], a[0]) == base_i);
        Fq s = F5->random_nonzero(rng);
        Poly scaled = a[0] * (s * s);
        CHECK(ternary_local_finite(scaled, a[1], a[2], f) == base_f);
        CHECK(ternary_local_infinity(scaled, a[1], a[2]) == base_i);
    }
}

TEST_CASE("infinity test equals the finite test after the u = 1/t rewrite") {
    auto F3 = Field::make(3);
    Rng rng(77);
    for (int i = 0; i < 150; ++i) {
        std::vector<Poly> a(3);
        for (auto& x : a) {
            do {
                x = Poly::random_below(F3, 4, rng);
            } while (x.is_zero());
        }
        auto rewritten = infinity_rewrite(a);
        CHECK(ternary_local_infinity(a[0], a[1], a[2]) ==
              ternary_local_finite(rewritten[0], rewritten[1], rewritten[2], Poly::t(F3)));
    }
}

TEST_CASE("certificate verification") {
    auto F3 = Field::make(3);

    AnisotropyCertificate tern;
    tern.place = Place::finite(P(F3, "t"));
    tern.dim = 3;
    tern.condition = AnisoCondition::TernaryFiniteLemma;
    tern.coeffs = {P(F3, "t"), P(F3, "1"), P(F3, "1")};
    CHECK(tern.verify());

    tern.coeffs = {P(F3, "1"), P(F3, "1"), P(F3, "1")};  // isotropic: certificate must fail
    CHECK_FALSE(tern.verify());

    auto bin = make_binary_certificate(parse_ratfunc(F3, "t"), F3);
    CHECK(bin.verify());
    CHECK_FALSE(bin.place.infinite);
    CHECK(bin.place.f == P(F3, "t"));

    auto bin2 = make_binary_certificate(parse_ratfunc(F3, "2"), F3);
    CHECK(bin2.verify());
    CHECK(bin2.place.infinite);

    CHECK(to_string(AnisoCondition::QuaternaryInfinityLemma) == std::string("quaternary-infinity"));
    CHECK(aniso_condition_from_string("ternary-finite") == AnisoCondition::TernaryFiniteLemma);
    CHECK_THROWS_AS(aniso_condition_from_string("nope"), domain_error);
}
