#include "doctest.h"
#include "fqt/funcfield.hpp"

using namespace fqt;

namespace {
Poly P(const FieldPtr& F, const std::string& s) { return parse_poly(F, s); }
RatFunc R(const FieldPtr& F, const std::string& s) { return parse_ratfunc(F, s); }
}  // namespace

TEST_CASE("ratfunc normalization and arithmetic") {
    auto F3 = Field::make(3);
    RatFunc x(P(F3, "2*t^2+2"), P(F3, "2*t"));
    CHECK(x.num() == P(F3, "t^2+1"));
    CHECK(x.den() == P(F3, "t"));

    RatFunc y(P(F3, "t^2-1"), P(F3, "t-1"));
    CHECK(y.num() == P(F3, "t+1"));
    CHECK(y.den().is_one());

    CHECK(R(F3, "t/t").is_one());
    CHECK((x * x.inv()).is_one());
    CHECK((x - x).is_zero());
    CHECK(x + RatFunc::zero(F3) == x);
    CHECK_THROWS_AS(RatFunc(P(F3, "1"), P(F3, "0")), domain_error);

    CHECK(R(F3, "t^2+1/t").to_string() == "t^2+1/t");
    CHECK(R(F3, "2").to_string() == "2");
}

TEST_CASE("field axioms on random rational functions") {
    auto F5 = Field::make(5);
    Rng rng(4);
    for (int i = 0; i < 80; ++i) {
        RatFunc a(Poly::random_below(F5, 4, rng), Poly::random(F5, rng.below(3), rng));
        RatFunc b(Poly::random_below(F5, 4, rng), Poly::random(F5, rng.below(3), rng));
        RatFunc c(Poly::random_below(F5, 4, rng), Poly::random(F5, rng.below(3), rng));
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a + (b + c) == (a + b) + c);
        if (!a.is_zero()) CHECK((a / a).is_one());
    }
}

TEST_CASE("valuations") {
    auto F3 = Field::make(3);
    RatFunc x(P(F3, "t^2-1"), P(F3, "t^3"));
    CHECK(valuation(x, Place::finite(P(F3, "t"))) == -3);
    CHECK(valuation(x, Place::infinity(F3)) == 1);
    CHECK(valuation(RatFunc::zero(F3), Place::infinity(F3)) == std::nullopt);
    CHECK(valuation(RatFunc::zero(F3), Place::finite(P(F3, "t"))) == std::nullopt);
    CHECK(valuation(R(F3, "t+1"), Place::finite(P(F3, "t+1"))) == 1);

    CHECK_THROWS_AS(Place::finite(P(F3, "t^2+2*t+1")), domain_error);
    CHECK_THROWS_AS(Place::finite(P(F3, "2*t")), domain_error);
}

TEST_CASE("valuation is additive and satisfies the product formula") {
    auto F3 = Field::make(3);
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        Poly n = Poly::random(F3, rng.below(5), rng);
        Poly d = Poly::random(F3, rng.below(4), rng);
        if (n.is_zero() || d.is_zero()) continue;
        RatFunc x(n, d);
        if (x.is_zero()) continue;

        // places dividing numerator or denominator, plus infinity
        Rng frng = rng.split();
        auto fac_n = factor(x.num(), frng);
        auto fac_d = factor(x.den(), frng);
        std::vector<Place> places = {Place::infinity(F3)};
        for (auto& [f, m] : fac_n.factors) places.push_back(Place::finite(f));
        for (auto& [f, m] : fac_d.factors) places.push_back(Place::finite(f));

        int64_t total = 0;
        for (const Place& pl : places) {
            int64_t deg_pl = pl.infinite ? 1 : pl.f.deg();
            total += deg_pl * valuation(x, pl).value();
        }
        CHECK(total == 0);

        // additivity on a random partner
        Poly n2 = Poly::random(F3, rng.below(4), rng);
        if (n2.is_zero()) continue;
        RatFunc y(n2, Poly::one(F3));
        for (const Place& pl : places) {
            CHECK(valuation(x * y, pl).value() == valuation(x, pl).value() + valuation(y, pl).value());
        }
    }
}

TEST_CASE("rf_is_square and rf_sqrt") {
    auto F3 = Field::make(3);
    auto F5 = Field::make(5);

    CHECK(rf_is_square(R(F3, "t^2+2*t+1")));  // (t+1)^2
    CHECK_FALSE(rf_is_square(R(F3, "t")));
    CHECK_FALSE(rf_is_square(R(F5, "2")));  // 2 is a non-square in F_5
    CHECK(rf_is_square(R(F5, "4")));
    CHECK_THROWS_AS(rf_is_square(RatFunc::zero(F3)), domain_error);

    CHECK(rf_sqrt(R(F3, "t^2+2*t+1/t^2")) == R(F3, "t+1/t"));
    CHECK(rf_sqrt(R(F5, "4")) == R(F5, "2"));
    CHECK(rf_sqrt(R(F5, "1")).is_one());
    CHECK_THROWS_AS(rf_sqrt(R(F3, "t")), domain_error);

    Rng rng(15);
    for (const char* spec : {"3", "5^2"}) {
        auto F = Field::parse(spec);
        for (int i = 0; i < 100; ++i) {
            Poly n = Poly::random_below(F, 4, rng);
            Poly d = Poly::random(F, rng.below(3), rng);
            if (n.is_zero() || d.is_zero()) continue;
            RatFunc x(n, d);
            if (x.is_zero()) continue;
            RatFunc sq = x * x;
            CHECK(rf_is_square(sq));
            RatFunc r = rf_sqrt(sq);
            CHECK(r * r == sq);
        }
    }
}
