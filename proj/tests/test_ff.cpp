#include "doctest.h"
#include "fqt/ff.hpp"

using namespace fqt;

namespace {

// Exhaustive square set by brute-force squaring, the oracle for the power test.
std::vector<Fq> all_elements(const FieldPtr& F) {
    std::vector<Fq> out;
    std::vector<uint64_t> digits(F->k, 0);
    for (;;) {
        out.push_back(F->from_coeffs(digits));
        size_t pos = 0;
        while (pos < F->k && ++digits[pos] == F->p) digits[pos++] = 0;
        if (pos == F->k) break;
    }
    return out;
}

bool brute_is_square(const FieldPtr& F, const Fq& s) {
    for (const Fq& x : all_elements(F)) {
        if (x * x == s) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("field construction and modulus selection") {
    auto F3 = Field::make(3);
    CHECK(F3->p == 3);
    CHECK(F3->k == 1);

    auto F9 = Field::make(3, 2);
    // first monic irreducible of degree 2 over F_3 in counting order is u^2+1
    CHECK(F9->modulus == std::vector<uint64_t>{1, 0, 1});

    auto F25 = Field::make(5, 2);
    CHECK(F25->modulus == std::vector<uint64_t>{2, 0, 1});  // u^2+2

    CHECK_THROWS_AS(Field::make(2), domain_error);
    CHECK_THROWS_AS(Field::make(9), domain_error);
    CHECK_THROWS_AS(Field::make(3, 2, {1, 1, 1}), domain_error);  // u^2+u+1 = (u+2)^2 over F_3? validated below
}

TEST_CASE("field spec parsing round trip") {
    auto F = Field::parse("3^2;modulus=u^2+1");
    CHECK(F->p == 3);
    CHECK(F->k == 2);
    CHECK(F->modulus == std::vector<uint64_t>{1, 0, 1});
    CHECK(F->spec_string() == "3^2;modulus=u^2+1");

    auto G = Field::parse("101");
    CHECK(G->p == 101);
    CHECK(G->spec_string() == "101");

    CHECK_THROWS(Field::parse("abc"));
}

TEST_CASE("element parse and print") {
    auto F9 = Field::make(3, 2);
    Fq u = F9->parse_elem("u");
    CHECK(u.coeffs() == std::vector<uint64_t>{0, 1});
    CHECK(F9->parse_elem("2*u+1").to_string() == "2*u+1");
    CHECK(F9->parse_elem("2").to_string() == "2");
    auto F5 = Field::make(5);
    CHECK(F5->parse_elem("7").coeffs()[0] == 2);
}

TEST_CASE("field axioms on random triples") {
    for (const char* spec : {"3", "3^2", "5^2", "101"}) {
        auto F = Field::parse(spec);
        Rng rng(42);
        for (int i = 0; i < 200; ++i) {
            Fq a = F->random(rng), b = F->random(rng), c = F->random(rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == F->zero());
            if (!a.is_zero()) {
                CHECK(a * a.inv() == F->one());
            }
        }
    }
}

TEST_CASE("ff_is_square basic values") {
    auto F3 = Field::make(3);
    CHECK(ff_is_square(F3->elem(1)));
    CHECK_FALSE(ff_is_square(F3->elem(2)));
    CHECK_THROWS_AS(ff_is_square(F3->zero()), domain_error);

    auto F9 = Field::make(3, 2);
    // u^4 = (u^2)^2 = (-1)^2 = 1, so u is a square in F_9
    Fq u = F9->parse_elem("u");
    CHECK(u.pow_u64(4) == F9->one());
    CHECK(ff_is_square(u));
}

TEST_CASE("ff_is_square agrees with brute-force squaring") {
    for (const char* spec : {"3", "5", "7", "3^2", "5^2"}) {
        auto F = Field::parse(spec);
        for (const Fq& s : all_elements(F)) {
            if (s.is_zero()) continue;
            CHECK(ff_is_square(s) == brute_is_square(F, s));
        }
    }
}

TEST_CASE("ff_sqrt canonical values") {
    auto F3 = Field::make(3);
    CHECK(ff_sqrt(F3->elem(1)) == F3->elem(1));

    auto F5 = Field::make(5);
    CHECK(ff_sqrt(F5->elem(4)) == F5->elem(2));

    auto F9 = Field::make(3, 2);
    // u^2 = -1 = 2 by the modulus relation
    CHECK(ff_sqrt(F9->elem(2)) == F9->parse_elem("u"));

    CHECK(ff_sqrt(F3->zero()).is_zero());
    CHECK_THROWS_AS(ff_sqrt(F3->elem(2)), domain_error);
}

TEST_CASE("ff_sqrt squares back for every square") {
    for (const char* spec : {"3", "5", "13", "3^2", "5^2", "101"}) {
        auto F = Field::parse(spec);
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            Fq x = F->random_nonzero(rng);
            Fq s = x * x;
            Fq r = ff_sqrt(s);
            CHECK(r * r == s);
        }
    }
}

TEST_CASE("ff_nonsquare and the square-class flip invariant") {
    for (const char* spec : {"3", "5", "3^2", "101"}) {
        auto F = Field::parse(spec);
        Rng rng(99);
        Fq n = ff_nonsquare(F, rng);
        CHECK_FALSE(ff_is_square(n));
        for (int i = 0; i < 100; ++i) {
            Fq s = F->random_nonzero(rng);
            CHECK(ff_is_square(s) != ff_is_square(s * n));
        }
    }
    auto F3 = Field::make(3);
    Rng rng(1);
    CHECK(ff_nonsquare(F3, rng) == F3->elem(2));
}

TEST_CASE("big exponent powering stays consistent") {
    auto F101 = Field::make(101);
    Rng rng(5);
    // 101^8 - 1 is a multiple of 100, so x^e = 1 for all nonzero x in F_101
    BigUInt e = BigUInt::pow(101, 8);
    e.sub_u64(1);
    for (int i = 0; i < 20; ++i) {
        Fq x = F101->random_nonzero(rng);
        CHECK(x.pow(e).is_one());
    }
}
