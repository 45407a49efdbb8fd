#include <set>

#include "doctest.h"
#include "fqt/polyring.hpp"

using namespace fqt;

namespace {

Poly P(const FieldPtr& F, const std::string& s) { return parse_poly(F, s); }

// Oracle: enumerate all monic polynomials of a given degree.
std::vector<Poly> all_monic(const FieldPtr& F, size_t deg) {
    std::vector<Poly> out;
    std::vector<uint64_t> digits(deg, 0);
    uint64_t q = F->p;  // enumeration only used for prime fields in tests
    for (;;) {
        std::vector<Fq> c;
        for (size_t i = 0; i < deg; ++i) c.push_back(F->elem((int64_t)digits[i]));
        c.push_back(F->one());
        out.push_back(Poly(F, std::move(c)));
        size_t pos = 0;
        while (pos < deg && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == deg) break;
    }
    return out;
}

// Oracle: irreducibility by trial division over all monic divisors.
bool brute_irreducible(const Poly& a) {
    if (a.deg() < 1) return false;
    for (size_t d = 1; (int64_t)(2 * d) <= a.deg(); ++d) {
        for (const Poly& f : all_monic(a.field(), d)) {
            if (divides(f, a)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("poly parse and print round trip") {
    auto F3 = Field::make(3);
    Poly a = P(F3, "t^2+2*t+1");
    CHECK(a.to_string() == "t^2+2*t+1");
    CHECK(P(F3, " t ^ 2 + 2 * t + 1 ") == a);
    CHECK(P(F3, "t^2-t") == P(F3, "t^2+2*t"));
    CHECK(P(F3, "-1") == P(F3, "2"));
    CHECK(P(F3, "0").is_zero());
    CHECK_THROWS_AS(P(F3, "t^"), parse_error);
    CHECK_THROWS_AS(P(F3, "t + + 1"), parse_error);

    auto F9 = Field::make(3, 2);
    Poly b = P(F9, "(u+1)*t^2+u*t+2");
    CHECK(b.to_string() == "(u+1)*t^2+(u)*t+2");
    CHECK(P(F9, b.to_string()) == b);
}

TEST_CASE("divmod and gcd basics") {
    auto F3 = Field::make(3);
    auto [q, r] = divmod(P(F3, "t^3+t+1"), P(F3, "t^2+1"));
    CHECK(q == P(F3, "t"));
    CHECK(r == P(F3, "1"));

    // (t^2-1, t-1) -> gcd t-1 = t+2 monic
    auto g = xgcd(P(F3, "t^2-1"), P(F3, "t-1"));
    CHECK(g.g == P(F3, "t+2"));
    CHECK(g.u * P(F3, "t^2-1") + g.v * P(F3, "t-1") == g.g);

    // (a, 0) -> monic multiple of a
    auto g2 = xgcd(P(F3, "2*t+1"), Poly::zero(F3));
    CHECK(g2.g == P(F3, "t+2"));
    CHECK(g2.u == P(F3, "2"));
    CHECK(g2.v.is_zero());

    // hand Euclid: 1 = 1*(t^2+1) + (-t)*t
    auto g3 = xgcd(P(F3, "t^2+1"), P(F3, "t"));
    CHECK(g3.g.is_one());
    CHECK(g3.u * P(F3, "t^2+1") + g3.v * P(F3, "t") == Poly::one(F3));

    CHECK_THROWS_AS(xgcd(Poly::zero(F3), Poly::zero(F3)), domain_error);
}

TEST_CASE("xgcd identity on random pairs") {
    for (const char* spec : {"3", "5", "3^2"}) {
        auto F = Field::parse(spec);
        Rng rng(11);
        for (int i = 0; i < 100; ++i) {
            Poly a = Poly::random(F, rng.below(6), rng);
            Poly b = Poly::random(F, rng.below(6), rng);
            if (a.is_zero() && b.is_zero()) continue;
            auto [g, u, v] = xgcd(a, b);
            CHECK(u * a + v * b == g);
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
        }
    }
}

TEST_CASE("squarefree decomposition") {
    auto F3 = Field::make(3);
    // 2(t-1)^2(t+1)
    Poly a = P(F3, "2") * P(F3, "t+2") * P(F3, "t+2") * P(F3, "t+1");
    auto sq = squarefree_decompose(a);
    CHECK(sq.squarefree == P(F3, "t+1"));
    CHECK(sq.square_root == P(F3, "t+2"));
    CHECK(sq.unit == F3->elem(2));

    auto sq2 = squarefree_decompose(P(F3, "2"));
    CHECK(sq2.squarefree.is_one());
    CHECK(sq2.square_root.is_one());
    CHECK(sq2.unit == F3->elem(2));

    auto F5 = Field::make(5);
    auto sq3 = squarefree_decompose(P(F5, "t^4"));
    CHECK(sq3.squarefree.is_one());
    CHECK(sq3.square_root == P(F5, "t^2"));
    CHECK(sq3.unit.is_one());

    // p-th power handling: (t+1)^3 over F_3 has zero derivative
    auto sq4 = squarefree_decompose(P(F3, "t+1") * P(F3, "t+1") * P(F3, "t+1"));
    CHECK(sq4.squarefree == P(F3, "t+1"));
    CHECK(sq4.square_root == P(F3, "t+1"));
}

TEST_CASE("factor fixed examples") {
    auto F3 = Field::make(3);
    Rng rng(3);
    auto f1 = factor(P(F3, "t^2+1"), rng);
    REQUIRE(f1.factors.size() == 1);
    CHECK(f1.factors[0].first == P(F3, "t^2+1"));
    CHECK(f1.factors[0].second == 1);

    auto F5 = Field::make(5);
    auto f2 = factor(P(F5, "t^2+1"), rng);
    REQUIRE(f2.factors.size() == 2);
    CHECK(f2.factors[0].first == P(F5, "t+2"));
    CHECK(f2.factors[1].first == P(F5, "t+3"));

    auto f3 = factor(P(F3, "2"), rng);
    CHECK(f3.factors.empty());
    CHECK(f3.unit == F3->elem(2));
}

TEST_CASE("factor then multiply reproduces input") {
    for (const char* spec : {"3", "5", "3^2", "101"}) {
        auto F = Field::parse(spec);
        Rng rng(17);
        int runs = std::string(spec) == "101" ? 60 : 250;
        for (int i = 0; i < runs; ++i) {
            Poly a = Poly::random(F, 1 + rng.below(7), rng);
            auto fac = factor(a, rng);
            CHECK(fac.product() == a);
            for (const auto& [f, m] : fac.factors) {
                CHECK(f.is_monic());
                CHECK(is_irreducible(f));
                CHECK(m >= 1);
            }
            // factors pairwise distinct
            for (size_t x = 1; x < fac.factors.size(); ++x) {
                CHECK(fac.factors[x - 1].first.lex_less(fac.factors[x].first));
            }
        }
    }
}

TEST_CASE("is_irreducible agrees with trial division") {
    auto F3 = Field::make(3);
    CHECK(is_irreducible(P(F3, "t^2+1")));
    CHECK_FALSE(is_irreducible(P(F3, "t^2+2*t+1")));
    CHECK(is_irreducible(P(F3, "t+1")));
    CHECK_THROWS_AS(is_irreducible(P(F3, "2")), domain_error);

    for (size_t d = 1; d <= 4; ++d) {
        for (const Poly& f : all_monic(F3, d)) {
            CHECK(is_irreducible(f) == brute_irreducible(f));
        }
    }
}

TEST_CASE("crt") {
    auto F3 = Field::make(3);
    // x = 1 mod t, x = 0 mod t-1: solving by hand gives 2t+1
    Poly x = crt({P(F3, "1"), P(F3, "0")}, {P(F3, "t"), P(F3, "t+2")});
    CHECK(x == P(F3, "2*t+1"));
    CHECK((x % P(F3, "t")) == P(F3, "1"));
    CHECK((x % P(F3, "t+2")).is_zero());

    CHECK(crt({P(F3, "t+2")}, {P(F3, "t^2+1")}) == P(F3, "t+2"));
    CHECK(crt({P(F3, "0"), P(F3, "0")}, {P(F3, "t"), P(F3, "t+1")}).is_zero());

    CHECK_THROWS_AS(crt({P(F3, "0"), P(F3, "1")}, {P(F3, "t"), P(F3, "t")}), domain_error);
}

TEST_CASE("crt reduces correctly mod every modulus on random systems") {
    auto F5 = Field::make(5);
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        std::vector<Poly> moduli = {P(F5, "t"), P(F5, "t+1"), P(F5, "t^2+2")};
        std::vector<Poly> residues;
        for (auto& m : moduli) residues.push_back(Poly::random_below(F5, (size_t)m.deg(), rng));
        Poly x = crt(residues, moduli);
        Poly prod = Poly::one(F5);
        for (auto& m : moduli) prod = prod * m;
        CHECK(x.deg() < prod.deg());
        for (size_t j = 0; j < moduli.size(); ++j) CHECK((x % moduli[j]) == residues[j]);
    }
}

TEST_CASE("residue squares") {
    auto F3 = Field::make(3);
    auto F5 = Field::make(5);
    CHECK_FALSE(residue_is_square(P(F3, "-1"), P(F3, "t")));
    CHECK(residue_is_square(P(F5, "-1"), P(F5, "t")));
    CHECK(residue_is_square(P(F3, "2"), P(F3, "t^2+1")));

    CHECK_THROWS_AS(residue_is_square(P(F3, "t"), P(F3, "t")), domain_error);
    CHECK_THROWS_AS(residue_is_square(P(F3, "1"), P(F3, "t^2+2*t+1")), domain_error);

    Rng rng(9);
    CHECK(residue_sqrt(P(F3, "2"), P(F3, "t^2+1"), rng) == P(F3, "t"));
    CHECK(residue_sqrt(P(F3, "1"), P(F3, "t^2+1"), rng).is_one());
    CHECK(residue_sqrt(P(F5, "4"), P(F5, "t"), rng) == P(F5, "2"));
    CHECK_THROWS_AS(residue_sqrt(P(F3, "-1"), P(F3, "t"), rng), domain_error);
}

TEST_CASE("residue_is_square agrees with exhaustive squaring in F_3[t]/(f)") {
    auto F3 = Field::make(3);
    for (const Poly& f : {P(F3, "t"), P(F3, "t+1"), P(F3, "t^2+1"), P(F3, "t^2+t+2")}) {
        REQUIRE(is_irreducible(f));
        std::set<std::string> squares;
        // enumerate residues r, collect r^2 mod f
        size_t m = (size_t)f.deg();
        std::vector<uint64_t> digits(m, 0);
        for (;;) {
            std::vector<Fq> c;
            for (size_t i = 0; i < m; ++i) c.push_back(F3->elem((int64_t)digits[i]));
            Poly r(F3, std::move(c));
            squares.insert(mulmod(r, r, f).to_string());
            size_t pos = 0;
            while (pos < m && ++digits[pos] == 3) digits[pos++] = 0;
            if (pos == m) break;
        }
        std::vector<uint64_t> d2(m, 0);
        for (;;) {
            std::vector<Fq> c;
            for (size_t i = 0; i < m; ++i) c.push_back(F3->elem((int64_t)d2[i]));
            Poly a(F3, std::move(c));
            if (!a.is_zero()) {
                CHECK(residue_is_square(a, f) == (squares.count(a.to_string()) > 0));
            }
            size_t pos = 0;
            while (pos < m && ++d2[pos] == 3) d2[pos++] = 0;
            if (pos == m) break;
        }
    }
}

TEST_CASE("residue_sqrt squares back on random squares") {
    for (const char* spec : {"3", "5", "101"}) {
        auto F = Field::parse(spec);
        Rng rng(31);
        std::vector<Poly> mods = {P(F, "t^2+1"), P(F, "t^3+2*t+1")};
        for (Poly& f : mods) {
            if (!is_irreducible(f)) continue;
            for (int i = 0; i < 40; ++i) {
                Poly r = Poly::random_below(F, (size_t)f.deg(), rng);
                if (r.is_zero()) continue;
                Poly s = mulmod(r, r, f);
                Poly root = residue_sqrt(s, f, rng);
                CHECK(mulmod(root, root, f) == s);
            }
        }
    }
}

TEST_CASE("sample_irreducible_in_class fixed cases") {
    auto F3 = Field::make(3);
    Rng rng(12);
    // only irreducible monic candidate of degree 2 congruent to 1 mod t is t^2+1
    Poly a = sample_irreducible_in_class(P(F3, "1"), P(F3, "t"), 2, rng);
    CHECK(a == P(F3, "t^2+1"));

    Poly b = sample_irreducible_in_class(P(F3, "1"), P(F3, "t"), 1, rng);
    CHECK(b == P(F3, "t+1"));

    CHECK_THROWS_AS(sample_irreducible_in_class(P(F3, "t"), P(F3, "t^2"), 3, rng), domain_error);
}

TEST_CASE("sample_irreducible_in_class postconditions and trial counts") {
    for (const char* spec : {"3", "5^2"}) {
        auto F = Field::parse(spec);
        Rng rng(77);
        uint64_t total_trials = 0, total_budget = 0;
        int runs = 0;
        while (runs < 40) {
            Poly D = Poly::random(F, 1 + rng.below(3), rng);
            Poly b = Poly::random_below(F, (size_t)D.deg(), rng);
            if (b.is_zero() || !gcd(b, D).is_one()) continue;
            // degree regime of the main algorithms, where the 1/(3N) success bound holds
            unsigned N = 4 * (unsigned)D.deg() + (unsigned)rng.below(2);
            unsigned trials = 0;
            Poly a = sample_irreducible_in_class(b, D, N, rng, &trials);
            CHECK(a.deg() == (int64_t)N);
            CHECK(a.is_monic());
            CHECK(is_irreducible(a));
            CHECK((a - b) % D == Poly::zero(F));
            total_trials += trials;
            total_budget += 3 * N;
            ++runs;
        }
        CHECK(total_trials <= total_budget);
    }
}
