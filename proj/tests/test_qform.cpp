#include "doctest.h"
#include "fqt/qform.hpp"

using namespace fqt;

namespace {
Poly P(const FieldPtr& F, const std::string& s) { return parse_poly(F, s); }
RatFunc R(const FieldPtr& F, const std::string& s) { return parse_ratfunc(F, s); }

GramMatrix random_gram(const FieldPtr& F, size_t n, size_t deg, Rng& rng) {
    RMat m(n, RVec(n, RatFunc::zero(F)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            RatFunc x(Poly::random_below(F, deg + 1, rng));
            m[i][j] = x;
            m[j][i] = x;
        }
    }
    return GramMatrix(F, std::move(m));
}
}  // namespace

TEST_CASE("evaluate") {
    auto F3 = Field::make(3);
    DiagForm q(F3, {P(F3, "1"), P(F3, "1"), P(F3, "1")});
    CHECK(evaluate(q, PVec{P(F3, "1"), P(F3, "1"), P(F3, "1")}).is_zero());
    CHECK(evaluate(q, PVec{P(F3, "0"), P(F3, "0"), P(F3, "0")}).is_zero());

    DiagForm h(F3, {P(F3, "1"), P(F3, "-1")});
    CHECK(evaluate(h, PVec{P(F3, "t"), P(F3, "t")}).is_zero());

    CHECK_THROWS_AS(evaluate(q, PVec{P(F3, "1")}), domain_error);
    CHECK_THROWS_AS(DiagForm(F3, {P(F3, "1"), P(F3, "0")}), domain_error);
}

TEST_CASE("linear algebra over F_q(t)") {
    auto F3 = Field::make(3);
    Rng rng(2);
    for (int i = 0; i < 25; ++i) {
        // random invertible matrix: unit upper triangular times unit lower triangular
        size_t n = 2 + rng.below(3);
        RMat up = rmat_identity(F3, n), lo = rmat_identity(F3, n);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = r + 1; c < n; ++c) {
                up[r][c] = RatFunc(Poly::random_below(F3, 2, rng));
                lo[c][r] = RatFunc(Poly::random_below(F3, 2, rng));
            }
        RMat m = rmat_mul(up, lo);
        RMat inv = rmat_inverse(m);
        RMat prod = rmat_mul(m, inv);
        CHECK(prod == rmat_identity(F3, n));
        CHECK_FALSE(rmat_det(m).is_zero());
    }
}

TEST_CASE("radical_split") {
    auto F3 = Field::make(3);
    auto id = GramMatrix::diagonal(RVec{R(F3, "1"), R(F3, "1"), R(F3, "1")});
    CHECK(radical_split(id).radical.empty());

    GramMatrix zero2(F3, RMat(2, RVec(2, RatFunc::zero(F3))));
    auto rs0 = radical_split(zero2);
    CHECK(rs0.radical.size() == 2);
    CHECK(rs0.complement.empty());

    auto deg = GramMatrix::diagonal(RVec{R(F3, "1"), R(F3, "0")});
    auto rs = radical_split(deg);
    REQUIRE(rs.radical.size() == 1);
    CHECK(rs.radical[0][0].is_zero());
    CHECK(rs.radical[0][1].is_one());
    CHECK(rs.complement == std::vector<size_t>{0});
}

TEST_CASE("gram_schmidt fixed cases") {
    auto F3 = Field::make(3);

    auto id3 = GramMatrix::diagonal(RVec{R(F3, "1"), R(F3, "1"), R(F3, "1")});
    auto gs1 = gram_schmidt(id3);
    CHECK(gs1.transform.matrix() == rmat_identity(F3, 3));
    CHECK(gs1.diagonal.entries() == id3.entries());

    // hyperbolic Gram [[0,1],[1,0]]: both standard vectors are isotropic, so the
    // first basis vector becomes e1+e2; executing the procedure by hand gives
    // diagonal entries (2, 1) over F_3
    GramMatrix hyp(F3, {{R(F3, "0"), R(F3, "1")}, {R(F3, "1"), R(F3, "0")}});
    auto gs2 = gram_schmidt(hyp);
    RMat lhs = rmat_mul(rmat_mul(rmat_transpose(gs2.transform.matrix()), hyp.entries()), gs2.transform.matrix());
    CHECK(lhs == gs2.diagonal.entries());
    CHECK(gs2.diagonal.at(0, 0) == R(F3, "2"));
    CHECK(gs2.diagonal.at(1, 1) == R(F3, "1"));
    CHECK(gs2.transform.matrix()[0][0].is_one());
    CHECK(gs2.transform.matrix()[1][0].is_one());

    auto dg = GramMatrix::diagonal(RVec{R(F3, "t"), R(F3, "1/t")});
    auto gs3 = gram_schmidt(dg);
    CHECK(gs3.transform.matrix() == rmat_identity(F3, 2));
    CHECK(gs3.diagonal.entries() == dg.entries());

    auto sing = GramMatrix::diagonal(RVec{R(F3, "1"), R(F3, "0")});
    CHECK_THROWS_AS(gram_schmidt(sing), SingularFormError);
}

TEST_CASE("gram_schmidt conjugates exactly and preserves the determinant class") {
    for (const char* spec : {"3", "5", "3^2"}) {
        auto F = Field::parse(spec);
        Rng rng(20);
        int done = 0;
        while (done < 30) {
            size_t n = 2 + rng.below(4);
            GramMatrix A = random_gram(F, n, 2, rng);
            if (rmat_det(A.entries()).is_zero()) continue;
            auto gs = gram_schmidt(A);
            RMat lhs =
                rmat_mul(rmat_mul(rmat_transpose(gs.transform.matrix()), A.entries()), gs.transform.matrix());
            CHECK(lhs == gs.diagonal.entries());
            // det(D) = det(A) * det(T)^2
            RatFunc dT = rmat_det(gs.transform.matrix());
            CHECK(rmat_det(gs.diagonal.entries()) == rmat_det(A.entries()) * dT * dT);
            ++done;
        }
    }
}

TEST_CASE("clear_denominators") {
    auto F3 = Field::make(3);
    auto d1 = GramMatrix::diagonal(RVec{R(F3, "1/t")});
    auto cd1 = clear_denominators(d1);
    CHECK(cd1.form.at(0) == P(F3, "t"));

    auto d2 = GramMatrix::diagonal(RVec{R(F3, "2")});
    CHECK(clear_denominators(d2).form.at(0) == P(F3, "2"));

    // num*den coefficient with exact evaluation round trip on random vectors
    auto d3 = GramMatrix::diagonal(RVec{R(F3, "t+1/t^2"), R(F3, "t"), R(F3, "2/t+2")});
    auto cd3 = clear_denominators(d3);
    CHECK(cd3.form.at(0) == P(F3, "t+1") * P(F3, "t^2"));
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        RVec y;
        for (int j = 0; j < 3; ++j) y.push_back(RatFunc(Poly::random_below(F3, 3, rng)));
        RVec x = cd3.transform.apply(y);
        CHECK(evaluate(cd3.form, y) == cd3.transform.scalar() * evaluate(d3, x));
    }
}

TEST_CASE("transform composition and pullback") {
    auto F3 = Field::make(3);
    Rng rng(31);
    RMat m = {{R(F3, "1"), R(F3, "t")}, {R(F3, "0"), R(F3, "1")}};
    Transform T(m);
    Transform Tinv(rmat_inverse(m));
    RVec v = {R(F3, "t+1"), R(F3, "2")};
    CHECK(transform_apply(transform_compose(T, Tinv), v) == v);

    // identity transform leaves vectors unchanged
    CHECK(transform_apply(Transform::identity(F3, 2), v) == v);

    // scaling x1 <- x1/t sends the zero (t, 1, 0) of Q' to (1, 1, 0)
    RMat s = rmat_identity(F3, 3);
    s[0][0] = R(F3, "1/t");
    Transform S(std::move(s));
    RVec z = {R(F3, "t"), R(F3, "1"), R(F3, "0")};
    PVec pulled = primitive_vector(transform_pullback_zero(S, z));
    CHECK(pulled == PVec{P(F3, "1"), P(F3, "1"), P(F3, "0")});

    CHECK_THROWS_AS(transform_pullback_zero(S, RVec(3, RatFunc::zero(F3))), domain_error);
}

TEST_CASE("primitive_vector") {
    auto F3 = Field::make(3);
    RVec v = {R(F3, "2*t/t+1"), R(F3, "2"), RatFunc::zero(F3)};
    PVec w = primitive_vector(v);
    CHECK(w == PVec{P(F3, "t"), P(F3, "t+1"), P(F3, "0")});
    // leading nonzero entry is monic and entries are coprime
    Poly g = gcd(w[0], w[1]);
    CHECK(g.is_one());
}
