#include "fqt/funcfield.hpp"

namespace fqt {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    FQT_REQUIRE(!den_.is_zero(), "rational function with zero denominator");
    FQT_REQUIRE(same_field(num_.field(), den_.field()), "field mismatch in rational function");
    if (num_.is_zero()) {
        den_ = Poly::one(num_.field());
        return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    if (!den_.is_monic()) {
        Fq inv = den_.lc().inv();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}

RatFunc::RatFunc(Fq c) : num_(Poly(std::move(c))) {
    den_ = Poly::one(num_.field());
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc RatFunc::inv() const {
    FQT_REQUIRE(!is_zero(), "division by the zero rational function");
    return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Place Place::finite(Poly prime) {
    FQT_REQUIRE(prime.deg() >= 1 && prime.is_monic() && is_irreducible(prime),
                "finite place must be a monic irreducible polynomial");
    Place p;
    p.f = std::move(prime);
    return p;
}

std::optional<int64_t> valuation(const RatFunc& x, const Place& place) {
    if (x.is_zero()) return std::nullopt;
    if (place.infinite) return x.den().deg() - x.num().deg();
    int64_t vn = (int64_t)multiplicity(place.f, x.num());
    int64_t vd = (int64_t)multiplicity(place.f, x.den());
    return vn - vd;
}

bool rf_is_square(const RatFunc& x) {
    FQT_REQUIRE(!x.is_zero(), "square-class of the zero rational function is undefined");
    auto n = squarefree_decompose(x.num());
    if (!n.squarefree.is_one()) return false;
    auto d = squarefree_decompose(x.den());
    if (!d.squarefree.is_one()) return false;
    return ff_is_square(n.unit);
}

RatFunc rf_sqrt(const RatFunc& x) {
    if (x.is_zero()) return x;
    FQT_REQUIRE(rf_is_square(x), "rf_sqrt of a non-square");
    auto n = squarefree_decompose(x.num());
    auto d = squarefree_decompose(x.den());
    Fq scalar_root = ff_sqrt(n.unit);
    RatFunc r(n.square_root * scalar_root, d.square_root);
    FQT_CHECK(r * r == x, "rational square root verification failed");
    // canonical sign: lexicographically smaller numerator coefficient vector
    RatFunc neg = -r;
    return neg.num().lex_less(r.num()) ? neg : r;
}

RatFunc parse_ratfunc(const FieldPtr& F, const std::string& text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos) return RatFunc(parse_poly(F, text));
    Poly num = parse_poly(F, text.substr(0, slash));
    Poly den = parse_poly(F, text.substr(slash + 1));
    return RatFunc(std::move(num), std::move(den));
}

}  // namespace fqt
