#include "fqt/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

#include "rawfp.hpp"

namespace fqt {

namespace {

// raw fast path for small-characteristic fields of modest extension degree
bool raw_ok(const FieldPtr& F) { return F->p < (1ull << 31) && F->k <= rawfp::kMaxExt; }

rawfp::Arith raw_arith(const FieldPtr& F) {
    rawfp::Arith A;
    A.p = F->p;
    A.k = F->k;
    A.modulus = F->modulus;
    return A;
}

rawfp::FPoly to_raw(const Poly& a) {
    const FieldPtr& F = a.field();
    rawfp::FPoly r = rawfp::make(a.coeffs().size(), F->k);
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        const CoeffSeq& cs = a.coeffs()[i].raw();
        for (uint32_t w = 0; w < F->k; ++w) r.coeff(i)[w] = cs[w];
    }
    return r;
}

Poly from_raw(const FieldPtr& F, const rawfp::FPoly& v) {
    std::vector<Fq> c;
    c.reserve(v.n);
    for (size_t i = 0; i < v.n; ++i) {
        CoeffSeq s(F->k);
        for (uint32_t w = 0; w < F->k; ++w) s[w] = v.coeff(i)[w];
        c.push_back(Fq(F, std::move(s)));
    }
    return Poly(F, std::move(c));
}

Poly detail_raw_mul(const Poly& a, const Poly& b) {
    rawfp::Arith A = raw_arith(a.field());
    return from_raw(a.field(), rawfp::mul(A, to_raw(a), to_raw(b)));
}

std::pair<Poly, Poly> detail_raw_divmod(const Poly& a, const Poly& b) {
    rawfp::Arith A = raw_arith(a.field());
    rawfp::FPoly q, r;
    rawfp::divmod(A, to_raw(a), to_raw(b), q, r);
    return {from_raw(a.field(), q), from_raw(a.field(), r)};
}

// h -> h^q mod f with a monomial fast path (Frobenius fixes F_q, so a
// monomial maps to a monomial) and a lazily built Barrett context; the early
// rungs of the distinct-degree ladders never touch the full modulus
struct FrobLadder {
    rawfp::Arith A;
    rawfp::FPoly f;
    BigUInt q;
    std::unique_ptr<rawfp::Barrett> ctx;

    FrobLadder(const rawfp::Arith& arith, rawfp::FPoly modulus, const BigUInt& qq)
        : A(arith), f(std::move(modulus)), q(qq) {}

    rawfp::FPoly step(const rawfp::FPoly& h) {
        size_t n = f.n - 1;
        size_t nz = 0, pos = 0;
        for (size_t i = 0; i < h.n; ++i) {
            if (!A.is_zero(h.coeff(i))) {
                ++nz;
                pos = i;
            }
        }
        if (nz == 1 && q.fits_u64()) {
            unsigned __int128 e = (unsigned __int128)q.low_u64() * pos;
            if (e < n) {
                rawfp::FPoly r = rawfp::make((size_t)e + 1, A.k);
                // c^q = c for coefficients in F_q
                for (uint32_t w = 0; w < A.k; ++w) r.coeff((size_t)e)[w] = h.coeff(pos)[w];
                return r;
            }
        }
        if (!ctx) ctx = std::make_unique<rawfp::Barrett>(A, f);
        return ctx->powmod(h, q);
    }
};

}  // namespace

// --- construction ------------------------------------------------------------

Poly::Poly(Fq c) : F_(c.field()) {
    if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly::Poly(FieldPtr F, std::vector<Fq> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    FQT_CHECK(F_ != nullptr, "polynomial needs a field");
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(const FieldPtr& F, size_t e, const Fq& c) {
    if (c.is_zero()) return zero(F);
    std::vector<Fq> v(e + 1, F->zero());
    v[e] = c;
    return Poly(F, std::move(v));
}

Poly Poly::random(const FieldPtr& F, size_t deg, Rng& rng) {
    std::vector<Fq> v;
    v.reserve(deg + 1);
    for (size_t i = 0; i < deg; ++i) v.push_back(F->random(rng));
    v.push_back(F->random_nonzero(rng));
    return Poly(F, std::move(v));
}

Poly Poly::random_below(const FieldPtr& F, size_t bound, Rng& rng) {
    std::vector<Fq> v;
    v.reserve(bound);
    for (size_t i = 0; i < bound; ++i) v.push_back(F->random(rng));
    return Poly(F, std::move(v));
}

const Fq& Poly::lc() const {
    FQT_REQUIRE(!c_.empty(), "leading coefficient of the zero polynomial");
    return c_.back();
}

Fq Poly::coeff(size_t i) const { return i < c_.size() ? c_[i] : F_->zero(); }

Poly Poly::monic() const {
    FQT_REQUIRE(!is_zero(), "cannot normalize the zero polynomial");
    if (is_monic()) return *this;
    return *this * lc().inv();
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return zero(F_);
    std::vector<Fq> v;
    v.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * F_->elem((int64_t)i));
    return Poly(F_, std::move(v));
}

Fq Poly::eval(const Fq& x) const {
    Fq acc = F_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::shift(size_t e) const {
    if (is_zero() || e == 0) return *this;
    std::vector<Fq> v(e, F_->zero());
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(F_, std::move(v));
}

Poly Poly::reverse() const {
    std::vector<Fq> v(c_.rbegin(), c_.rend());
    return Poly(F_, std::move(v));
}

// --- arithmetic ----------------------------------------------------------------

Poly Poly::operator-() const {
    std::vector<Fq> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(-x);
    return Poly(F_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in polynomial addition");
    const auto& lo = a.c_.size() <= b.c_.size() ? a : b;
    const auto& hi = a.c_.size() <= b.c_.size() ? b : a;
    std::vector<Fq> v = hi.c_;
    for (size_t i = 0; i < lo.c_.size(); ++i) v[i] = v[i] + lo.c_[i];
    return Poly(a.F_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

namespace {

std::vector<Fq> school_mul(const FieldPtr& F, const std::vector<Fq>& a, const std::vector<Fq>& b) {
    std::vector<Fq> r(a.size() + b.size() - 1, F->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Subquadratic hook: Karatsuba above this size, schoolbook below. A faster
// multiplication (FFT-based) would slot in here without touching callers.
constexpr size_t kKaratsubaCutoff = 32;

std::vector<Fq> kara_mul(const FieldPtr& F, std::vector<Fq> a, std::vector<Fq> b) {
    size_t n = std::max(a.size(), b.size());
    if (std::min(a.size(), b.size()) < kKaratsubaCutoff) return school_mul(F, a, b);
    size_t h = (n + 1) / 2;
    auto split = [&](std::vector<Fq>& src) {
        std::vector<Fq> lo(src.begin(), src.begin() + (int64_t)std::min(h, src.size()));
        std::vector<Fq> hi(src.begin() + (int64_t)std::min(h, src.size()), src.end());
        if (lo.empty()) lo.push_back(F->zero());
        if (hi.empty()) hi.push_back(F->zero());
        return std::make_pair(std::move(lo), std::move(hi));
    };
    auto [a0, a1] = split(a);
    auto [b0, b1] = split(b);
    auto add_vec = [&](const std::vector<Fq>& x, const std::vector<Fq>& y) {
        std::vector<Fq> s(std::max(x.size(), y.size()), F->zero());
        for (size_t i = 0; i < x.size(); ++i) s[i] += x[i];
        for (size_t i = 0; i < y.size(); ++i) s[i] += y[i];
        return s;
    };
    std::vector<Fq> z0 = kara_mul(F, a0, b0);
    std::vector<Fq> z2 = kara_mul(F, a1, b1);
    std::vector<Fq> z1 = kara_mul(F, add_vec(a0, a1), add_vec(b0, b1));
    std::vector<Fq> r(a.size() + b.size() - 1, F->zero());
    auto acc = [&](const std::vector<Fq>& src, size_t off, bool neg) {
        for (size_t i = 0; i < src.size(); ++i) {
            if (off + i >= r.size()) break;
            r[off + i] = neg ? r[off + i] - src[i] : r[off + i] + src[i];
        }
    };
    acc(z0, 0, false);
    acc(z1, h, false);
    acc(z0, h, true);
    acc(z2, h, true);
    acc(z2, 2 * h, false);
    return r;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in polynomial multiplication");
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.F_);
    if (raw_ok(a.F_) && std::min(a.c_.size(), b.c_.size()) >= 8) {
        return detail_raw_mul(a, b);
    }
    return Poly(a.F_, kara_mul(a.F_, a.c_, b.c_));
}

Poly Poly::operator*(const Fq& s) const {
    if (s.is_zero() || is_zero()) return zero(F_);
    std::vector<Fq> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(x * s);
    return Poly(F_, std::move(v));
}

bool operator==(const Poly& a, const Poly& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in polynomial comparison");
    return a.c_ == b.c_;
}

bool Poly::lex_less(const Poly& other) const {
    if (c_.size() != other.c_.size()) return c_.size() < other.c_.size();
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] != other.c_[i]) return c_[i].lex_less(other.c_[i]);
    }
    return false;
}

PolyDivMod divmod(const Poly& a, const Poly& b) {
    FQT_REQUIRE(!b.is_zero(), "polynomial division by zero");
    const FieldPtr& F = a.field();
    if (a.deg() < b.deg()) return {Poly::zero(F), a};
    if (raw_ok(F) && b.coeffs().size() >= 8 && (a.coeffs().size() - b.coeffs().size()) * b.coeffs().size() >= 256) {
        auto [q, r] = detail_raw_divmod(a, b);
        return {std::move(q), std::move(r)};
    }
    Fq lc_inv = b.lc().inv();
    std::vector<Fq> rem = a.coeffs();
    const size_t bn = b.coeffs().size();
    std::vector<Fq> quot(rem.size() - bn + 1, F->zero());
    for (size_t i = rem.size(); i-- > 0 && i + 1 >= bn;) {
        if (rem[i].is_zero()) continue;
        Fq c = rem[i] * lc_inv;
        size_t shift = i + 1 - bn;
        quot[shift] = c;
        for (size_t j = 0; j < bn; ++j) rem[shift + j] -= c * b.coeffs()[j];
    }
    return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quot; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).rem; }

bool divides(const Poly& d, const Poly& a) { return (a % d).is_zero(); }

Poly gcd(const Poly& a, const Poly& b) {
    FQT_REQUIRE(!a.is_zero() || !b.is_zero(), "gcd(0, 0) is undefined");
    const FieldPtr& F = a.field();
    if (raw_ok(F) && std::max(a.deg(), b.deg()) >= 24) {
        rawfp::Arith A = raw_arith(F);
        rawfp::FPoly g = rawfp::gcd(A, to_raw(a), to_raw(b));
        return from_raw(F, g).monic();
    }
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

XgcdResult xgcd(const Poly& a, const Poly& b) {
    FQT_REQUIRE(!a.is_zero() || !b.is_zero(), "xgcd(0, 0) is undefined");
    const FieldPtr& F = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(F), s1 = Poly::zero(F);
    Poly t0 = Poly::zero(F), t1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Fq inv = r0.lc().inv();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f) { return (a * b) % f; }

Poly pow_mod(const Poly& base, const BigUInt& e, const Poly& f) {
    const FieldPtr& F = base.field();
    if (raw_ok(F) && f.is_monic() && f.deg() >= 1) {
        rawfp::Barrett ctx(raw_arith(F), to_raw(f));
        return from_raw(F, ctx.powmod(to_raw(base), e));
    }
    Poly b = base % f;
    return pow_big(b, e, Poly::one(base.field()), [&f](const Poly& x, const Poly& y) { return mulmod(x, y, f); });
}

unsigned multiplicity(const Poly& f, const Poly& a) {
    FQT_REQUIRE(!a.is_zero(), "multiplicity in the zero polynomial");
    FQT_REQUIRE(!f.is_constant(), "multiplicity of a constant");
    unsigned m = 0;
    Poly cur = a;
    for (;;) {
        auto [q, r] = divmod(cur, f);
        if (!r.is_zero()) return m;
        ++m;
        cur = std::move(q);
        if (cur.is_constant()) return m;
    }
}

// --- squarefree factorization -----------------------------------------------

namespace {

// f(t) = g(t^p) -> g, with the p-th root applied to each surviving coefficient.
Poly pth_root_poly(const Poly& f) {
    const FieldPtr& F = f.field();
    const uint64_t p = F->p;
    std::vector<Fq> out;
    // coefficient p-th root: x -> x^{p^{k-1}} inverts Frobenius on F_{p^k}
    BigUInt e = BigUInt::pow(p, F->k >= 1 ? F->k - 1 : 0);
    for (size_t i = 0; i < f.coeffs().size(); i += (size_t)p) {
        out.push_back(f.coeffs()[i].pow(e));
    }
    return Poly(F, std::move(out));
}

void squarefree_rec(const Poly& f, unsigned outer_mult, std::vector<std::pair<Poly, unsigned>>& out) {
    const FieldPtr& F = f.field();
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        // f is a p-th power
        Poly g = pth_root_poly(f);
        squarefree_rec(g.monic(), outer_mult * (unsigned)F->p, out);
        return;
    }
    // Yun
    Poly c = gcd(f, fp);
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_constant()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (!z.is_constant()) out.emplace_back(z.monic(), i * outer_mult);
        c = c / y;
        w = std::move(y);
        ++i;
    }
    if (!c.is_constant()) {
        Poly g = pth_root_poly(c);
        squarefree_rec(g.monic(), outer_mult * (unsigned)F->p, out);
    }
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> squarefree_parts(const Poly& a) {
    FQT_REQUIRE(!a.is_zero(), "squarefree factorization of zero");
    std::vector<std::pair<Poly, unsigned>> out;
    if (a.is_constant()) return out;
    squarefree_rec(a.monic(), 1, out);
    // merge parts that ended up with the same multiplicity and sort
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    std::vector<std::pair<Poly, unsigned>> merged;
    for (auto& [part, mult] : out) {
        if (!merged.empty() && merged.back().second == mult) {
            merged.back().first = merged.back().first * part;
        } else {
            merged.emplace_back(part, mult);
        }
    }
    return merged;
}

SquarefreeDecomposition squarefree_decompose(const Poly& a) {
    FQT_REQUIRE(!a.is_zero(), "squarefree decomposition of zero");
    const FieldPtr& F = a.field();
    Poly s = Poly::one(F), u = Poly::one(F);
    for (const auto& [part, mult] : squarefree_parts(a)) {
        if (mult % 2 == 1) s = s * part;
        unsigned half = mult / 2;
        for (unsigned i = 0; i < half; ++i) u = u * part;
    }
    Fq unit = a.lc();
    FQT_CHECK((u * u * s) * unit == a, "squarefree decomposition does not multiply back");
    return {s, u, unit};
}

// --- factorization ------------------------------------------------------------

namespace {

// distinct-degree phase: splits a monic squarefree f into products of
// irreducibles grouped by degree
std::vector<std::pair<Poly, unsigned>> ddf(const Poly& f) {
    const FieldPtr& F = f.field();
    BigUInt q = F->q();
    std::vector<std::pair<Poly, unsigned>> out;
    if (raw_ok(F)) {
        rawfp::Arith A = raw_arith(F);
        rawfp::FPoly fstar = to_raw(f);
        rawfp::FPoly tpoly = rawfp::make(2, A.k);
        tpoly.coeff(1)[0] = 1;
        rawfp::FPoly h = rawfp::mod(A, tpoly, fstar);
        FrobLadder ladder(A, fstar, q);
        for (unsigned d = 1; (size_t)(2 * d) + 1 <= fstar.n; ++d) {
            h = ladder.step(h);
            rawfp::FPoly hmx = h;
            if (hmx.n < 2) {
                rawfp::FPoly tmp = rawfp::make(2, A.k);
                for (size_t i = 0; i < hmx.n; ++i)
                    for (uint32_t w = 0; w < A.k; ++w) tmp.coeff(i)[w] = hmx.coeff(i)[w];
                hmx = std::move(tmp);
            }
            hmx.coeff(1)[0] = (hmx.coeff(1)[0] + F->p - 1) % F->p;
            rawfp::trim(A, hmx);
            rawfp::FPoly g = hmx.empty() ? fstar : rawfp::gcd(A, hmx, fstar);
            if (g.n > 1) {
                Poly gp = from_raw(F, g).monic();
                out.emplace_back(gp, d);
                Poly quot = from_raw(F, fstar) / gp;
                fstar = to_raw(quot);
                if (fstar.n <= 1) return out;
                ladder = FrobLadder(A, fstar, q);
                h = rawfp::mod(A, std::move(h), fstar);
            }
        }
        if (fstar.n > 1) out.emplace_back(from_raw(F, fstar), (unsigned)(fstar.n - 1));
        return out;
    }
    Poly fstar = f;
    Poly h = Poly::t(F) % fstar;
    for (unsigned d = 1; (int64_t)(2 * d) <= fstar.deg(); ++d) {
        h = pow_mod(h, q, fstar);
        Poly g = gcd(h - Poly::t(F), fstar);
        if (!g.is_constant()) {
            out.emplace_back(g, d);
            fstar = fstar / g;
            if (fstar.is_constant()) return out;
            h = h % fstar;
        }
    }
    if (!fstar.is_constant()) out.emplace_back(fstar, (unsigned)fstar.deg());
    return out;
}

// equal-degree phase (Cantor-Zassenhaus, odd q): full split of a product of
// degree-d irreducibles
void edf(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
    if ((unsigned)f.deg() == d) {
        out.push_back(f.monic());
        return;
    }
    const FieldPtr& F = f.field();
    BigUInt e = BigUInt::pow(F->p, (uint64_t)F->k * d);
    e.sub_u64(1);
    e.shr1();
    for (;;) {
        Poly r = Poly::random_below(F, (size_t)f.deg(), rng);
        if (r.is_zero()) continue;
        Poly g = gcd(r, f);
        if (g.is_constant()) {
            Poly s = pow_mod(r, e, f);
            g = gcd(s - Poly::one(F), f);
        }
        if (!g.is_constant() && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

Poly Factorization::product() const {
    FQT_CHECK(!factors.empty() || !unit.is_zero(), "empty factorization");
    Poly acc(unit);
    for (const auto& [f, m] : factors) {
        for (unsigned i = 0; i < m; ++i) acc = acc * f;
    }
    return acc;
}

Factorization factor(const Poly& a, Rng& rng) {
    FQT_REQUIRE(!a.is_zero(), "factorization of zero");
    Factorization out;
    out.unit = a.is_constant() ? a.coeff(0) : a.lc();
    for (const auto& [part, mult] : squarefree_parts(a)) {
        for (const auto& [grp, d] : ddf(part)) {
            std::vector<Poly> irred;
            edf(grp, d, rng, irred);
            for (auto& f : irred) out.factors.emplace_back(std::move(f), mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return x.first.lex_less(y.first); });
    FQT_CHECK(out.product() == a, "factorization does not multiply back");
    return out;
}

bool is_irreducible(const Poly& a) {
    FQT_REQUIRE(!a.is_constant() && !a.is_zero(), "irreducibility of a constant");
    if (a.deg() == 1) return true;
    const FieldPtr& F = a.field();
    BigUInt q = F->q();
    Poly f = a.monic();
    if (raw_ok(F)) {
        rawfp::Arith A = raw_arith(F);
        rawfp::FPoly fr = to_raw(f);
        FrobLadder ladder(A, fr, q);
        rawfp::FPoly tpoly = rawfp::make(2, A.k);
        tpoly.coeff(1)[0] = 1;
        rawfp::FPoly h = rawfp::mod(A, tpoly, fr);
        for (int64_t i = 1; 2 * i <= f.deg(); ++i) {
            h = ladder.step(h);
            rawfp::FPoly hmx = h;
            if (hmx.n < 2) {
                rawfp::FPoly tmp = rawfp::make(2, A.k);
                for (size_t j = 0; j < hmx.n; ++j)
                    for (uint32_t w = 0; w < A.k; ++w) tmp.coeff(j)[w] = hmx.coeff(j)[w];
                hmx = std::move(tmp);
            }
            hmx.coeff(1)[0] = (hmx.coeff(1)[0] + F->p - 1) % F->p;
            rawfp::trim(A, hmx);
            if (hmx.empty()) return false;  // t^{q^i} = t: proper factors of degree dividing i
            rawfp::FPoly g = rawfp::gcd(A, hmx, fr);
            if (g.n > 1) return false;
        }
        return true;
    }
    Poly h = Poly::t(F) % f;
    for (int64_t i = 1; 2 * i <= f.deg(); ++i) {
        h = pow_mod(h, q, f);
        Poly g = gcd(h - Poly::t(F), f);
        if (!g.is_constant()) return false;
    }
    return true;
}

Poly crt(const std::vector<Poly>& residues, const std::vector<Poly>& moduli) {
    FQT_REQUIRE(!moduli.empty() && residues.size() == moduli.size(), "crt needs matching residues and moduli");
    for (size_t i = 0; i < moduli.size(); ++i) {
        FQT_REQUIRE(moduli[i].deg() >= 1, "crt modulus must be non-constant");
        FQT_REQUIRE(residues[i].deg() < moduli[i].deg(), "crt residue must be reduced");
    }
    Poly x = residues[0];
    Poly m = moduli[0];
    for (size_t i = 1; i < moduli.size(); ++i) {
        auto [g, u, v] = xgcd(m, moduli[i]);
        if (!g.is_one()) {
            throw domain_error("crt moduli are not coprime: gcd(" + m.to_string() + ", " + moduli[i].to_string() +
                               ") = " + g.to_string());
        }
        // x' = x + m * u * (r_i - x) mod m*m_i
        Poly mm = m * moduli[i];
        Poly delta = (residues[i] - x) % moduli[i];
        x = (x + m * ((u * delta) % moduli[i])) % mm;
        m = std::move(mm);
    }
    return x;
}

bool residue_is_square(const Poly& a, const Poly& f) {
    FQT_REQUIRE(f.deg() >= 1 && is_irreducible(f) && f.is_monic(), "residue modulus must be monic irreducible");
    Poly r = a % f;
    FQT_REQUIRE(!r.is_zero(), "residue_is_square: modulus divides the argument");
    const FieldPtr& F = f.field();
    BigUInt e = BigUInt::pow(F->p, (uint64_t)F->k * (uint64_t)f.deg());
    e.sub_u64(1);
    e.shr1();
    return pow_mod(r, e, f).is_one();
}

Poly residue_sqrt(const Poly& a, const Poly& f, Rng& rng) {
    FQT_REQUIRE(residue_is_square(a, f), "residue_sqrt of a non-square residue");
    const FieldPtr& F = f.field();
    Poly s = a % f;
    BigUInt order = BigUInt::pow(F->p, (uint64_t)F->k * (uint64_t)f.deg());
    order.sub_u64(1);
    BigUInt m = order;
    unsigned e = 0;
    while (m.is_even()) {
        m.shr1();
        ++e;
    }
    Poly one = Poly::one(F);
    Poly r;
    if (e == 1) {
        BigUInt t = order;
        t.add_u64(2);
        t.shr1();
        t.shr1();
        r = pow_mod(s, t, f);
    } else {
        // random non-residue in the residue field
        BigUInt half = order;
        half.shr1();
        Poly z;
        for (int trial = 0;; ++trial) {
            FQT_CHECK(trial < 256, "residue_sqrt: no non-residue found");
            Poly cand = Poly::random_below(F, (size_t)f.deg(), rng);
            if (cand.is_zero()) continue;
            if (!pow_mod(cand, half, f).is_one()) {
                z = cand;
                break;
            }
        }
        Poly c = pow_mod(z, m, f);
        Poly t = pow_mod(s, m, f);
        BigUInt m1 = m;
        m1.add_u64(1);
        m1.shr1();
        r = pow_mod(s, m1, f);
        unsigned big_m = e;
        while (!(t == one)) {
            Poly t2 = t;
            unsigned i = 0;
            while (!(t2 == one)) {
                t2 = mulmod(t2, t2, f);
                ++i;
                FQT_CHECK(i < big_m, "residue_sqrt lost the 2-adic ladder");
            }
            Poly b = c;
            for (unsigned j = 0; j + i + 1 < big_m; ++j) b = mulmod(b, b, f);
            big_m = i;
            c = mulmod(b, b, f);
            t = mulmod(t, c, f);
            r = mulmod(r, b, f);
        }
    }
    FQT_CHECK(mulmod(r, r, f) == a % f, "residue square root verification failed");
    Poly neg = (-r) % f;
    return neg.lex_less(r) ? neg : r;
}

Poly sample_irreducible_in_class(const Poly& b, const Poly& D, unsigned N, Rng& rng, unsigned* trials_out) {
    FQT_REQUIRE(D.deg() >= 1, "sampler modulus must have degree >= 1");
    FQT_REQUIRE((int64_t)N >= D.deg(), "sampler degree must be at least deg(D)");
    Poly b_red = b % D;
    FQT_REQUIRE(!b_red.is_zero() && gcd(b_red, D).is_one(),
                "sampler requires gcd(b, D) = 1, got b = " + b.to_string() + ", D = " + D.to_string());
    const FieldPtr& F = D.field();
    Fq lead = D.lc().inv();
    size_t rdeg = N - (size_t)D.deg();
    unsigned cap = 64 * N;
    for (unsigned trial = 1; trial <= cap; ++trial) {
        std::vector<Fq> rc;
        rc.reserve(rdeg + 1);
        for (size_t i = 0; i < rdeg; ++i) rc.push_back(F->random(rng));
        rc.push_back(lead);
        Poly r(F, std::move(rc));
        Poly cand = r * D + b_red;
        FQT_CHECK(cand.is_monic() && cand.deg() == (int64_t)N, "sampler candidate malformed");
        if (is_irreducible(cand)) {
            if (trials_out) *trials_out = trial;
            return cand;
        }
    }
    throw internal_error("sample_irreducible_in_class: no irreducible after " + std::to_string(cap) + " trials");
}

// --- text format ----------------------------------------------------------------

Poly parse_poly(const FieldPtr& F, const std::string& text) {
    struct Cursor {
        const std::string& s;
        size_t i = 0;
        void skip_ws() {
            while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
        }
        bool done() {
            skip_ws();
            return i >= s.size();
        }
    } cur{text};

    std::vector<Fq> coeffs;
    auto add_term = [&](size_t e, const Fq& c) {
        if (coeffs.size() <= e) coeffs.resize(e + 1, F->zero());
        coeffs[e] += c;
    };

    bool first = true;
    while (!cur.done()) {
        bool negate = false;
        if (cur.s[cur.i] == '+' || cur.s[cur.i] == '-') {
            negate = cur.s[cur.i] == '-';
            ++cur.i;
        } else if (!first) {
            throw parse_error("expected '+' or '-' between terms", cur.i);
        }
        cur.skip_ws();
        // coefficient: an integer literal, a bare u-monomial like "u" or "u^2"
        // (handy for k > 1 constants), or a parenthesized u-polynomial
        Fq c = F->one();
        bool saw_coeff = false;
        if (cur.i < cur.s.size() && cur.s[cur.i] == '(') {
            size_t close = cur.s.find(')', cur.i);
            if (close == std::string::npos) throw parse_error("unbalanced '(' in coefficient", cur.i);
            c = F->parse_elem(cur.s.substr(cur.i + 1, close - cur.i - 1));
            cur.i = close + 1;
            saw_coeff = true;
        } else if (cur.i < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.i])) {
            size_t start = cur.i;
            while (cur.i < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.i])) ++cur.i;
            c = F->parse_elem(cur.s.substr(start, cur.i - start));
            saw_coeff = true;
        } else if (cur.i < cur.s.size() && cur.s[cur.i] == 'u') {
            size_t start = cur.i++;
            if (cur.i < cur.s.size() && cur.s[cur.i] == '^') {
                ++cur.i;
                while (cur.i < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.i])) ++cur.i;
            }
            c = F->parse_elem(cur.s.substr(start, cur.i - start));
            saw_coeff = true;
        }
        cur.skip_ws();
        if (cur.i < cur.s.size() && cur.s[cur.i] == '*') {
            ++cur.i;
            cur.skip_ws();
        }
        size_t e = 0;
        if (cur.i < cur.s.size() && cur.s[cur.i] == 't') {
            ++cur.i;
            e = 1;
            cur.skip_ws();
            if (cur.i < cur.s.size() && cur.s[cur.i] == '^') {
                ++cur.i;
                cur.skip_ws();
                if (cur.i >= cur.s.size() || !std::isdigit((unsigned char)cur.s[cur.i]))
                    throw parse_error("missing exponent after '^'", cur.i);
                e = 0;
                while (cur.i < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.i])) {
                    e = e * 10 + (size_t)(cur.s[cur.i] - '0');
                    ++cur.i;
                }
            }
        } else if (!saw_coeff) {
            throw parse_error("expected a coefficient or 't'", cur.i);
        }
        add_term(e, negate ? -c : c);
        first = false;
    }
    if (first) throw parse_error("empty polynomial text", 0);
    return Poly(F, std::move(coeffs));
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t e = c_.size(); e-- > 0;) {
        if (c_[e].is_zero()) continue;
        if (!first) os << "+";
        std::string cs = c_[e].to_string();
        bool plain = cs.find('u') == std::string::npos;
        if (e == 0) {
            os << (plain ? cs : "(" + cs + ")");
        } else {
            if (!c_[e].is_one()) os << (plain ? cs : "(" + cs + ")") << "*";
            os << "t";
            if (e > 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

}  // namespace fqt
