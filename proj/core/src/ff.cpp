#include "fqt/ff.hpp"

#include <algorithm>
#include <sstream>

namespace fqt {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)(((unsigned __int128)a * b) % p);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t p) { return powmod_u64(a % p, p - 2, p); }

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// --- dense polynomials over F_p on raw u64 coefficients -------------------
// Only what Field construction needs: reduction, gcd ladder irreducibility.

using FpPoly = std::vector<uint64_t>;  // little-endian, trimmed

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + (unsigned __int128)a[i] * b[j]) % p;
        }
    }
    fp_trim(r);
    return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, uint64_t p) {
    uint64_t lc_inv = invmod_u64(m.back(), p);
    while (a.size() >= m.size()) {
        uint64_t c = mulmod_u64(a.back(), lc_inv, p);
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint64_t sub = mulmod_u64(c, m[i], p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FpPoly fp_powmod_x_q(const FpPoly& base, uint64_t p, unsigned k, const FpPoly& m) {
    // base^(p^k) mod m by k successive p-th powers
    FpPoly r = base;
    for (unsigned step = 0; step < k; ++step) {
        FpPoly acc = {1};
        FpPoly sq = r;
        uint64_t e = p;
        while (e) {
            if (e & 1) acc = fp_mod(fp_mul(acc, sq, p), m, p);
            sq = fp_mod(fp_mul(sq, sq, p), m, p);
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

// Rabin-style ladder over F_p: no irreducible factor of degree <= deg/2.
bool fp_is_irreducible(const FpPoly& f, uint64_t p) {
    size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    FpPoly x = {0, 1};
    FpPoly h = x;
    for (size_t i = 1; i <= n / 2; ++i) {
        h = fp_powmod_x_q(h, p, 1, f);
        FpPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(diff);
        FpPoly g = diff.empty() ? f : fp_gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

// --- tiny parser for integer-coefficient polynomials in one variable ------

struct UTermParser {
    const std::string& s;
    size_t i = 0;
    char var;

    explicit UTermParser(const std::string& text, char v) : s(text), var(v) {}

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }

    bool parse_u64(uint64_t& out) {
        skip_ws();
        if (i >= s.size() || !isdigit((unsigned char)s[i])) return false;
        uint64_t v = 0;
        while (i < s.size() && isdigit((unsigned char)s[i])) {
            v = v * 10 + (uint64_t)(s[i] - '0');
            ++i;
        }
        out = v;
        return true;
    }

    // coeffs[e] accumulates the term coefficients, signs included mod p
    std::vector<uint64_t> run(uint64_t p) {
        std::vector<uint64_t> coeffs;
        bool first = true;
        for (;;) {
            skip_ws();
            if (i >= s.size()) {
                if (first) throw parse_error("empty polynomial", i);
                break;
            }
            uint64_t sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                if (s[i] == '-') sign = p - 1;
                ++i;
            } else if (!first) {
                throw parse_error(std::string("expected '+' or '-' before next term of ") + s, i);
            }
            skip_ws();
            uint64_t c = 1;
            bool saw_coeff = parse_u64(c);
            skip_ws();
            uint64_t e = 0;
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip_ws();
            }
            if (i < s.size() && s[i] == var) {
                ++i;
                e = 1;
                skip_ws();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    if (!parse_u64(e)) throw parse_error("missing exponent", i);
                }
            } else if (!saw_coeff) {
                throw parse_error(std::string("expected coefficient or '") + var + "'", i);
            }
            if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
            coeffs[e] = (coeffs[e] + mulmod_u64(sign, c % p, p)) % p;
            first = false;
        }
        return coeffs;
    }
};

std::string fp_poly_to_string(const std::vector<uint64_t>& c, char var) {
    std::ostringstream os;
    bool first = true;
    for (size_t e = c.size(); e-- > 0;) {
        if (!c[e]) continue;
        if (!first) os << "+";
        if (e == 0) {
            os << c[e];
        } else {
            if (c[e] != 1) os << c[e] << "*";
            os << var;
            if (e > 1) os << "^" << e;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

// --- Field -----------------------------------------------------------------

FieldPtr Field::make(uint64_t p, unsigned k) {
    FQT_REQUIRE(p > 2 && is_prime_u64(p), "field characteristic must be an odd prime");
    FQT_REQUIRE(k >= 1, "extension degree must be >= 1");
    auto F = std::make_shared<Field>();
    F->p = p;
    F->k = k;
    if (k == 1) {
        F->modulus = {0, 1};  // unused, kept for uniformity
        return F;
    }
    // scan (c_0, ..., c_{k-1}) in base-p counting order
    std::vector<uint64_t> digits(k, 0);
    for (;;) {
        FpPoly cand(digits.begin(), digits.end());
        cand.push_back(1);
        if (fp_is_irreducible(cand, p)) {
            F->modulus = cand;
            return F;
        }
        size_t pos = 0;
        while (pos < k && ++digits[pos] == p) digits[pos++] = 0;
        FQT_CHECK(pos < k, "no irreducible modulus found");
    }
}

FieldPtr Field::make(uint64_t p, unsigned k, std::vector<uint64_t> modulus) {
    FQT_REQUIRE(p > 2 && is_prime_u64(p), "field characteristic must be an odd prime");
    FQT_REQUIRE(k >= 2, "explicit modulus only makes sense for k >= 2");
    for (auto& c : modulus) c %= p;
    fp_trim(modulus);
    FQT_REQUIRE(modulus.size() == k + 1, "modulus degree must equal the extension degree");
    FQT_REQUIRE(modulus.back() == 1, "modulus must be monic");
    FQT_REQUIRE(fp_is_irreducible(modulus, p), "modulus must be irreducible over F_p");
    auto F = std::make_shared<Field>();
    F->p = p;
    F->k = k;
    F->modulus = std::move(modulus);
    return F;
}

FieldPtr Field::parse(const std::string& spec) {
    std::string head = spec;
    std::string mod_text;
    if (auto semi = spec.find(';'); semi != std::string::npos) {
        head = spec.substr(0, semi);
        std::string tail = spec.substr(semi + 1);
        const std::string key = "modulus=";
        FQT_REQUIRE(tail.rfind(key, 0) == 0, "field spec suffix must be ';modulus=<poly>'");
        mod_text = tail.substr(key.size());
    }
    uint64_t p = 0;
    unsigned k = 1;
    size_t caret = head.find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stoull(head);
        } else {
            p = std::stoull(head.substr(0, caret));
            k = (unsigned)std::stoul(head.substr(caret + 1));
        }
    } catch (const std::exception&) {
        throw parse_error("malformed field spec '" + spec + "'", 0);
    }
    if (mod_text.empty()) return make(p, k);
    UTermParser parser(mod_text, 'u');
    return make(p, k, parser.run(p));
}

std::string Field::spec_string() const {
    std::string s = std::to_string(p);
    if (k > 1) {
        s += "^" + std::to_string(k);
        s += ";modulus=" + fp_poly_to_string(modulus, 'u');
    }
    return s;
}

Fq Field::zero() const { return Fq(shared_from_this(), CoeffSeq(k)); }

Fq Field::one() const {
    CoeffSeq c(k);
    c[0] = 1;
    return Fq(shared_from_this(), std::move(c));
}

Fq Field::elem(int64_t v) const {
    int64_t m = v % (int64_t)p;
    if (m < 0) m += (int64_t)p;
    CoeffSeq c(k);
    c[0] = (uint64_t)m;
    return Fq(shared_from_this(), std::move(c));
}

Fq Field::from_coeffs(std::vector<uint64_t> c) const {
    c.resize(k, 0);
    CoeffSeq s(k);
    for (size_t i = 0; i < k; ++i) s[i] = c[i] % p;
    return Fq(shared_from_this(), std::move(s));
}

Fq Field::random(Rng& rng) const {
    CoeffSeq c(k);
    for (size_t i = 0; i < k; ++i) c[i] = rng.below(p);
    return Fq(shared_from_this(), std::move(c));
}

Fq Field::random_nonzero(Rng& rng) const {
    for (;;) {
        Fq x = random(rng);
        if (!x.is_zero()) return x;
    }
}

Fq Field::parse_elem(const std::string& text) const {
    UTermParser parser(text, 'u');
    auto coeffs = parser.run(p);
    FQT_REQUIRE(coeffs.size() <= k, "element degree exceeds extension degree of " + spec_string());
    return from_coeffs(std::move(coeffs));
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same(*b);
}

// --- Fq ---------------------------------------------------------------------

Fq::Fq(FieldPtr F, CoeffSeq coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    FQT_CHECK(F_ && c_.size() == F_->k, "malformed field element");
}

Fq::Fq(FieldPtr F, const std::vector<uint64_t>& coeffs) : F_(std::move(F)) {
    FQT_CHECK(F_ && coeffs.size() == F_->k, "malformed field element");
    CoeffSeq s(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) s[i] = coeffs[i];
    c_ = std::move(s);
}

bool Fq::is_zero() const {
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

bool Fq::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

Fq Fq::operator-() const {
    CoeffSeq r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? F_->p - c_[i] : 0;
    return Fq(F_, std::move(r));
}

Fq operator+(const Fq& a, const Fq& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in addition");
    CoeffSeq r(a.c_.size());
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] = a.c_[i] + b.c_[i];
        if (r[i] >= a.F_->p) r[i] -= a.F_->p;
    }
    return Fq(a.F_, std::move(r));
}

Fq operator-(const Fq& a, const Fq& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in subtraction");
    CoeffSeq r(a.c_.size());
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] = a.c_[i] + a.F_->p - b.c_[i];
        if (r[i] >= a.F_->p) r[i] -= a.F_->p;
    }
    return Fq(a.F_, std::move(r));
}

Fq operator*(const Fq& a, const Fq& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in multiplication");
    const uint64_t p = a.F_->p;
    const unsigned k = a.F_->k;
    if (k == 1) {
        CoeffSeq r(1);
        r[0] = mulmod_u64(a.c_[0], b.c_[0], p);
        return Fq(a.F_, std::move(r));
    }
    FpPoly prod = fp_mul(FpPoly(a.c_.data(), a.c_.data() + k), FpPoly(b.c_.data(), b.c_.data() + k), p);
    prod = fp_mod(std::move(prod), a.F_->modulus, p);
    prod.resize(k, 0);
    CoeffSeq r(k);
    for (size_t i = 0; i < k; ++i) r[i] = prod[i];
    return Fq(a.F_, std::move(r));
}

Fq Fq::inv() const {
    FQT_REQUIRE(!is_zero(), "division by zero in F_q");
    const uint64_t p = F_->p;
    if (F_->k == 1) {
        CoeffSeq r(1);
        r[0] = invmod_u64(c_[0], p);
        return Fq(F_, std::move(r));
    }
    // extended Euclid against the modulus; invariant s_i * this == r_i (mod modulus)
    FpPoly r0 = F_->modulus, r1(c_.data(), c_.data() + c_.size());
    fp_trim(r1);
    FpPoly s0 = {}, s1 = {1};
    while (r1.size() > 1) {
        FpPoly q;
        FpPoly rem = r0;
        uint64_t lc_inv = invmod_u64(r1.back(), p);
        while (rem.size() >= r1.size()) {
            uint64_t c = mulmod_u64(rem.back(), lc_inv, p);
            size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) {
                uint64_t sub = mulmod_u64(c, r1[i], p);
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
            fp_trim(rem);
            if (rem.empty()) break;
        }
        FpPoly s2_sub = fp_mul(q, s1, p);
        FpPoly s2 = s0;
        if (s2.size() < s2_sub.size()) s2.resize(s2_sub.size(), 0);
        for (size_t i = 0; i < s2_sub.size(); ++i) s2[i] = (s2[i] + p - s2_sub[i]) % p;
        fp_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    FQT_CHECK(r1.size() == 1, "element not invertible; modulus not irreducible?");
    uint64_t scale = invmod_u64(r1[0], p);
    s1.resize(F_->k, 0);
    CoeffSeq out(F_->k);
    for (size_t i = 0; i < F_->k; ++i) out[i] = mulmod_u64(s1[i], scale, p);
    return Fq(F_, std::move(out));
}

Fq operator/(const Fq& a, const Fq& b) { return a * b.inv(); }

bool operator==(const Fq& a, const Fq& b) {
    FQT_REQUIRE(same_field(a.F_, b.F_), "field mismatch in comparison");
    return a.c_ == b.c_;
}

Fq Fq::pow(const BigUInt& e) const {
    return pow_big(*this, e, F_->one(), [](const Fq& x, const Fq& y) { return x * y; });
}

Fq Fq::pow_u64(uint64_t e) const { return pow(BigUInt(e)); }

bool Fq::lex_less(const Fq& other) const { return c_.lex_less(other.c_); }

std::string Fq::to_string() const {
    if (F_->k == 1) return std::to_string(c_[0]);
    return fp_poly_to_string(std::vector<uint64_t>(c_.data(), c_.data() + c_.size()), 'u');
}

// --- square machinery --------------------------------------------------------

bool ff_is_square(const Fq& s) {
    FQT_REQUIRE(!s.is_zero(), "square-class of 0 is undefined");
    BigUInt e = s.field()->q_minus_one();
    e.shr1();
    return s.pow(e).is_one();
}

namespace {

// First non-square in base-p counting order of the coefficient vector.
Fq first_nonsquare(const FieldPtr& F) {
    std::vector<uint64_t> digits(F->k, 0);
    for (;;) {
        size_t pos = 0;
        while (pos < F->k && ++digits[pos] == F->p) digits[pos++] = 0;
        FQT_CHECK(pos < F->k, "no non-square found; is q odd?");
        Fq cand = F->from_coeffs(digits);
        if (!cand.is_zero() && !ff_is_square(cand)) return cand;
    }
}

}  // namespace

Fq ff_sqrt(const Fq& s) {
    const FieldPtr& F = s.field();
    if (s.is_zero()) return F->zero();
    FQT_REQUIRE(ff_is_square(s), "ff_sqrt of a non-square");

    // q - 1 = 2^e * m with m odd
    BigUInt m = F->q_minus_one();
    unsigned e = 0;
    while (m.is_even()) {
        m.shr1();
        ++e;
    }
    Fq r;
    if (e == 1) {
        // q = 3 mod 4: r = s^{(q+1)/4}
        BigUInt t = F->q_minus_one();
        t.add_u64(2);  // q + 1
        t.shr1();
        t.shr1();
        r = s.pow(t);
    } else {
        Fq z = first_nonsquare(F);
        Fq c = z.pow(m);
        Fq t = s.pow(m);
        BigUInt m1 = m;
        m1.add_u64(1);
        m1.shr1();
        r = s.pow(m1);
        unsigned big_m = e;
        while (!t.is_one()) {
            Fq t2 = t;
            unsigned i = 0;
            while (!t2.is_one()) {
                t2 = t2 * t2;
                ++i;
                FQT_CHECK(i < big_m, "Tonelli-Shanks lost the 2-adic ladder");
            }
            Fq b = c;
            for (unsigned j = 0; j + i + 1 < big_m; ++j) b = b * b;
            big_m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
    }
    FQT_CHECK(r * r == s, "square root verification failed");
    Fq neg = -r;
    return neg.lex_less(r) ? neg : r;
}

Fq ff_nonsquare(const FieldPtr& F, Rng& rng) {
    for (int trial = 0; trial < 256; ++trial) {
        Fq x = F->random(rng);
        if (!x.is_zero() && !ff_is_square(x)) return x;
    }
    throw internal_error("ff_nonsquare: trial cap exhausted; PRNG failure?");
}

}  // namespace fqt
