#include "rawfp.hpp"

#include <algorithm>
#include <cstring>

#include "fqt/error.hpp"

namespace fqt::rawfp {

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

void Arith::finish(unsigned __int128* acc, uint64_t* out) const {
    if (k == 1) {
        out[0] = (uint64_t)(acc[0] % p);
        return;
    }
    // reduce the 2k-1 accumulator slots mod p, then mod the field modulus
    uint64_t tmp[2 * kMaxExt];
    for (uint32_t i = 0; i < 2 * k - 1; ++i) tmp[i] = (uint64_t)(acc[i] % p);
    const uint64_t p2 = p * p;
    for (uint32_t d = 2 * k - 2; d >= k; --d) {
        uint64_t c = tmp[d];
        if (c) {
            for (uint32_t j = 0; j < k; ++j) {
                tmp[d - k + j] = (tmp[d - k + j] + p2 - c * modulus[j]) % p;
            }
        }
        tmp[d] = 0;
        if (d == k) break;
    }
    for (uint32_t i = 0; i < k; ++i) out[i] = tmp[i];
}

void Arith::mul(const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    unsigned __int128 acc[2 * kMaxExt] = {};
    mul_acc(a, b, acc);
    finish(acc, out);
}

namespace {

// extended Euclid over F_p[u]; small degrees only
using UP = std::vector<uint64_t>;

void up_trim(UP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UP up_mul(const UP& a, const UP& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    UP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    up_trim(r);
    return r;
}

}  // namespace

void Arith::inv(const uint64_t* a, uint64_t* out) const {
    if (k == 1) {
        FQT_CHECK(a[0] != 0, "rawfp: inverse of zero");
        out[0] = powmod(a[0], p - 2, p);
        return;
    }
    UP r0(modulus.begin(), modulus.end()), r1(a, a + k);
    up_trim(r1);
    FQT_CHECK(!r1.empty(), "rawfp: inverse of zero");
    UP s0, s1 = {1};
    while (r1.size() > 1) {
        UP rem = r0, q;
        uint64_t lc_inv = powmod(r1.back(), p - 2, p);
        const uint64_t p2 = p * p;
        while (rem.size() >= r1.size()) {
            uint64_t c = mulmod(rem.back(), lc_inv, p);
            size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] = (rem[shift + i] + p2 - c * r1[i]) % p;
            up_trim(rem);
            if (rem.empty()) break;
        }
        UP qs = up_mul(q, s1, p);
        UP s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
        up_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    FQT_CHECK(r1.size() == 1, "rawfp: element not invertible");
    uint64_t scale = powmod(r1[0], p - 2, p);
    for (uint32_t i = 0; i < k; ++i) out[i] = i < s1.size() ? mulmod(s1[i], scale, p) : 0;
}

// --- polynomial layer ---------------------------------------------------------

namespace {

constexpr size_t kKaraCutoff = 384;

void school_into(const Arith& A, const FPoly& a, const FPoly& b, FPoly& out) {
    const uint32_t k = A.k;
    if (k == 1) {
        const uint64_t* aw = a.w.data();
        const uint64_t* bw = b.w.data();
        uint64_t* ow = out.w.data();
        const uint64_t p = A.p;
        for (size_t c = 0; c + 1 < a.n + b.n; ++c) {
            unsigned __int128 acc = 0;
            size_t lo = c >= b.n - 1 ? c - (b.n - 1) : 0;
            size_t hi = std::min(c, a.n - 1);
            for (size_t i = lo; i <= hi; ++i) acc += (unsigned __int128)aw[i] * bw[c - i];
            ow[c] = (uint64_t)(acc % p);
        }
        return;
    }
    unsigned __int128 acc[2 * kMaxExt];
    for (size_t c = 0; c + 1 < a.n + b.n; ++c) {
        std::memset(acc, 0, sizeof(unsigned __int128) * (2 * k - 1));
        size_t lo = c >= b.n - 1 ? c - (b.n - 1) : 0;
        size_t hi = std::min(c, a.n - 1);
        for (size_t i = lo; i <= hi; ++i) A.mul_acc(a.coeff(i), b.coeff(c - i), acc);
        A.finish(acc, out.coeff(c));
    }
}

FPoly kara(const Arith& A, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return make(0, A.k);
    FPoly out = make(a.n + b.n - 1, A.k);
    if (std::min(a.n, b.n) < kKaraCutoff) {
        school_into(A, a, b, out);
        trim(A, out);
        return out;
    }
    size_t h = (std::max(a.n, b.n) + 1) / 2;
    auto slice = [&](const FPoly& x, size_t from, size_t to) {
        to = std::min(to, x.n);
        FPoly r = make(to > from ? to - from : 0, A.k);
        if (to > from) std::memcpy(r.w.data(), x.w.data() + from * A.k, (to - from) * A.k * sizeof(uint64_t));
        trim(A, r);
        return r;
    };
    FPoly a0 = slice(a, 0, h), a1 = slice(a, h, a.n);
    FPoly b0 = slice(b, 0, h), b1 = slice(b, h, b.n);
    FPoly z0 = kara(A, a0, b0);
    FPoly z2 = kara(A, a1, b1);
    FPoly as = add(A, a0, a1), bs = add(A, b0, b1);
    FPoly z1 = kara(A, as, bs);
    const uint64_t p = A.p;
    auto acc = [&](const FPoly& src, size_t off, bool neg) {
        for (size_t i = 0; i < src.n; ++i) {
            if (off + i >= out.n) break;
            const uint64_t* s = src.coeff(i);
            uint64_t* d = out.coeff(off + i);
            for (uint32_t w = 0; w < A.k; ++w) d[w] = neg ? (d[w] + p - s[w]) % p : (d[w] + s[w]) % p;
        }
    };
    acc(z0, 0, false);
    acc(z1, h, false);
    acc(z0, h, true);
    acc(z2, h, true);
    acc(z2, 2 * h, false);
    trim(A, out);
    return out;
}

}  // namespace

FPoly mul(const Arith& A, const FPoly& a, const FPoly& b) { return kara(A, a, b); }

FPoly add(const Arith& A, const FPoly& a, const FPoly& b) {
    FPoly r = make(std::max(a.n, b.n), A.k);
    const uint64_t p = A.p;
    for (size_t i = 0; i < a.n; ++i) std::memcpy(r.coeff(i), a.coeff(i), A.k * sizeof(uint64_t));
    for (size_t i = 0; i < b.n; ++i) {
        uint64_t* d = r.coeff(i);
        const uint64_t* s = b.coeff(i);
        for (uint32_t w = 0; w < A.k; ++w) {
            d[w] += s[w];
            if (d[w] >= p) d[w] -= p;
        }
    }
    trim(A, r);
    return r;
}

FPoly sub(const Arith& A, const FPoly& a, const FPoly& b) {
    FPoly r = make(std::max(a.n, b.n), A.k);
    const uint64_t p = A.p;
    for (size_t i = 0; i < a.n; ++i) std::memcpy(r.coeff(i), a.coeff(i), A.k * sizeof(uint64_t));
    for (size_t i = 0; i < b.n; ++i) {
        uint64_t* d = r.coeff(i);
        const uint64_t* s = b.coeff(i);
        for (uint32_t w = 0; w < A.k; ++w) {
            d[w] = d[w] + p - s[w];
            if (d[w] >= p) d[w] -= p;
        }
    }
    trim(A, r);
    return r;
}

void divmod(const Arith& A, const FPoly& a, const FPoly& f, FPoly& quot, FPoly& rem) {
    FQT_CHECK(!f.empty(), "rawfp: division by zero polynomial");
    rem = a;
    if (a.n < f.n) {
        quot = make(0, A.k);
        return;
    }
    quot = make(a.n - f.n + 1, A.k);
    const uint64_t p = A.p;
    if (A.k == 1) {
        uint64_t* rw = rem.w.data();
        const uint64_t* fw = f.w.data();
        uint64_t* qw = quot.w.data();
        const uint64_t lc_inv = powmod(fw[f.n - 1], p - 2, p);
        const uint64_t p2 = p * p;
        for (size_t i = rem.n; i-- > 0 && i + 1 >= f.n;) {
            if (!rw[i]) continue;
            uint64_t c0 = (rw[i] * lc_inv) % p;
            size_t shift = i + 1 - f.n;
            qw[shift] = c0;
            for (size_t j = 0; j < f.n; ++j) rw[shift + j] = (rw[shift + j] + p2 - c0 * fw[j]) % p;
        }
        trim(A, rem);
        trim(A, quot);
        return;
    }
    uint64_t lc_inv[kMaxExt];
    A.inv(f.coeff(f.n - 1), lc_inv);
    uint64_t c[kMaxExt], t[kMaxExt];
    for (size_t i = rem.n; i-- > 0 && i + 1 >= f.n;) {
        if (A.is_zero(rem.coeff(i))) continue;
        A.mul(rem.coeff(i), lc_inv, c);
        size_t shift = i + 1 - f.n;
        std::memcpy(quot.coeff(shift), c, A.k * sizeof(uint64_t));
        for (size_t j = 0; j < f.n; ++j) {
            if (A.is_zero(f.coeff(j))) continue;
            A.mul(c, f.coeff(j), t);
            uint64_t* d = rem.coeff(shift + j);
            for (uint32_t w = 0; w < A.k; ++w) {
                d[w] = d[w] + p - t[w];
                if (d[w] >= p) d[w] -= p;
            }
        }
    }
    trim(A, rem);
    trim(A, quot);
}

FPoly mod(const Arith& A, FPoly a, const FPoly& f) {
    FPoly q, r;
    divmod(A, a, f, q, r);
    return r;
}

namespace {

// in-place remainder without quotient bookkeeping, for the gcd loop
void mod_in_place(const Arith& A, FPoly& a, const FPoly& f) {
    const uint64_t p = A.p;
    if (A.k == 1) {
        uint64_t* rw = a.w.data();
        const uint64_t* fw = f.w.data();
        const uint64_t lc_inv = powmod(fw[f.n - 1], p - 2, p);
        const uint64_t p2 = p * p;
        size_t n = a.n;
        while (n >= f.n) {
            if (rw[n - 1]) {
                uint64_t c0 = (rw[n - 1] * lc_inv) % p;
                size_t shift = n - f.n;
                for (size_t j = 0; j + 1 < f.n; ++j) rw[shift + j] = (rw[shift + j] + p2 - c0 * fw[j]) % p;
                rw[n - 1] = 0;
            }
            while (n > 0 && rw[n - 1] == 0) --n;
        }
        a.n = n;
        a.w.resize(n);
        return;
    }
    uint64_t lc_inv[kMaxExt];
    A.inv(f.coeff(f.n - 1), lc_inv);
    uint64_t c[kMaxExt], t[kMaxExt];
    size_t n = a.n;
    while (n >= f.n) {
        if (!A.is_zero(a.coeff(n - 1))) {
            A.mul(a.coeff(n - 1), lc_inv, c);
            size_t shift = n - f.n;
            for (size_t j = 0; j + 1 < f.n; ++j) {
                if (A.is_zero(f.coeff(j))) continue;
                A.mul(c, f.coeff(j), t);
                uint64_t* d = a.coeff(shift + j);
                for (uint32_t w = 0; w < A.k; ++w) {
                    d[w] = d[w] + p - t[w];
                    if (d[w] >= p) d[w] -= p;
                }
            }
            for (uint32_t w = 0; w < A.k; ++w) a.coeff(n - 1)[w] = 0;
        }
        while (n > 0 && A.is_zero(a.coeff(n - 1))) --n;
    }
    a.n = n;
    a.w.resize(n * A.k);
}

}  // namespace

FPoly gcd(const Arith& A, FPoly a, FPoly b) {
    while (!b.empty()) {
        mod_in_place(A, a, b);
        std::swap(a, b);
    }
    return a;
}

namespace {

FPoly reverse_at(const Arith& A, const FPoly& a, size_t deg) {
    FPoly r = make(deg + 1, A.k);
    for (size_t i = 0; i < a.n && i <= deg; ++i)
        std::memcpy(r.coeff(deg - i), a.coeff(i), A.k * sizeof(uint64_t));
    trim(A, r);
    return r;
}

FPoly trunc(const Arith& A, FPoly a, size_t len) {
    if (a.n > len) {
        a.n = len;
        a.w.resize(len * A.k);
    }
    trim(A, a);
    return a;
}

FPoly series_inverse(const Arith& A, const FPoly& f, size_t prec) {
    FQT_CHECK(!f.empty() && !A.is_zero(f.coeff(0)), "rawfp: series inverse needs an invertible constant term");
    FPoly inv = make(1, A.k);
    A.inv(f.coeff(0), inv.coeff(0));
    size_t cur = 1;
    const uint64_t p = A.p;
    while (cur < prec) {
        cur = std::min(2 * cur, prec);
        FPoly fi = trunc(A, mul(A, trunc(A, f, cur), inv), cur);
        // tm = 2 - fi
        FPoly tm = make(std::max<size_t>(fi.n, 1), A.k);
        for (size_t i = 0; i < fi.n; ++i) {
            const uint64_t* s = fi.coeff(i);
            uint64_t* d = tm.coeff(i);
            for (uint32_t w = 0; w < A.k; ++w) d[w] = s[w] ? p - s[w] : 0;
        }
        tm.coeff(0)[0] = (tm.coeff(0)[0] + 2) % p;
        trim(A, tm);
        inv = trunc(A, mul(A, inv, tm), cur);
    }
    return inv;
}

}  // namespace

Barrett::Barrett(const Arith& A, FPoly f) : A_(A), f_(std::move(f)) {
    FQT_CHECK(f_.n >= 2, "rawfp: Barrett modulus must be non-constant");
    size_t n = f_.n - 1;
    inv_ = series_inverse(A_, reverse_at(A_, f_, n), n >= 1 ? n : 1);
}

FPoly Barrett::reduce(FPoly a) const {
    size_t n = f_.n - 1;
    trim(A_, a);
    if (a.n <= n) return a;
    FQT_CHECK(a.n - 1 <= 2 * n - 2, "rawfp: Barrett input degree too large");
    size_t m = a.n - 1 - n;
    FPoly ra = reverse_at(A_, a, a.n - 1);
    FPoly qrev = trunc(A_, mul(A_, trunc(A_, ra, m + 1), trunc(A_, inv_, m + 1)), m + 1);
    FPoly q = reverse_at(A_, qrev, m);
    FPoly qf = mul(A_, q, f_);
    FPoly r = sub(A_, a, qf);
    FQT_CHECK(r.n <= n, "rawfp: Barrett reduction left an oversized remainder");
    return r;
}

FPoly Barrett::mulmod(const FPoly& a, const FPoly& b) const {
    if (a.empty() || b.empty()) return make(0, A_.k);
    return reduce(mul(A_, a, b));
}

FPoly Barrett::powmod(const FPoly& base, const BigUInt& e) const {
    FPoly b = mod(A_, base, f_);
    FPoly one = make(1, A_.k);
    one.coeff(0)[0] = 1;
    if (e.is_zero()) return one;
    FPoly acc = one;
    for (size_t i = e.bit_length(); i-- > 0;) {
        acc = mulmod(acc, acc);
        if (e.bit(i)) acc = mulmod(acc, b);
    }
    return acc;
}

}  // namespace fqt::rawfp
