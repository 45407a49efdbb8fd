#pragma once

// Internal fast path for dense polynomial arithmetic over F_{p^k} with
// p < 2^31 and small k: coefficients as flat k-word slices, lazy reduction
// through 128-bit accumulators, Karatsuba above a cutoff, and Newton/Barrett
// reduction for repeated work modulo a fixed polynomial.

#include <cstdint>
#include <vector>

#include "fqt/bigint.hpp"

namespace fqt::rawfp {

inline constexpr size_t kMaxExt = 8;  // extension degrees served by this layer

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (a * b) % p;  // operands < p < 2^31
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);

// Arithmetic of the coefficient field F_{p^k} on raw k-word slices.
struct Arith {
    uint64_t p = 0;
    uint32_t k = 1;
    std::vector<uint64_t> modulus;  // size k+1, monic; unused for k == 1

    // acc has 2k-1 slots; adds the product of two slices without reduction
    void mul_acc(const uint64_t* a, const uint64_t* b, unsigned __int128* acc) const {
        for (uint32_t i = 0; i < k; ++i) {
            if (!a[i]) continue;
            for (uint32_t j = 0; j < k; ++j) acc[i + j] += (unsigned __int128)a[i] * b[j];
        }
    }
    void finish(unsigned __int128* acc, uint64_t* out) const;  // reduce to a k-word slice
    void mul(const uint64_t* a, const uint64_t* b, uint64_t* out) const;
    void inv(const uint64_t* a, uint64_t* out) const;
    bool is_zero(const uint64_t* a) const {
        for (uint32_t i = 0; i < k; ++i) {
            if (a[i]) return false;
        }
        return true;
    }
};

// Dense polynomial with k words per coefficient, trimmed.
struct FPoly {
    std::vector<uint64_t> w;
    size_t n = 0;  // number of coefficients

    const uint64_t* coeff(size_t i) const { return w.data() + i * stride; }
    uint64_t* coeff(size_t i) { return w.data() + i * stride; }
    size_t stride = 1;

    bool empty() const { return n == 0; }
};

inline FPoly make(size_t n, uint32_t k) {
    FPoly r;
    r.n = n;
    r.stride = k;
    r.w.assign(n * k, 0);
    return r;
}

inline void trim(const Arith& A, FPoly& a) {
    size_t n = a.n;
    while (n > 0 && A.is_zero(a.coeff(n - 1))) --n;
    if (n != a.n) {
        a.n = n;
        a.w.resize(n * A.k);
    }
}

FPoly mul(const Arith& A, const FPoly& a, const FPoly& b);
FPoly add(const Arith& A, const FPoly& a, const FPoly& b);
FPoly sub(const Arith& A, const FPoly& a, const FPoly& b);
FPoly mod(const Arith& A, FPoly a, const FPoly& f);
void divmod(const Arith& A, const FPoly& a, const FPoly& f, FPoly& quot, FPoly& rem);
FPoly gcd(const Arith& A, FPoly a, FPoly b);

class Barrett {
   public:
    Barrett(const Arith& A, FPoly f);
    const FPoly& modulus() const { return f_; }
    FPoly reduce(FPoly a) const;  // deg(a) <= 2 deg(f) - 2
    FPoly mulmod(const FPoly& a, const FPoly& b) const;
    FPoly powmod(const FPoly& base, const BigUInt& e) const;

   private:
    Arith A_;
    FPoly f_;
    FPoly inv_;
};

}  // namespace fqt::rawfp
