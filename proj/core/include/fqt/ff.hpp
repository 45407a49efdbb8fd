#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fqt/bigint.hpp"
#include "fqt/error.hpp"
#include "fqt/prng.hpp"

namespace fqt {

class Fq;
struct Field;
using FieldPtr = std::shared_ptr<const Field>;

// Immutable description of F_q, q = p^k with p an odd prime. For k > 1 the
// field is F_p[u]/(modulus) in the polynomial basis 1, u, ..., u^{k-1}.
struct Field : std::enable_shared_from_this<Field> {
    uint64_t p;
    unsigned k;
    std::vector<uint64_t> modulus;  // monic, degree k, coefficients mod p; size k+1

    // Deterministic modulus selection when none is given: the first monic
    // irreducible of degree k in base-p counting order of (c_0, ..., c_{k-1}).
    static FieldPtr make(uint64_t p, unsigned k = 1);
    static FieldPtr make(uint64_t p, unsigned k, std::vector<uint64_t> modulus);

    // "p", "p^k", optionally ";modulus=<poly in u>".
    static FieldPtr parse(const std::string& spec);
    std::string spec_string() const;

    bool same(const Field& other) const {
        return p == other.p && k == other.k && modulus == other.modulus;
    }

    BigUInt q() const { return BigUInt::pow(p, k); }
    BigUInt q_minus_one() const {
        BigUInt r = q();
        r.sub_u64(1);
        return r;
    }

    Fq zero() const;
    Fq one() const;
    Fq elem(int64_t v) const;                     // image of an integer
    Fq from_coeffs(std::vector<uint64_t> c) const;  // polynomial-basis coords
    Fq random(Rng& rng) const;
    Fq random_nonzero(Rng& rng) const;

    Fq parse_elem(const std::string& text) const;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// Coefficient storage for field elements: inline for the common small
// extension degrees, heap beyond that.
class CoeffSeq {
   public:
    CoeffSeq() = default;
    explicit CoeffSeq(size_t n) : n_(n) {
        if (n_ > kInline) {
            big_.assign(n_, 0);
        } else {
            for (size_t i = 0; i < n_; ++i) small_[i] = 0;
        }
    }
    size_t size() const { return n_; }
    uint64_t* data() { return n_ <= kInline ? small_ : big_.data(); }
    const uint64_t* data() const { return n_ <= kInline ? small_ : big_.data(); }
    uint64_t& operator[](size_t i) { return data()[i]; }
    uint64_t operator[](size_t i) const { return data()[i]; }

    bool operator==(const CoeffSeq& o) const {
        if (n_ != o.n_) return false;
        const uint64_t* a = data();
        const uint64_t* b = o.data();
        for (size_t i = 0; i < n_; ++i) {
            if (a[i] != b[i]) return false;
        }
        return true;
    }
    bool lex_less(const CoeffSeq& o) const {
        size_t m = n_ < o.n_ ? n_ : o.n_;
        const uint64_t* a = data();
        const uint64_t* b = o.data();
        for (size_t i = 0; i < m; ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return n_ < o.n_;
    }

   private:
    static constexpr size_t kInline = 4;
    uint64_t small_[kInline] = {};
    std::vector<uint64_t> big_;
    size_t n_ = 0;
};

// Element of F_q. Carries its field handle; all arithmetic is exact.
class Fq {
   public:
    Fq() = default;  // detached null element, only assignable
    Fq(FieldPtr F, CoeffSeq coeffs);
    Fq(FieldPtr F, const std::vector<uint64_t>& coeffs);

    const FieldPtr& field() const { return F_; }
    std::vector<uint64_t> coeffs() const {
        return std::vector<uint64_t>(c_.data(), c_.data() + c_.size());
    }
    const CoeffSeq& raw() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    Fq operator-() const;
    Fq inv() const;
    Fq pow(const BigUInt& e) const;
    Fq pow_u64(uint64_t e) const;

    friend Fq operator+(const Fq& a, const Fq& b);
    friend Fq operator-(const Fq& a, const Fq& b);
    friend Fq operator*(const Fq& a, const Fq& b);
    friend Fq operator/(const Fq& a, const Fq& b);
    friend bool operator==(const Fq& a, const Fq& b);
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

    Fq& operator+=(const Fq& b) { return *this = *this + b; }
    Fq& operator-=(const Fq& b) { return *this = *this - b; }
    Fq& operator*=(const Fq& b) { return *this = *this * b; }
    Fq& operator/=(const Fq& b) { return *this = *this / b; }

    // Total order on coefficient vectors (c_0, c_1, ...); used for canonical
    // choices such as which of the two square roots to return.
    bool lex_less(const Fq& other) const;

    std::string to_string() const;  // integer for k = 1, polynomial in u otherwise

   private:
    FieldPtr F_;
    CoeffSeq c_;
};

// s^{(q-1)/2} test. s must be nonzero.
bool ff_is_square(const Fq& s);

// Square root by Tonelli-Shanks; deterministic (the non-residue needed by the
// method is found by scanning elements in a fixed order). Returns the root
// whose coefficient vector is lexicographically smaller. sqrt(0) = 0.
Fq ff_sqrt(const Fq& s);

// Random non-square. Expected two draws; throws after a hard cap.
Fq ff_nonsquare(const FieldPtr& F, Rng& rng);

}  // namespace fqt
