#pragma once

#include <cstdint>
#include <vector>

#include "fqt/error.hpp"

namespace fqt {

// Unsigned big integer, sized for group orders q^m - 1 used as exponents.
// Little-endian 64-bit limbs, no trailing zero limbs (zero == empty).
class BigUInt {
   public:
    BigUInt() = default;
    explicit BigUInt(uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    static BigUInt pow(uint64_t base, uint64_t exp) {
        BigUInt r(1);
        for (uint64_t i = 0; i < exp; ++i) r.mul_u64(base);
        return r;
    }

    bool is_zero() const noexcept { return limbs_.empty(); }
    bool is_even() const noexcept { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

    BigUInt& mul_u64(uint64_t m) {
        if (m == 0 || is_zero()) {
            limbs_.clear();
            return *this;
        }
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 cur = (unsigned __int128)limb * m + carry;
            limb = (uint64_t)cur;
            carry = cur >> 64;
        }
        if (carry) limbs_.push_back((uint64_t)carry);
        return *this;
    }

    BigUInt& add_u64(uint64_t a) {
        unsigned __int128 carry = a;
        for (size_t i = 0; i < limbs_.size() && carry; ++i) {
            unsigned __int128 cur = (unsigned __int128)limbs_[i] + carry;
            limbs_[i] = (uint64_t)cur;
            carry = cur >> 64;
        }
        if (carry) limbs_.push_back((uint64_t)carry);
        return *this;
    }

    BigUInt& sub_u64(uint64_t a) {
        FQT_CHECK(!is_zero() || a == 0, "BigUInt::sub_u64 underflow");
        uint64_t borrow = a;
        for (size_t i = 0; i < limbs_.size() && borrow; ++i) {
            uint64_t before = limbs_[i];
            limbs_[i] -= borrow;
            borrow = before < borrow ? 1 : 0;
        }
        FQT_CHECK(borrow == 0, "BigUInt::sub_u64 underflow");
        trim();
        return *this;
    }

    BigUInt& shr1() {
        uint64_t carry = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            uint64_t next = limbs_[i] & 1u;
            limbs_[i] = (limbs_[i] >> 1) | (carry << 63);
            carry = next;
        }
        trim();
        return *this;
    }

    size_t bit_length() const noexcept {
        if (limbs_.empty()) return 0;
        uint64_t top = limbs_.back();
        size_t bits = (limbs_.size() - 1) * 64;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    bool bit(size_t i) const noexcept {
        size_t limb = i / 64;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i % 64)) & 1u;
    }

    uint64_t low_u64() const noexcept { return limbs_.empty() ? 0 : limbs_[0]; }

    bool fits_u64() const noexcept { return limbs_.size() <= 1; }

    bool operator==(const BigUInt& o) const noexcept { return limbs_ == o.limbs_; }

   private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<uint64_t> limbs_;
};

// x^e by square-and-multiply, msb first. Mul is any associative binary op
// with `one` as identity.
template <class T, class Mul>
T pow_big(const T& x, const BigUInt& e, const T& one, Mul mul) {
    if (e.is_zero()) return one;
    T acc = one;
    for (size_t i = e.bit_length(); i-- > 0;) {
        acc = mul(acc, acc);
        if (e.bit(i)) acc = mul(acc, x);
    }
    return acc;
}

}  // namespace fqt
