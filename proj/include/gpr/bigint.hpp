#pragma once
// bigint.hpp - Sign/magnitude arbitrary-precision integer.
//
// Little-endian 64-bit limbs with no leading zero limbs; sign is 0 exactly
// for the value zero. Multiplication is schoolbook on purpose: the cost
// LEDGER models the asymptotic Mult(t), the value here only has to be exact.

#include <algorithm>
#include <cstdint>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "gpr/errors.hpp"

namespace gpr {

class Int {
public:
    Int() = default;

    Int(std::int64_t v) { // NOLINT: implicit by design, mirrors integer literals
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid UB on INT64_MIN
        std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
        mag_.push_back(mag);
    }

    static Int fromUnsigned(std::uint64_t v) {
        Int r;
        if (v != 0) {
            r.sign_ = 1;
            r.mag_.push_back(v);
        }
        return r;
    }

    // 2^k
    static Int pow2(std::uint64_t k) {
        Int r;
        r.sign_ = 1;
        r.mag_.assign(k / 64 + 1, 0);
        r.mag_.back() = std::uint64_t(1) << (k % 64);
        return r;
    }

    static Int fromString(std::string_view s) {
        if (s.empty()) throw BadArgument("Int::fromString: empty string");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw BadArgument("Int::fromString: no digits");
        Int r;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9')
                throw BadArgument("Int::fromString: invalid character '" + std::string(1, c) + "'");
            r.mulSmallInPlace(10);
            r.addSmallInPlace(static_cast<std::uint64_t>(c - '0'));
        }
        if (neg && r.sign_ != 0) r.sign_ = -r.sign_;
        return r;
    }

    int sign() const { return sign_; }
    bool isZero() const { return sign_ == 0; }
    bool isNegative() const { return sign_ < 0; }

    // Number of bits of |x|; by convention 1 for x = 0 so every charge is
    // strictly positive.
    std::uint64_t bitLength() const {
        if (sign_ == 0) return 1;
        std::uint64_t top = mag_.back();
        return (mag_.size() - 1) * 64 + (64 - static_cast<std::uint64_t>(__builtin_clzll(top)));
    }

    bool bit(std::uint64_t i) const {
        std::size_t limb = i / 64;
        if (limb >= mag_.size()) return false;
        return (mag_[limb] >> (i % 64)) & 1;
    }

    std::uint64_t trailingZeroBits() const {
        if (sign_ == 0) return 0;
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            if (mag_[i] == 0) {
                count += 64;
            } else {
                count += static_cast<std::uint64_t>(__builtin_ctzll(mag_[i]));
                break;
            }
        }
        return count;
    }

    // True when |x| mod 2^k == 0.
    bool lowBitsZero(std::uint64_t k) const {
        if (sign_ == 0) return true;
        std::size_t full = k / 64;
        if (full > mag_.size()) full = mag_.size();
        for (std::size_t i = 0; i < full; ++i)
            if (mag_[i] != 0) return false;
        std::uint64_t rem = k % 64;
        if (rem != 0 && k / 64 < mag_.size())
            if (mag_[k / 64] & ((std::uint64_t(1) << rem) - 1)) return false;
        return true;
    }

    Int abs() const {
        Int r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    Int operator-() const {
        Int r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend bool operator==(const Int& a, const Int& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }

    friend std::strong_ordering operator<=>(const Int& a, const Int& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        if (a.sign_ >= 0) return cmpMag(a.mag_, b.mag_);
        return cmpMag(b.mag_, a.mag_);
    }

    friend Int operator+(const Int& a, const Int& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        Int r;
        if (a.sign_ == b.sign_) {
            r.mag_ = addMag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            auto c = cmpMag(a.mag_, b.mag_);
            if (c == std::strong_ordering::equal) return Int{};
            if (c == std::strong_ordering::greater) {
                r.mag_ = subMag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = subMag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend Int operator-(const Int& a, const Int& b) { return a + (-b); }

    friend Int operator*(const Int& a, const Int& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return Int{};
        Int r;
        r.sign_ = a.sign_ * b.sign_;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (std::size_t i = 0; i < a.mag_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < b.mag_.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(a.mag_[i]) * b.mag_[j] +
                                        r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            r.mag_[i + b.mag_.size()] += static_cast<std::uint64_t>(carry);
        }
        r.trim();
        return r;
    }

    Int& operator+=(const Int& b) { return *this = *this + b; }
    Int& operator-=(const Int& b) { return *this = *this - b; }
    Int& operator*=(const Int& b) { return *this = *this * b; }

    // |x| * 2^k, sign preserved.
    Int shiftedLeft(std::uint64_t k) const {
        if (sign_ == 0 || k == 0) return *this;
        Int r;
        r.sign_ = sign_;
        std::size_t limbShift = k / 64;
        std::uint64_t bitShift = k % 64;
        r.mag_.assign(mag_.size() + limbShift + 1, 0);
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            r.mag_[i + limbShift] |= mag_[i] << bitShift;
            if (bitShift != 0)
                r.mag_[i + limbShift + 1] |= mag_[i] >> (64 - bitShift);
        }
        r.trim();
        return r;
    }

    // floor(|x| / 2^k) with sign preserved (callers guard exactness).
    Int shiftedRightTruncate(std::uint64_t k) const {
        if (sign_ == 0) return *this;
        std::size_t limbShift = k / 64;
        if (limbShift >= mag_.size()) return Int{};
        std::uint64_t bitShift = k % 64;
        Int r;
        r.mag_.assign(mag_.size() - limbShift, 0);
        for (std::size_t i = 0; i < r.mag_.size(); ++i) {
            r.mag_[i] = mag_[i + limbShift] >> bitShift;
            if (bitShift != 0 && i + limbShift + 1 < mag_.size())
                r.mag_[i] |= mag_[i + limbShift + 1] << (64 - bitShift);
        }
        r.sign_ = sign_;
        r.trim();
        return r;
    }

    // |x| mod 2^k, sign preserved (zero if the low bits vanish).
    Int lowBits(std::uint64_t k) const {
        if (sign_ == 0) return *this;
        Int r;
        std::size_t limbs = std::min(mag_.size(), static_cast<std::size_t>(k / 64 + (k % 64 ? 1 : 0)));
        r.mag_.assign(mag_.begin(), mag_.begin() + static_cast<std::ptrdiff_t>(limbs));
        if (k % 64 != 0 && k / 64 < r.mag_.size())
            r.mag_[k / 64] &= (std::uint64_t(1) << (k % 64)) - 1;
        r.sign_ = sign_;
        r.trim();
        return r;
    }

    // Quotient and remainder by a small positive divisor; remainder carries
    // the dividend's sign (truncated division).
    std::pair<Int, std::int64_t> divmodSmall(std::uint64_t d) const {
        if (d == 0) throw BadArgument("Int::divmodSmall: division by zero");
        if (sign_ == 0) return {Int{}, 0};
        Int q;
        q.mag_.assign(mag_.size(), 0);
        unsigned __int128 rem = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | mag_[i];
            q.mag_[i] = static_cast<std::uint64_t>(cur / d);
            rem = cur % d;
        }
        q.sign_ = sign_;
        q.trim();
        auto r = static_cast<std::int64_t>(rem);
        return {q, sign_ < 0 ? -r : r};
    }

    // Valid only when the value fits; callers use it for desk-scale readouts.
    std::int64_t toInt64() const {
        if (sign_ == 0) return 0;
        if (mag_.size() > 1 || mag_[0] > static_cast<std::uint64_t>(INT64_MAX))
            throw BadArgument("Int::toInt64: value out of range");
        auto v = static_cast<std::int64_t>(mag_[0]);
        return sign_ < 0 ? -v : v;
    }

    bool fitsInt64() const {
        return sign_ == 0 || (mag_.size() == 1 && mag_[0] <= static_cast<std::uint64_t>(INT64_MAX));
    }

    double toDouble() const {
        double r = 0.0;
        for (std::size_t i = mag_.size(); i-- > 0;)
            r = r * 18446744073709551616.0 + static_cast<double>(mag_[i]);
        return sign_ < 0 ? -r : r;
    }

    std::string toString() const {
        if (sign_ == 0) return "0";
        std::string out;
        Int cur = abs();
        while (!cur.isZero()) {
            auto [q, r] = cur.divmodSmall(10000000000000000000ULL);
            std::string chunk = std::to_string(static_cast<std::uint64_t>(r));
            if (!q.isZero()) chunk.insert(0, 19 - chunk.size(), '0');
            out.insert(0, chunk);
            cur = q;
        }
        if (sign_ < 0) out.insert(0, 1, '-');
        return out;
    }

private:
    int sign_ = 0;
    std::vector<std::uint64_t> mag_;

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    void mulSmallInPlace(std::uint64_t m) {
        unsigned __int128 carry = 0;
        for (auto& limb : mag_) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
            limb = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        if (carry != 0) mag_.push_back(static_cast<std::uint64_t>(carry));
        trim();
    }

    void addSmallInPlace(std::uint64_t a) {
        if (a == 0) return;
        if (sign_ == 0) {
            sign_ = 1;
            mag_.assign(1, a);
            return;
        }
        unsigned __int128 carry = a;
        for (auto& limb : mag_) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limb) + carry;
            limb = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
            if (carry == 0) break;
        }
        if (carry != 0) mag_.push_back(static_cast<std::uint64_t>(carry));
    }

    static std::strong_ordering cmpMag(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
    }

    static std::vector<std::uint64_t> addMag(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b) {
        const auto& lo = a.size() < b.size() ? a : b;
        const auto& hi = a.size() < b.size() ? b : a;
        std::vector<std::uint64_t> r(hi.size() + 1, 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            unsigned __int128 cur = static_cast<unsigned __int128>(hi[i]) + (i < lo.size() ? lo[i] : 0) + carry;
            r[i] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        r[hi.size()] = static_cast<std::uint64_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // requires |a| > |b|
    static std::vector<std::uint64_t> subMag(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            unsigned __int128 bi = i < b.size() ? b[i] : 0;
            unsigned __int128 ai = a[i];
            unsigned __int128 sub = bi + static_cast<unsigned __int128>(borrow);
            if (ai >= sub) {
                r[i] = static_cast<std::uint64_t>(ai - sub);
                borrow = 0;
            } else {
                r[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) + ai - sub);
                borrow = 1;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

inline Int abs(const Int& x) { return x.abs(); }

} // namespace gpr
