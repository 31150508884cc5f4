#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace indexlab::detail {

/// Minimal unsigned big integer: just enough for positional base-q codeword
/// packing and exact 2^L vs q^r comparisons. Little-endian 32-bit limbs.
class BigUInt {
   public:
    BigUInt() = default;
    explicit BigUInt(std::uint64_t v) {
        while (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
            v >>= 32;
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    void mul_small(std::uint64_t m) {
        if (m == 0) {
            limbs_.clear();
            return;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t t = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(t & 0xffffffffu);
            carry = t >> 32;
        }
        while (carry != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
            carry >>= 32;
        }
    }

    void add_small(std::uint64_t a) {
        std::uint64_t carry = a;
        for (std::size_t i = 0; carry != 0 && i < limbs_.size(); ++i) {
            std::uint64_t t = static_cast<std::uint64_t>(limbs_[i]) + (carry & 0xffffffffu);
            limbs_[i] = static_cast<std::uint32_t>(t & 0xffffffffu);
            carry = (carry >> 32) + (t >> 32);
        }
        while (carry != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
            carry >>= 32;
        }
    }

    /// Divides in place by a small divisor, returns the remainder.
    std::uint64_t divmod_small(std::uint64_t d) {
        if (d == 0) throw std::invalid_argument("BigUInt: division by zero");
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return rem;
    }

    /// Number of bits in the binary representation (0 for zero).
    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        std::uint32_t top = limbs_.back();
        std::size_t bits = (limbs_.size() - 1) * 32;
        while (top != 0) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    bool bit(std::size_t i) const {
        std::size_t limb = i / 32;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i % 32)) & 1u;
    }

    void set_bit(std::size_t i) {
        std::size_t limb = i / 32;
        if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
        limbs_[limb] |= (std::uint32_t{1} << (i % 32));
    }

    static BigUInt pow(std::uint64_t base, std::uint32_t exp) {
        BigUInt r(1);
        for (std::uint32_t i = 0; i < exp; ++i) r.mul_small(base);
        return r;
    }

    /// Smallest L with 2^L >= *this (so L bits can address this many values).
    std::size_t ceil_log2() const {
        if (limbs_.empty()) return 0;
        std::size_t bl = bit_length();
        // power of two <=> exactly one set bit
        std::size_t ones = 0;
        for (std::uint32_t limb : limbs_) ones += static_cast<std::size_t>(__builtin_popcount(limb));
        return ones == 1 ? bl - 1 : bl;
    }

   private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint32_t> limbs_;
};

}  // namespace indexlab::detail
