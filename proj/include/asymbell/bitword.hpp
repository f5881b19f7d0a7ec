#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "asymbell/errors.hpp"

namespace asymbell::gf2 {

// Words longer than this would not fit a single machine word; coset
// enumeration beyond it is out of budget anyway.
inline constexpr int kMaxWordBits = 64;

// Fixed-length GF(2) bit vector. Bit 0 is the leftmost character of the
// string form and the most significant bit of the integer interpretation.
class BitWord {
public:
    BitWord() = default;

    BitWord(int length, std::uint64_t value) : length_(length), value_(value) {
        if (length < 1 || length > kMaxWordBits)
            throw DimensionError("BitWord length must be in [1, " + std::to_string(kMaxWordBits) +
                                 "], got " + std::to_string(length));
        if (length < kMaxWordBits && value >> length)
            throw DimensionError("BitWord value does not fit in " + std::to_string(length) + " bits");
    }

    static BitWord zero(int length) { return BitWord(length, 0); }

    static BitWord parse(std::string_view s) {
        if (s.empty() || s.size() > kMaxWordBits)
            throw ParseError("bit string length must be in [1, " + std::to_string(kMaxWordBits) + "]");
        std::uint64_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1') throw ParseError(std::string("invalid bit character '") + c + "'");
            v = (v << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return BitWord(static_cast<int>(s.size()), v);
    }

    int length() const { return length_; }
    std::uint64_t value() const { return value_; }

    // i in [0, length): 0 is the leftmost (most significant) position.
    bool bit(int i) const { return (value_ >> (length_ - 1 - i)) & 1u; }

    BitWord operator^(const BitWord& o) const {
        require_same_length(o);
        return BitWord(length_, value_ ^ o.value_);
    }

    bool operator==(const BitWord& o) const = default;

    // Integer order; lexicographic order of the string form coincides with it.
    bool operator<(const BitWord& o) const {
        require_same_length(o);
        return value_ < o.value_;
    }

    std::string str() const {
        std::string s(static_cast<std::size_t>(length_), '0');
        for (int i = 0; i < length_; ++i)
            if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    void require_same_length(const BitWord& o) const {
        if (length_ != o.length_)
            throw DimensionError("BitWord length mismatch: " + std::to_string(length_) + " vs " +
                                 std::to_string(o.length_));
    }

private:
    int length_ = 0;
    std::uint64_t value_ = 0;
};

// sum_i u_i v_i mod 2
inline int gf2_dot(const BitWord& u, const BitWord& v) {
    u.require_same_length(v);
    return __builtin_parityll(u.value() & v.value());
}

inline int hamming_weight(const BitWord& w) { return __builtin_popcountll(w.value()); }

// Hadamard codeword c_k of length 2^l: bit i equals <k, i> mod 2, with i
// running over {0,1}^l in increasing integer order.
BitWord hadamard_codeword(int l, const BitWord& k);

// Integer-valued fast path used throughout the coset machinery.
std::uint64_t hadamard_codeword_bits(int l, std::uint64_t k);

}  // namespace asymbell::gf2
