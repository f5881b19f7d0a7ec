#include "asymbell/bitword.hpp"

namespace asymbell::gf2 {

std::uint64_t hadamard_codeword_bits(int l, std::uint64_t k) {
    const int n = 1 << l;
    std::uint64_t w = 0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i)
        if (__builtin_parityll(k & i)) w |= std::uint64_t{1} << (n - 1 - i);
    return w;
}

BitWord hadamard_codeword(int l, const BitWord& k) {
    if (l < 1 || l > 6)
        throw DimensionError("hadamard_codeword: l must be in [1, 6], got " + std::to_string(l));
    if (k.length() != l)
        throw DimensionError("hadamard_codeword: k has length " + std::to_string(k.length()) +
                             ", expected " + std::to_string(l));
    return BitWord(1 << l, hadamard_codeword_bits(l, k.value()));
}

}  // namespace asymbell::gf2
