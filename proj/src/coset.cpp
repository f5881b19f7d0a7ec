#include "asymbell/coset.hpp"

#include <map>
#include <mutex>

namespace asymbell::gf2 {

namespace {

// Insert zeros at the pivot positions of a (n-l)-bit index, producing the
// representative with that rank; inverse of dropping the pivot bits.
std::uint64_t decompress(std::uint64_t idx, int n, std::uint64_t pivot_mask, int free_bits) {
    std::uint64_t w = 0;
    int remaining = free_bits;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
        if (pivot_mask & bit) continue;
        --remaining;
        if ((idx >> remaining) & 1u) w |= bit;
    }
    return w;
}

std::uint64_t compress(std::uint64_t w, int n, std::uint64_t pivot_mask) {
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
        if (pivot_mask & bit) continue;
        idx = (idx << 1) | ((w & bit) ? 1u : 0u);
    }
    return idx;
}

}  // namespace

CosetTable::CosetTable(int l) : l_(l) {
    if (l < 1)
        throw DimensionError("CosetTable: l must be >= 1, got " + std::to_string(l));
    if (l > kMaxL)
        throw ResourceError("CosetTable: l = " + std::to_string(l) + " exceeds the supported limit l <= " +
                            std::to_string(kMaxL) + " (words must fit in 64 bits)");
    n_ = 1 << l_;
    coset_count_ = std::uint64_t{1} << (n_ - l_);

    codewords_.resize(static_cast<std::size_t>(n_));
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(n_); ++k)
        codewords_[k] = hadamard_codeword_bits(l_, k);

    for (int t = 0; t < l_; ++t)
        pivot_mask_ |= std::uint64_t{1} << (n_ - 1 - (1 << t));

    if (l_ <= kMaterializeMaxL) {
        reps_.resize(static_cast<std::size_t>(coset_count_));
        for (std::uint64_t idx = 0; idx < coset_count_; ++idx)
            reps_[idx] = decompress(idx, n_, pivot_mask_, n_ - l_);
    }
}

std::uint64_t CosetTable::check_k(std::uint64_t k) const {
    if (k >= static_cast<std::uint64_t>(n_))
        throw DimensionError("CosetTable: local index k out of range");
    return k;
}

std::uint64_t CosetTable::representative_bits(std::uint64_t coset) const {
    if (coset >= coset_count_) throw DimensionError("CosetTable: coset index out of range");
    if (!reps_.empty()) return reps_[coset];
    return decompress(coset, n_, pivot_mask_, n_ - l_);
}

CosetTable::Location CosetTable::locate_bits(std::uint64_t w) const {
    if (n_ < kMaxWordBits && (w >> n_))
        throw DimensionError("CosetTable::locate: word does not fit in " + std::to_string(n_) + " bits");
    // Syndrome: the pivot bits of w are exactly the bits of k, since every
    // representative is zero there and codeword(k) has bit k_t at position 2^t.
    std::uint64_t k = 0;
    for (int t = 0; t < l_; ++t)
        k |= ((w >> (n_ - 1 - (1 << t))) & 1u) << t;
    const std::uint64_t rep = w ^ codewords_[k];
    return Location{compress(rep, n_, pivot_mask_), k};
}

CosetTable::Location CosetTable::locate(const BitWord& w) const {
    if (w.length() != n_)
        throw DimensionError("CosetTable::locate: word length " + std::to_string(w.length()) +
                             ", expected " + std::to_string(n_));
    return locate_bits(w.value());
}

CosetTable build_coset_table(int l) { return CosetTable(l); }

std::shared_ptr<const CosetTable> shared_coset_table(int l) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CosetTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const CosetTable>(l);
    cache.emplace(l, table);
    return table;
}

}  // namespace asymbell::gf2
