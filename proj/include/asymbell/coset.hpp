#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "asymbell/bitword.hpp"

namespace asymbell::gf2 {

// The Hadamard subgroup H of {0,1}^n (n = 2^l) and the coset structure of
// {0,1}^n / H. Each coset is labeled by its lexicographically smallest
// element; within a coset, element k is representative ^ codeword(k).
//
// A word w is a representative iff it has 0 bits at the integer positions
// {2^t : t < l}: for k != 0 the first nonzero position of codeword(k) is
// 2^(lowest set bit of k), so w < w^c_k for all k exactly when those l
// positions are clear. This gives O(n)-time locate with no table, which is
// what keeps l = 5 and 6 usable; small tables are still materialized so the
// closed-form path can be checked against plain enumeration.
class CosetTable {
public:
    static constexpr int kMaxL = 6;            // 2^l-bit words must fit in 64 bits
    static constexpr int kMaterializeMaxL = 4; // explicit representative/locator arrays

    explicit CosetTable(int l);

    int l() const { return l_; }
    int n() const { return n_; }
    std::uint64_t coset_count() const { return coset_count_; }
    bool materialized() const { return !reps_.empty(); }

    // Subgroup element c_k, k in [0, n).
    BitWord codeword(std::uint64_t k) const { return BitWord(n_, codewords_[check_k(k)]); }
    std::uint64_t codeword_bits(std::uint64_t k) const { return codewords_[check_k(k)]; }
    const std::vector<std::uint64_t>& subgroup() const { return codewords_; }

    BitWord representative(std::uint64_t coset) const { return BitWord(n_, representative_bits(coset)); }
    std::uint64_t representative_bits(std::uint64_t coset) const;

    // Word stored at (coset, k): representative ^ codeword(k).
    BitWord element(std::uint64_t coset, std::uint64_t k) const {
        return BitWord(n_, element_bits(coset, k));
    }
    std::uint64_t element_bits(std::uint64_t coset, std::uint64_t k) const {
        return representative_bits(coset) ^ codewords_[check_k(k)];
    }

    struct Location {
        std::uint64_t coset;
        std::uint64_t k;
    };
    Location locate(const BitWord& w) const;
    Location locate_bits(std::uint64_t w) const;

private:
    std::uint64_t check_k(std::uint64_t k) const;

    int l_ = 0;
    int n_ = 0;
    std::uint64_t coset_count_ = 0;
    std::uint64_t pivot_mask_ = 0;            // integer bits of the l pivot positions
    std::vector<std::uint64_t> codewords_;    // n entries, indexed by k
    std::vector<std::uint64_t> reps_;         // sorted; empty when not materialized
};

CosetTable build_coset_table(int l);

// Cached shared tables; construction is cheap but callers share freely.
std::shared_ptr<const CosetTable> shared_coset_table(int l);

}  // namespace asymbell::gf2
