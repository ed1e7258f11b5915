#pragma once
// Words over free alphabets and k-tuples of words (multiwords): the index
// language for Fock basis vectors and free-series coefficients. Words are
// enumerated degree first, then lexicographically; multiwords combine the
// per-factor enumerations row-major with the first factor slowest, so the
// flat index agrees with a Kronecker-product layout of the factors.

#include <cstdint>
#include <vector>

namespace polyball {

// Letters are 1-based: a word over an alphabet of size n has entries in [1, n].
using Word = std::vector<int>;

struct MultiWord {
    std::vector<Word> parts;

    int total_degree() const;
    bool operator==(const MultiWord&) const = default;
};

// Strict total order on multiwords of a common shape: total degree first,
// then factor by factor with (length, lexicographic) per factor. Works for
// any degrees, independent of truncation caps.
bool multiword_less(const MultiWord& a, const MultiWord& b);

// All words of length <= max_degree over [1, alphabet_size], in index order.
std::vector<Word> enumerate_words(int alphabet_size, int max_degree);

// Number of such words, without materializing them.
std::int64_t word_count(int alphabet_size, int max_degree);

// All multiwords with per-factor degree caps, in flat index order.
std::vector<MultiWord> enumerate_multiwords(const std::vector<int>& alphabet_sizes,
                                            const std::vector<int>& caps);

std::int64_t multiword_count(const std::vector<int>& alphabet_sizes,
                             const std::vector<int>& caps);

// Position of w in enumerate_words order; DegreeExceeded when it is too long,
// IndexOutOfRange on letters outside [1, alphabet_size].
std::int64_t word_index(const Word& w, int alphabet_size, int max_degree);

Word word_at(std::int64_t index, int alphabet_size, int max_degree);

// Flat position of a multiword; per-factor word_index combined row-major.
std::int64_t basis_index(const MultiWord& mw, const std::vector<int>& alphabet_sizes,
                         const std::vector<int>& caps);

MultiWord multiword_at(std::int64_t index, const std::vector<int>& alphabet_sizes,
                       const std::vector<int>& caps);

Word concat(const Word& a, const Word& b);
MultiWord concat(const MultiWord& a, const MultiWord& b);

} // namespace polyball
