#pragma once
// Truncated tensor products of full Fock spaces and the matrix model of the
// creation operators on them. Truncation sends top-degree vectors to zero,
// which makes the compressed creation tuple jointly nilpotent; polynomial
// identities whose degree stays within the caps therefore hold exactly.

#include <cstdint>
#include <vector>

#include <Eigen/Sparse>

#include "polyball/freeword.hpp"
#include "polyball/linalg.hpp"

namespace polyball {

enum class Side { Left, Right };

class TruncFock {
public:
    static constexpr std::int64_t kDefaultDimLimit = 1'000'000;

    TruncFock(std::vector<int> alphabet_sizes, std::vector<int> caps,
              std::int64_t dim_limit = kDefaultDimLimit);

    int factors() const { return static_cast<int>(n_.size()); }
    const std::vector<int>& n() const { return n_; }
    const std::vector<int>& caps() const { return caps_; }
    std::int64_t dim() const { return dim_; }

    // Factors are 1-based throughout, matching operator subscripts.
    const std::vector<Word>& words(int factor) const;
    std::int64_t factor_dim(int factor) const;

    std::int64_t index_of(const MultiWord& mw) const;
    MultiWord multiword_at(std::int64_t index) const;
    int factor_degree(std::int64_t index, int factor) const;
    int total_degree(std::int64_t index) const;

    Vector basis_vector(const MultiWord& mw) const;
    Vector vacuum() const;

    // Basis indices whose per-factor degree is <= cap_i - margin: the block
    // on which truncated identities are trusted.
    std::vector<std::int64_t> interior_indices(int margin) const;
    // Orthogonal projection onto that block, as a dense diagonal matrix.
    Matrix interior_projection(int margin) const;
    // Convention used across the verification suites: margin 10 when every
    // factor is a single-letter alphabet, margin 3 otherwise.
    int default_interior_margin() const;

private:
    std::vector<int> n_;
    std::vector<int> caps_;
    std::int64_t dim_ = 0;
    std::vector<std::vector<Word>> word_tables_;   // per factor
    std::vector<std::vector<int>> degree_tables_;  // per factor, by word index
    std::vector<std::int64_t> strides_;            // row-major flat layout
};

// Matrix of the creation operator with letter j in factor i. Left creations
// prepend the letter to the factor word, right creations append; both send
// vectors that would exceed the cap to zero.
Matrix creation_operator(const TruncFock& fock, int factor, int letter, Side side);

Eigen::SparseMatrix<Complex> creation_operator_sparse(const TruncFock& fock, int factor,
                                                      int letter, Side side);

} // namespace polyball
