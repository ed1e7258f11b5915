#include "polyball/fock.hpp"

#include <string>

#include "polyball/errors.hpp"

namespace polyball {

TruncFock::TruncFock(std::vector<int> alphabet_sizes, std::vector<int> caps,
                     std::int64_t dim_limit)
    : n_(std::move(alphabet_sizes)), caps_(std::move(caps)) {
    dim_ = multiword_count(n_, caps_);  // validates shapes as a side effect
    if (dim_ > dim_limit) {
        throw Error(ErrorCode::SizeOverflow,
                    "truncated space dimension " + std::to_string(dim_) +
                        " exceeds limit " + std::to_string(dim_limit));
    }
    std::size_t k = n_.size();
    word_tables_.resize(k);
    degree_tables_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        word_tables_[i] = enumerate_words(n_[i], caps_[i]);
        degree_tables_[i].reserve(word_tables_[i].size());
        for (const Word& w : word_tables_[i])
            degree_tables_[i].push_back(static_cast<int>(w.size()));
    }
    strides_.assign(k, 1);
    for (std::size_t i = k; i-- > 1;)
        strides_[i - 1] = strides_[i] * static_cast<std::int64_t>(word_tables_[i].size());
}

const std::vector<Word>& TruncFock::words(int factor) const {
    if (factor < 1 || factor > factors())
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    return word_tables_[factor - 1];
}

std::int64_t TruncFock::factor_dim(int factor) const {
    return static_cast<std::int64_t>(words(factor).size());
}

std::int64_t TruncFock::index_of(const MultiWord& mw) const {
    return basis_index(mw, n_, caps_);
}

MultiWord TruncFock::multiword_at(std::int64_t index) const {
    return polyball::multiword_at(index, n_, caps_);
}

int TruncFock::factor_degree(std::int64_t index, int factor) const {
    if (index < 0 || index >= dim_)
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index));
    if (factor < 1 || factor > factors())
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    std::size_t i = static_cast<std::size_t>(factor - 1);
    std::int64_t fidx = (index / strides_[i]) % static_cast<std::int64_t>(word_tables_[i].size());
    return degree_tables_[i][static_cast<std::size_t>(fidx)];
}

int TruncFock::total_degree(std::int64_t index) const {
    int d = 0;
    for (int i = 1; i <= factors(); ++i) d += factor_degree(index, i);
    return d;
}

Vector TruncFock::basis_vector(const MultiWord& mw) const {
    Vector v = Vector::Zero(dim_);
    v[index_of(mw)] = 1.0;
    return v;
}

Vector TruncFock::vacuum() const {
    Vector v = Vector::Zero(dim_);
    v[0] = 1.0;
    return v;
}

std::vector<std::int64_t> TruncFock::interior_indices(int margin) const {
    std::vector<std::int64_t> out;
    for (std::int64_t idx = 0; idx < dim_; ++idx) {
        bool keep = true;
        for (int i = 1; i <= factors() && keep; ++i)
            keep = factor_degree(idx, i) <= caps_[i - 1] - margin;
        if (keep) out.push_back(idx);
    }
    return out;
}

Matrix TruncFock::interior_projection(int margin) const {
    Matrix p = Matrix::Zero(dim_, dim_);
    for (std::int64_t idx : interior_indices(margin)) p(idx, idx) = 1.0;
    return p;
}

int TruncFock::default_interior_margin() const {
    for (int ni : n_)
        if (ni != 1) return 3;
    return 10;
}

namespace {

// Shared triplet construction for dense and sparse variants. Columns are
// source basis vectors; each column has at most one unit entry.
std::vector<Eigen::Triplet<Complex>> creation_triplets(const TruncFock& fock, int factor,
                                                       int letter, Side side) {
    if (factor < 1 || factor > fock.factors())
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    if (letter < 1 || letter > fock.n()[factor - 1])
        throw Error(ErrorCode::IndexOutOfRange, "letter " + std::to_string(letter));

    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(fock.dim()));
    int cap = fock.caps()[factor - 1];
    for (std::int64_t src = 0; src < fock.dim(); ++src) {
        if (fock.factor_degree(src, factor) >= cap) continue;  // truncated away
        MultiWord mw = fock.multiword_at(src);
        Word& w = mw.parts[static_cast<std::size_t>(factor - 1)];
        if (side == Side::Left)
            w.insert(w.begin(), letter);
        else
            w.push_back(letter);
        trips.emplace_back(static_cast<int>(fock.index_of(mw)), static_cast<int>(src),
                           Complex(1.0, 0.0));
    }
    return trips;
}

} // namespace

Matrix creation_operator(const TruncFock& fock, int factor, int letter, Side side) {
    Matrix m = Matrix::Zero(fock.dim(), fock.dim());
    for (const auto& t : creation_triplets(fock, factor, letter, side))
        m(t.row(), t.col()) = t.value();
    return m;
}

Eigen::SparseMatrix<Complex> creation_operator_sparse(const TruncFock& fock, int factor,
                                                      int letter, Side side) {
    auto trips = creation_triplets(fock, factor, letter, side);
    Eigen::SparseMatrix<Complex> m(fock.dim(), fock.dim());
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

} // namespace polyball
