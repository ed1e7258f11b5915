#include "polyball/freeword.hpp"

#include <algorithm>
#include <string>

#include "polyball/errors.hpp"

namespace polyball {
namespace {

void check_shape(const std::vector<int>& alphabet_sizes, const std::vector<int>& caps) {
    if (alphabet_sizes.empty() || alphabet_sizes.size() != caps.size()) {
        throw Error(ErrorCode::ShapeMismatch,
                    "alphabet sizes and caps must be nonempty and of equal length");
    }
    for (std::size_t i = 0; i < alphabet_sizes.size(); ++i) {
        if (alphabet_sizes[i] < 1)
            throw Error(ErrorCode::InvalidArgument, "alphabet size must be >= 1");
        if (caps[i] < 0)
            throw Error(ErrorCode::InvalidArgument, "degree cap must be >= 0");
    }
}

} // namespace

int MultiWord::total_degree() const {
    int d = 0;
    for (const Word& w : parts) d += static_cast<int>(w.size());
    return d;
}

bool multiword_less(const MultiWord& a, const MultiWord& b) {
    int da = a.total_degree();
    int db = b.total_degree();
    if (da != db) return da < db;
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size();
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        const Word& wa = a.parts[i];
        const Word& wb = b.parts[i];
        if (wa.size() != wb.size()) return wa.size() < wb.size();
        if (wa != wb) return std::lexicographical_compare(wa.begin(), wa.end(),
                                                          wb.begin(), wb.end());
    }
    return false;
}

std::int64_t word_count(int alphabet_size, int max_degree) {
    std::int64_t total = 0;
    std::int64_t layer = 1;
    for (int p = 0; p <= max_degree; ++p) {
        total += layer;
        layer *= alphabet_size;
    }
    return total;
}

std::vector<Word> enumerate_words(int alphabet_size, int max_degree) {
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(word_count(alphabet_size, max_degree)));
    out.push_back({});
    std::size_t layer_begin = 0;
    for (int p = 1; p <= max_degree; ++p) {
        std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (int letter = 1; letter <= alphabet_size; ++letter) {
                Word w = out[i];
                w.push_back(letter);
                out.push_back(std::move(w));
            }
        }
        layer_begin = layer_end;
    }
    // Each layer was produced from the lexicographically sorted previous one
    // by appending letters in order, so the whole list is in index order.
    return out;
}

std::int64_t word_index(const Word& w, int alphabet_size, int max_degree) {
    int p = static_cast<int>(w.size());
    if (p > max_degree) {
        throw Error(ErrorCode::DegreeExceeded,
                    "word of length " + std::to_string(p) + " exceeds cap " +
                        std::to_string(max_degree));
    }
    std::int64_t offset = word_count(alphabet_size, p - 1);  // words shorter than p
    std::int64_t rank = 0;
    for (int letter : w) {
        if (letter < 1 || letter > alphabet_size)
            throw Error(ErrorCode::IndexOutOfRange,
                        "letter " + std::to_string(letter) + " outside [1, " +
                            std::to_string(alphabet_size) + "]");
        rank = rank * alphabet_size + (letter - 1);
    }
    return offset + rank;
}

Word word_at(std::int64_t index, int alphabet_size, int max_degree) {
    if (index < 0 || index >= word_count(alphabet_size, max_degree))
        throw Error(ErrorCode::IndexOutOfRange,
                    "word index " + std::to_string(index) + " out of range");
    int p = 0;
    std::int64_t layer = 1;
    while (index >= layer) {
        index -= layer;
        layer *= alphabet_size;
        ++p;
    }
    Word w(p);
    for (int t = p - 1; t >= 0; --t) {
        w[t] = static_cast<int>(index % alphabet_size) + 1;
        index /= alphabet_size;
    }
    return w;
}

std::int64_t multiword_count(const std::vector<int>& alphabet_sizes,
                             const std::vector<int>& caps) {
    check_shape(alphabet_sizes, caps);
    std::int64_t total = 1;
    for (std::size_t i = 0; i < alphabet_sizes.size(); ++i)
        total *= word_count(alphabet_sizes[i], caps[i]);
    return total;
}

std::vector<MultiWord> enumerate_multiwords(const std::vector<int>& alphabet_sizes,
                                            const std::vector<int>& caps) {
    check_shape(alphabet_sizes, caps);
    std::size_t k = alphabet_sizes.size();
    std::vector<std::vector<Word>> tables(k);
    for (std::size_t i = 0; i < k; ++i)
        tables[i] = enumerate_words(alphabet_sizes[i], caps[i]);

    std::vector<MultiWord> out;
    out.reserve(static_cast<std::size_t>(multiword_count(alphabet_sizes, caps)));
    std::vector<std::size_t> cursor(k, 0);
    while (true) {
        MultiWord mw;
        mw.parts.reserve(k);
        for (std::size_t i = 0; i < k; ++i) mw.parts.push_back(tables[i][cursor[i]]);
        out.push_back(std::move(mw));
        // Row-major advance: last factor fastest.
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++cursor[i] < tables[i].size()) break;
            cursor[i] = 0;
            if (i == 0) return out;
        }
    }
}

std::int64_t basis_index(const MultiWord& mw, const std::vector<int>& alphabet_sizes,
                         const std::vector<int>& caps) {
    check_shape(alphabet_sizes, caps);
    if (mw.parts.size() != alphabet_sizes.size())
        throw Error(ErrorCode::ShapeMismatch, "multiword has wrong number of factors");
    std::int64_t index = 0;
    for (std::size_t i = 0; i < alphabet_sizes.size(); ++i) {
        index *= word_count(alphabet_sizes[i], caps[i]);
        index += word_index(mw.parts[i], alphabet_sizes[i], caps[i]);
    }
    return index;
}

MultiWord multiword_at(std::int64_t index, const std::vector<int>& alphabet_sizes,
                       const std::vector<int>& caps) {
    check_shape(alphabet_sizes, caps);
    if (index < 0 || index >= multiword_count(alphabet_sizes, caps))
        throw Error(ErrorCode::IndexOutOfRange,
                    "multiword index " + std::to_string(index) + " out of range");
    std::size_t k = alphabet_sizes.size();
    MultiWord mw;
    mw.parts.resize(k);
    for (std::size_t r = k; r > 0; --r) {
        std::size_t i = r - 1;
        std::int64_t fdim = word_count(alphabet_sizes[i], caps[i]);
        mw.parts[i] = word_at(index % fdim, alphabet_sizes[i], caps[i]);
        index /= fdim;
    }
    return mw;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

MultiWord concat(const MultiWord& a, const MultiWord& b) {
    if (a.parts.size() != b.parts.size())
        throw Error(ErrorCode::ShapeMismatch, "multiword factor counts differ");
    MultiWord out;
    out.parts.reserve(a.parts.size());
    for (std::size_t i = 0; i < a.parts.size(); ++i)
        out.parts.push_back(concat(a.parts[i], b.parts[i]));
    return out;
}

} // namespace polyball
