#include "polyball/json_io.hpp"

#include <fstream>
#include <sstream>

#include "polyball/errors.hpp"

namespace polyball {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) parse_fail(where, "expected a number");
    return j.get<double>();
}

int int_at(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) parse_fail(where, "expected an integer");
    return j.get<int>();
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) parse_fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(where, std::string("missing key \"") + key + "\"");
    return *it;
}

std::vector<int> int_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where, "expected an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (std::size_t t = 0; t < j.size(); ++t)
        out.push_back(int_at(j[t], where + "[" + std::to_string(t) + "]"));
    return out;
}

Complex complex_at(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        parse_fail(where, "expected a [re, im] pair");
    return Complex(number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]"));
}

Vector vector_at(const Json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where, "expected an array of [re, im] pairs");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t t = 0; t < j.size(); ++t)
        v(static_cast<Eigen::Index>(t)) = complex_at(j[t], where + "[" + std::to_string(t) + "]");
    return v;
}

Matrix matrix_at(const Json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where, "expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    if (!j[0].is_array()) parse_fail(where + "[0]", "expected a row array");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            parse_fail(row_where, "rows must all have " + std::to_string(cols) + " entries");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_at(row[static_cast<std::size_t>(c)],
                                 row_where + "[" + std::to_string(c) + "]");
    }
    return m;
}

MultiWord multiword_at_json(const Json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where, "expected an array of letter arrays");
    MultiWord mw;
    mw.parts.reserve(j.size());
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string part_where = where + "[" + std::to_string(t) + "]";
        Word w = int_vector(j[t], part_where);
        for (int letter : w)
            if (letter < 1) parse_fail(part_where, "letters are 1-based");
        mw.parts.push_back(std::move(w));
    }
    return mw;
}

} // namespace

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index t = 0; t < v.size(); ++t) out.push_back(to_json(v(t)));
    return out;
}

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const MultiWord& mw) {
    Json out = Json::array();
    for (const Word& w : mw.parts) out.push_back(w);
    return out;
}

Json to_json(const TruncFock& fock) {
    return Json{{"n", fock.n()}, {"d", fock.caps()}};
}

Json to_json(const OpTuple& x) {
    Json rows = Json::array();
    for (int i = 1; i <= x.factors(); ++i) {
        Json row = Json::array();
        for (int j = 1; j <= x.n()[i - 1]; ++j) row.push_back(to_json(x.entry(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"n", x.n()}, {"dimH", x.dim_h()}, {"X", std::move(rows)}};
}

Json to_json(const FreeSeries& s) {
    Json terms = Json::array();
    for (const auto& [mw, coeff] : s.terms())
        terms.push_back(Json{{"mw", to_json(mw)}, {"coeff", to_json(coeff)}});
    Json out{{"n", s.n()},
             {"shape", Json::array({s.coeff_rows(), s.coeff_cols()})},
             {"terms", std::move(terms)}};
    if (s.truncated_tail()) out["truncated"] = true;
    return out;
}

Json to_json(const Automorphism& a) {
    Json u = Json::array();
    Json lambda = Json::array();
    for (int i = 1; i <= a.factors(); ++i) {
        u.push_back(to_json(a.u(i)));
        lambda.push_back(to_json(a.center(i).lambda()));
    }
    return Json{{"sigma", a.sigma()}, {"U", std::move(u)}, {"lambda", std::move(lambda)}};
}

Complex complex_from_json(const Json& j) { return complex_at(j, "complex"); }
Vector vector_from_json(const Json& j) { return vector_at(j, "vector"); }
Matrix matrix_from_json(const Json& j) { return matrix_at(j, "matrix"); }
MultiWord multiword_from_json(const Json& j) { return multiword_at_json(j, "mw"); }

TruncFock fock_from_json(const Json& j) {
    return TruncFock(int_vector(member(j, "n", "fock"), "fock.n"),
                     int_vector(member(j, "d", "fock"), "fock.d"));
}

OpTuple tuple_from_json(const Json& j) {
    std::vector<int> n = int_vector(member(j, "n", "tuple"), "tuple.n");
    const int dim_h = int_at(member(j, "dimH", "tuple"), "tuple.dimH");
    const Json& rows = member(j, "X", "tuple");
    if (!rows.is_array() || rows.size() != n.size())
        parse_fail("tuple.X", "expected one row per factor");
    std::vector<std::vector<Matrix>> x;
    x.reserve(n.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string row_where = "tuple.X[" + std::to_string(i) + "]";
        const Json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n[i])
            parse_fail(row_where, "expected " + std::to_string(n[i]) + " matrices");
        std::vector<Matrix> entries;
        entries.reserve(row.size());
        for (std::size_t t = 0; t < row.size(); ++t)
            entries.push_back(matrix_at(row[t], row_where + "[" + std::to_string(t) + "]"));
        x.push_back(std::move(entries));
    }
    return OpTuple(std::move(n), dim_h, std::move(x));
}

FreeSeries series_from_json(const Json& j) {
    std::vector<int> n = int_vector(member(j, "n", "series"), "series.n");
    std::vector<int> shape = int_vector(member(j, "shape", "series"), "series.shape");
    if (shape.size() != 2) parse_fail("series.shape", "expected [rows, cols]");
    FreeSeries s(std::move(n), shape[0], shape[1]);
    const Json& terms = member(j, "terms", "series");
    if (!terms.is_array()) parse_fail("series.terms", "expected an array");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string where = "series.terms[" + std::to_string(t) + "]";
        const MultiWord mw = multiword_at_json(member(terms[t], "mw", where), where + ".mw");
        s.add(mw, matrix_at(member(terms[t], "coeff", where), where + ".coeff"));
    }
    if (auto it = j.find("truncated"); it != j.end()) {
        if (!it->is_boolean()) parse_fail("series.truncated", "expected a boolean");
        s.mark_truncated_tail(it->get<bool>());
    }
    return s;
}

Automorphism automorphism_from_json(const Json& j) {
    std::vector<int> sigma = int_vector(member(j, "sigma", "automorphism"), "automorphism.sigma");
    const Json& u_arr = member(j, "U", "automorphism");
    const Json& l_arr = member(j, "lambda", "automorphism");
    if (!u_arr.is_array()) parse_fail("automorphism.U", "expected an array of matrices");
    if (!l_arr.is_array()) parse_fail("automorphism.lambda", "expected an array of vectors");
    std::vector<Matrix> u;
    u.reserve(u_arr.size());
    for (std::size_t t = 0; t < u_arr.size(); ++t)
        u.push_back(matrix_at(u_arr[t], "automorphism.U[" + std::to_string(t) + "]"));
    std::vector<BallPoint> lambda;
    lambda.reserve(l_arr.size());
    for (std::size_t t = 0; t < l_arr.size(); ++t)
        lambda.emplace_back(
            vector_at(l_arr[t], "automorphism.lambda[" + std::to_string(t) + "]"));
    return Automorphism(std::move(sigma), std::move(u), std::move(lambda));
}

Json parse_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "invalid JSON");
    return j;
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "invalid JSON in " + path);
    return j;
}

} // namespace polyball
