#pragma once
// JSON wire formats for the domain types, shared by the CLI and the
// verification reports. Complex scalars are [re, im] pairs, vectors are
// arrays of pairs, matrices are arrays of rows (row-major), multiwords are
// arrays of 1-based letter arrays. The readers validate structure and throw
// ParseError with a location hint; semantic validation (commutation,
// unitarity, ball membership) stays with the type constructors.

#include <string>

#include "json.hpp"
#include "polyball/autgroup.hpp"
#include "polyball/fock.hpp"
#include "polyball/freeword.hpp"
#include "polyball/series.hpp"
#include "polyball/tuples.hpp"

namespace polyball {

// Insertion-ordered so reports read top-down; byte determinism then depends
// only on our field order being fixed, which it is.
using Json = nlohmann::ordered_json;

Json to_json(const Complex& z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const MultiWord& mw);
Json to_json(const TruncFock& fock);      // {n, d}
Json to_json(const OpTuple& x);           // {n, dimH, X}
Json to_json(const FreeSeries& s);        // {n, shape, terms, truncated?}
Json to_json(const Automorphism& a);      // {sigma, U, lambda}

Complex complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
MultiWord multiword_from_json(const Json& j);
TruncFock fock_from_json(const Json& j);
OpTuple tuple_from_json(const Json& j);
FreeSeries series_from_json(const Json& j);
Automorphism automorphism_from_json(const Json& j);

// Parse with ParseError instead of nlohmann's exceptions; parse_file adds
// the filename and handles unreadable paths.
Json parse_text(const std::string& text);
Json parse_file(const std::string& path);

} // namespace polyball
