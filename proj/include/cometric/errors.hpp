#ifndef COMETRIC_ERRORS_HPP
#define COMETRIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cometric {

struct SchemeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// axiom 1: diagonal must be relation 0 and nothing else
struct BadDiagonal : SchemeError {
    using SchemeError::SchemeError;
};

// axiom 3: relation table must be symmetric
struct NotSymmetric : SchemeError {
    using SchemeError::SchemeError;
};

// some class index in {0..d} never occurs
struct EmptyRelation : SchemeError {
    using SchemeError::SchemeError;
};

// axiom 4 fails: two pairs in the same relation give different triple counts
struct NotAScheme : SchemeError {
    int i, j, k;
    NotAScheme(int i_, int j_, int k_, const std::string& msg)
        : SchemeError(msg), i(i_), j(j_), k(k_) {}
};

struct Disconnected : SchemeError {
    using SchemeError::SchemeError;
};

// no seed within the retry budget split the spectrum into d+1 clusters
struct DegenerateSplit : SchemeError {
    using SchemeError::SchemeError;
};

// a Krein parameter is far below zero; the basis is numerically invalid
struct KreinViolation : SchemeError {
    using SchemeError::SchemeError;
};

struct DegenerateNodes : SchemeError {
    using SchemeError::SchemeError;
};

// dual eigenvalues are not pairwise distinct; the criterion's hypothesis fails
struct NotDistinct : SchemeError {
    using SchemeError::SchemeError;
};

struct TooLarge : SchemeError {
    using SchemeError::SchemeError;
};

struct ParseError : SchemeError {
    using SchemeError::SchemeError;
};

struct UnknownName : SchemeError {
    using SchemeError::SchemeError;
};

} // namespace cometric

#endif
