#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sl2factor/sl2.hpp"

namespace sl2factor {

/**
 * Brute-force reference: the shortest alternating word over a finite
 * parameter set that evaluates to a given matrix. Independent of the chain
 * machinery; used to cross-check engine output lengths on small instances.
 */
struct OracleParams {
    std::vector<RingElement> param_set;  // nonzero letter parameters to draw from
    int max_len = 8;                     // longest word length considered
    long node_limit = 5000000;           // words evaluated before giving up

    void validate() const;
};

struct OracleResult {
    std::optional<int> min_length;  // empty: no word of length <= max_len found
    std::optional<ElemWord> witness;
    bool overflow = false;  // node limit hit; min_length may be an overcount
    long nodes = 0;
};

/// Length 0 matches the identity only; every other matrix is searched by
/// meet-in-the-middle over alternating words with parameters in the set.
OracleResult min_word_length(const Mat2& A, const OracleParams& params);

struct LengthHistogram {
    std::vector<long> counts;  // counts[n] = matrices of minimum length n
    long over_max = 0;         // matrices with no word of length <= max_len
    int max_len = 0;

    std::string to_csv() const;  // header "length,count", final row ">N" if any
};

/// Minimum lengths for a batch of matrices against one parameter set; tables
/// are built once and shared.
LengthHistogram length_histogram(const std::vector<Mat2>& mats,
                                 const OracleParams& params);

/// Every product of alternating words of length <= max_len over the set,
/// paired with its minimal realized length (words enumerated shortest
/// first). Deterministic order; grows fast, keep the inputs small.
std::vector<std::pair<Mat2, int>> enumerate_products(const Ring& ring,
                                                     const OracleParams& params);

}  // namespace sl2factor
