#pragma once

#include <optional>
#include <string>

#include "sl2factor/chains.hpp"
#include "sl2factor/sl2.hpp"

namespace sl2factor {

struct FactorizationResult {
    ElemWord word;            // as produced, before cancellation
    ElemWord canonical_word;  // zero letters dropped, neighbours merged
    int raw_length;           // word.size()
    bool starts_lower;        // first letter of word is L (true for empty)
    int chain_length_used;    // 0 for the special cases, else the chain's k
    bool verified;            // eval_word(word) == input, always checked

    std::string to_json() const;
};

enum class EngineStatus { Found, BudgetExhausted };

struct EngineOutcome {
    EngineStatus status;
    std::optional<FactorizationResult> result;
    SearchBudget budget;
    long nodes_used;
};

/**
 * Factorization from a unit witness for the first row: given a matrix A with
 * first row (a, b), a unit v and x with b - v = a * x, returns the raw
 * length-4 word L(w) U(v) L(v^-1 (a - 1)) U(x) equal to A. Throws on a bad
 * witness.
 */
FactorizationResult factor_base(const Mat2& A, const RingElement& v,
                                const RingElement& x);

/**
 * Full factorization. Identity and elementary inputs short-circuit to words
 * of length 0 and 1. Otherwise terminating chains from the first row (a, b)
 * (odd k) or (b, a) (even k) are searched for k = 2..max_k; the first hit is
 * peeled down to the length-2 base. Output words have raw length k + 2 and
 * start with an L letter. Every word is re-evaluated against A before it is
 * returned.
 *
 * The ring must have inverted primes or a real embedding; the plain rational
 * integers are also accepted (classical division terminates there, with no
 * bound on k beyond the budget).
 */
EngineOutcome factor(const Mat2& A, const SearchBudget& budget);

/// eval_word(word) == A, by exact multiplication.
bool verify(const Mat2& A, const ElemWord& word);

}  // namespace sl2factor
