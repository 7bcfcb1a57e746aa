#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sl2factor/reduction.hpp"
#include "sl2factor/ring.hpp"

namespace sl2factor {

/**
 * Knobs for the terminating-chain search. All fields must be positive except
 * quotient_radius, which may be zero (rounded centers only).
 * Enlarging any field never loses a previously found solution: candidates
 * are enumerated in deterministic shells that only grow with the budget.
 * No budget is provably sufficient in general; exp_bound in particular is
 * a search knob, not a completeness guarantee.
 */
struct SearchBudget {
    int max_k = 5;            // deepest chain length tried
    int quotient_radius = 8;  // candidate box half-width per step
    int unit_exp_bound = 12;  // exponent range handed to unit_candidates
    int unit_height_bound = 8;   // sweep height handed to unit_candidates
    long node_limit = 1000000;   // total candidates tried across the search

    void validate() const;
};

enum class SearchStatus { Found, NotFound, BudgetExhausted };

struct Length2Witness {
    RingElement v;  // the unit remainder
    RingElement x;  // the quotient: target - v = modulus * x
};

/**
 * Stateful searcher so the unit candidate list is built once and the node
 * budget is shared across depths. Single-threaded; results are functions of
 * (ring, budget, arguments) only, so runs are reproducible.
 */
class ChainSearcher {
public:
    ChainSearcher(Ring ring, SearchBudget budget);

    /// First unit v (in candidate order) with modulus | target - v, plus the
    /// quotient. When target is itself a unit, (target, 0) is returned
    /// immediately; when modulus = 0 only that degenerate solution exists.
    std::optional<Length2Witness> length2(const RingElement& modulus,
                                          const RingElement& target);

    /// A terminating chain from (a, b) of exactly length k, or nullopt.
    /// Depth-first over quotient candidates for the first k-2 steps, with the
    /// final two steps delegated to length2. A branch is pruned when the size
    /// measure fails to decrease twice in a row.
    std::optional<DivisionChain> find_exact(const RingElement& a,
                                            const RingElement& b, int k);

    bool exhausted() const noexcept { return exhausted_; }
    long nodes_used() const noexcept { return nodes_; }
    const std::vector<RingElement>& units() const noexcept { return units_; }
    const Ring& ring() const noexcept { return ring_; }
    const SearchBudget& budget() const noexcept { return budget_; }

    /// Quotient candidates for dividing x0 by x1: the coefficient box of
    /// radius quotient_radius around the rounded field quotient, over
    /// denominators p^e (p inverted, e <= quotient_radius), deduplicated,
    /// enumerated in shells outward from the center. Returns false if the
    /// callback stopped the enumeration.
    bool enumerate_quotients(const RingElement& x0, const RingElement& x1,
                             const std::function<bool(const RingElement&)>& fn);

private:
    bool tick();  // counts a node; false once the limit is hit
    std::optional<std::vector<RingElement>> dfs(const RingElement& x0,
                                                const RingElement& x1, int j);

    Ring ring_;
    SearchBudget budget_;
    std::vector<RingElement> units_;
    long nodes_ = 0;
    bool exhausted_ = false;
};

/// One-shot wrapper around ChainSearcher::length2 for a pair (modulus a,
/// target b): finds a unit v and quotient x with b - v = a * x.
std::optional<Length2Witness> find_length2(const RingElement& a,
                                           const RingElement& b,
                                           const SearchBudget& budget);

struct ChainSearchResult {
    SearchStatus status;
    std::optional<DivisionChain> chain;
    long nodes_used;
    int deepest_k_tried;
};

/// Iterative deepening k = 1..max_k from (a, b). Every returned chain is
/// revalidated: recurrence, zero final remainder, unit before it.
ChainSearchResult find_terminating_chain(const RingElement& a, const RingElement& b,
                                         const SearchBudget& budget);

/// Chain-length hint from the ring's arithmetic: 3 with a real embedding and
/// infinite units, 4 with inverted primes but no real embedding, 5 otherwise.
int recommended_depth(const RingSpec& spec);

/// Exact over the rationals (gcd up to inverted primes); nullopt (unknown)
/// for quadratic rings unless a cheap certificate settles it.
std::optional<bool> check_unimodular(const RingElement& a, const RingElement& b,
                                     const SearchBudget& budget);

}  // namespace sl2factor
