#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sl2factor/ring.hpp"
#include "sl2factor/sl2.hpp"

namespace sl2factor {

/**
 * A unimodular row (a, b), optionally carrying a witness row (c, d) with
 * ad - bc = 1. Moves act by right multiplication on the full matrix:
 * l(x) sends (a, b) to (a + bx, b), u(x) sends it to (a, ax + b); the
 * witness row transforms the same way, so witnessed pairs stay witnessed.
 */
class RowPair {
public:
    static RowPair of(RingElement a, RingElement b);
    static RowPair from_matrix(const Mat2& m);

    const RingElement& a() const noexcept { return a_; }
    const RingElement& b() const noexcept { return b_; }
    const std::optional<std::pair<RingElement, RingElement>>& witness() const noexcept {
        return witness_;
    }

    bool operator==(const RowPair& other) const;

private:
    friend RowPair apply_l(const RowPair&, const RingElement&);
    friend RowPair apply_u(const RowPair&, const RingElement&);

    RowPair(RingElement a, RingElement b,
            std::optional<std::pair<RingElement, RingElement>> w)
        : a_(std::move(a)), b_(std::move(b)), witness_(std::move(w)) {}

    RingElement a_, b_;
    std::optional<std::pair<RingElement, RingElement>> witness_;
};

RowPair apply_l(const RowPair& p, const RingElement& x);
RowPair apply_u(const RowPair& p, const RingElement& x);

/**
 * A division chain from (a, b): remainders r_{-1} = a, r_0 = b,
 * r_i = r_{i-2} - q_i * r_{i-1}. The chain terminates when the last
 * remainder is zero; for unimodular starts the one before it is then a
 * unit. Remainders are stored alongside the quotients and revalidated on
 * deserialization.
 *
 * JSON: {"a":"...","b":"...","q":[...],"r":[...]} with element strings.
 */
class DivisionChain {
public:
    /// Build from quotients, computing the remainders.
    static DivisionChain make(RingElement a, RingElement b,
                              std::vector<RingElement> quotients);
    /// Rebuild from stored parts, checking the recurrence exactly.
    static DivisionChain from_parts(RingElement a, RingElement b,
                                    std::vector<RingElement> quotients,
                                    std::vector<RingElement> remainders);

    const RingElement& start_a() const noexcept { return a_; }
    const RingElement& start_b() const noexcept { return b_; }
    const std::vector<RingElement>& quotients() const noexcept { return q_; }
    const std::vector<RingElement>& remainders() const noexcept { return r_; }
    int length() const noexcept { return static_cast<int>(q_.size()); }

    /// r_k == 0 (for the empty chain: b == 0).
    bool terminating() const;
    /// The chain for (b, r_1) obtained by dropping the first equation;
    /// length must be at least 1.
    DivisionChain drop_first() const;

    std::string to_json() const;
    static DivisionChain from_json(const Ring& ring, std::string_view text);

private:
    DivisionChain(RingElement a, RingElement b, std::vector<RingElement> q,
                  std::vector<RingElement> r)
        : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)), r_(std::move(r)) {}

    RingElement a_, b_;
    std::vector<RingElement> q_;
    std::vector<RingElement> r_;
};

/// The alternating move sequence l(-q_1), u(-q_2), l(-q_3), ... of a chain,
/// together with the pair it reaches: (r_{k-1}, r_k) for even k,
/// (r_k, r_{k-1}) for odd k, and (a, b) for the empty chain.
struct ReductionPath {
    std::vector<RingElement> move_params;  // i-th move is l for even i, u for odd i
    RingElement final_a;
    RingElement final_b;
};

ReductionPath chain_to_reduction(const DivisionChain& chain);

}  // namespace sl2factor
