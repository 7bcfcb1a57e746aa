#include "sl2factor/chains.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace sl2factor {

namespace {

// Nearest integer to n/d with d > 0, halves rounded up: floor((2n + d) / (2d)).
Integer round_quotient(const Integer& n, const Integer& d) {
    Integer num = 2 * n + d;
    Integer den = 2 * d;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

void SearchBudget::validate() const {
    if (max_k < 1) throw std::invalid_argument("max_k must be at least 1");
    if (quotient_radius < 0) throw std::invalid_argument("quotient_radius must be nonnegative");
    if (unit_exp_bound < 1) throw std::invalid_argument("unit_exp_bound must be positive");
    if (unit_height_bound < 1) throw std::invalid_argument("unit_height_bound must be positive");
    if (node_limit < 1) throw std::invalid_argument("node_limit must be positive");
}

ChainSearcher::ChainSearcher(Ring ring, SearchBudget budget)
    : ring_(std::move(ring)), budget_(budget) {
    if (!ring_) throw std::invalid_argument("null ring");
    budget_.validate();
    units_ = unit_candidates(ring_, budget_.unit_exp_bound, budget_.unit_height_bound);
}

bool ChainSearcher::tick() {
    if (nodes_ >= budget_.node_limit) {
        exhausted_ = true;
        return false;
    }
    ++nodes_;
    return true;
}

std::optional<Length2Witness> ChainSearcher::length2(const RingElement& modulus,
                                                     const RingElement& target) {
    if (modulus.is_zero()) {
        // target - v = 0 forces v = target.
        if (target.is_unit()) {
            return Length2Witness{target, RingElement::zero(ring_)};
        }
        return std::nullopt;
    }
    if (target.is_unit()) {
        return Length2Witness{target, RingElement::zero(ring_)};
    }
    for (const RingElement& v : units_) {
        if (!tick()) return std::nullopt;
        auto x = (target - v).exact_divide(modulus);
        if (x) return Length2Witness{v, *x};
    }
    return std::nullopt;
}

bool ChainSearcher::enumerate_quotients(
    const RingElement& x0, const RingElement& x1,
    const std::function<bool(const RingElement&)>& fn) {
    if (x1.is_zero()) {
        return fn(RingElement::zero(ring_));
    }

    // Exact coordinates of x0 / x1 = (x0 * conj(x1)) / (x1 * conj(x1)); the
    // denominator is a rational number, so the division is componentwise.
    // For the rational kind conj is the identity and the same identity holds.
    RingElement num = x0 * x1.conj();
    RingElement n1 = x1 * x1.conj();
    Rational nrm(n1.x(), n1.den());
    nrm.canonicalize();
    Rational cx(num.x(), num.den());
    Rational cy(num.y(), num.den());
    cx.canonicalize();
    cy.canonicalize();
    cx /= nrm;
    cy /= nrm;

    const bool quadratic = ring_->is_quadratic();
    const int radius = budget_.quotient_radius;

    // Denominators to try: 1 and p^e for each inverted prime, e <= radius.
    std::vector<Integer> dens;
    dens.emplace_back(1);
    for (const Integer& p : ring_->inverted_primes()) {
        Integer pe = p;
        for (int e = 1; e <= radius; ++e) {
            dens.push_back(pe);
            pe *= p;
        }
    }

    struct Center {
        Integer cx, cy, den;
    };
    std::vector<Center> centers;
    centers.reserve(dens.size());
    for (const Integer& den : dens) {
        Integer rx = round_quotient(cx.get_num() * den, cx.get_den());
        Integer ry = quadratic ? round_quotient(cy.get_num() * den, cy.get_den())
                               : Integer(0);
        centers.push_back({rx, ry, den});
    }

    std::set<std::tuple<Integer, Integer, Integer>> seen;
    auto emit = [&](const Integer& qx, const Integer& qy, const Integer& den) {
        RingElement q = RingElement::make(ring_, qx, qy, den);
        auto key = std::make_tuple(q.x(), q.y(), q.den());
        if (!seen.insert(key).second) return true;
        return fn(q);
    };

    for (int shell = 0; shell <= radius; ++shell) {
        for (const Center& c : centers) {
            if (shell == 0) {
                if (!emit(c.cx, c.cy, c.den)) return false;
                continue;
            }
            if (!quadratic) {
                if (!emit(c.cx + shell, 0, c.den)) return false;
                if (!emit(c.cx - shell, 0, c.den)) return false;
                continue;
            }
            // Perimeter of the square of Chebyshev radius `shell`.
            for (Integer dx = -shell; dx <= shell; ++dx) {
                if (!emit(c.cx + dx, c.cy + shell, c.den)) return false;
                if (!emit(c.cx + dx, c.cy - shell, c.den)) return false;
            }
            for (Integer dy = -shell + 1; dy <= shell - 1; ++dy) {
                if (!emit(c.cx + shell, c.cy + dy, c.den)) return false;
                if (!emit(c.cx - shell, c.cy + dy, c.den)) return false;
            }
        }
    }
    return true;
}

std::optional<std::vector<RingElement>> ChainSearcher::dfs(const RingElement& x0,
                                                           const RingElement& x1,
                                                           int j) {
    if (j == 2) {
        auto w = length2(x1, x0);
        if (!w) return std::nullopt;
        // r1 = v = unit, r2 = 0; quotients are x and x1 / v.
        auto q2 = x1.exact_divide(w->v);
        if (!q2) throw std::logic_error("unit inverse failed in length-2 base");
        return std::vector<RingElement>{w->x, *q2};
    }

    std::optional<std::vector<RingElement>> found;
    const double s0 = x0.size_measure();
    const double s1 = x1.size_measure();
    enumerate_quotients(x0, x1, [&](const RingElement& q) {
        if (!tick()) return false;
        RingElement r = x0 - q * x1;
        // Prune only on two consecutive non-decreases; a single growth step is
        // allowed so the search can climb out of local minima.
        if (r.size_measure() >= s1 && s1 >= s0) return true;
        auto tail = dfs(x1, r, j - 1);
        if (tail) {
            tail->insert(tail->begin(), q);
            found = std::move(tail);
            return false;
        }
        return !exhausted_;
    });
    return found;
}

std::optional<DivisionChain> ChainSearcher::find_exact(const RingElement& a,
                                                       const RingElement& b, int k) {
    if (!same_ring(a.ring(), ring_) || !same_ring(b.ring(), ring_)) {
        throw std::invalid_argument("searcher ring mismatch");
    }
    if (k < 1) throw std::invalid_argument("chain length must be at least 1");
    if (k > budget_.max_k) return std::nullopt;

    if (k == 1) {
        // r1 = a - q1 b = 0 with b = r0 a unit.
        if (!b.is_unit()) return std::nullopt;
        auto q1 = a.exact_divide(b);
        if (!q1) throw std::logic_error("division by unit failed");
        return DivisionChain::make(a, b, {*q1});
    }
    if (k == 2) {
        auto w = length2(b, a);
        if (!w) return std::nullopt;
        auto q2 = b.exact_divide(w->v);
        if (!q2) throw std::logic_error("division by unit failed");
        return DivisionChain::make(a, b, {w->x, *q2});
    }

    auto qs = dfs(a, b, k);
    if (!qs) return std::nullopt;
    return DivisionChain::make(a, b, *qs);
}

std::optional<Length2Witness> find_length2(const RingElement& a, const RingElement& b,
                                           const SearchBudget& budget) {
    ChainSearcher searcher(a.ring(), budget);
    return searcher.length2(a, b);
}

ChainSearchResult find_terminating_chain(const RingElement& a, const RingElement& b,
                                         const SearchBudget& budget) {
    ChainSearcher searcher(a.ring(), budget);
    for (int k = 1; k <= budget.max_k; ++k) {
        auto chain = searcher.find_exact(a, b, k);
        if (chain) {
            if (!chain->terminating()) {
                throw std::logic_error("search returned a non-terminating chain");
            }
            const auto& rem = chain->remainders();
            const RingElement& last_unit =
                rem.size() >= 2 ? rem[rem.size() - 2] : b;
            if (!last_unit.is_unit()) {
                throw std::logic_error("chain ends without a unit remainder");
            }
            return {SearchStatus::Found, std::move(chain), searcher.nodes_used(), k};
        }
        if (searcher.exhausted()) {
            return {SearchStatus::BudgetExhausted, std::nullopt,
                    searcher.nodes_used(), k};
        }
    }
    return {SearchStatus::NotFound, std::nullopt, searcher.nodes_used(),
            budget.max_k};
}

int recommended_depth(const RingSpec& spec) {
    if (spec.has_real_embedding() && spec.has_infinite_units()) return 3;
    if (!spec.inverted_primes().empty()) return 4;
    return 5;
}

std::optional<bool> check_unimodular(const RingElement& a, const RingElement& b,
                                     const SearchBudget& budget) {
    if (a.is_zero() && b.is_zero()) return false;
    if (a.is_unit() || b.is_unit()) return true;
    const RingSpec& spec = *a.ring();
    if (spec.kind() == RingKind::Rational) {
        // gcd of numerators, with inverted primes stripped; denominators are
        // supported on the inverted primes already.
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.x().get_mpz_t(), b.x().get_mpz_t());
        g = detail::strip_inverted(spec, g);
        return g == 1;
    }
    // Quadratic: a successful search is a certificate; failure proves nothing.
    ChainSearchResult r = find_terminating_chain(a, b, budget);
    if (r.status == SearchStatus::Found) return true;
    return std::nullopt;
}

}  // namespace sl2factor
