#include "sl2factor/engine.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace sl2factor {

namespace {

FactorizationResult finish(const Mat2& A, ElemWord word, int chain_k) {
    if (eval_word(A.a().ring(), word) != A) {
        throw std::logic_error("factorization failed verification");
    }
    FactorizationResult out{std::move(word), {}, 0, false, chain_k, true};
    out.canonical_word = canonicalize(out.word).word;
    out.raw_length = static_cast<int>(out.word.size());
    out.starts_lower =
        out.word.empty() || out.word.letters().front().side == Side::Lower;
    return out;
}

}  // namespace

std::string FactorizationResult::to_json() const {
    nlohmann::ordered_json j;
    j["word"] = nlohmann::ordered_json::parse(word.to_json());
    j["canonical"] = nlohmann::ordered_json::parse(canonical_word.to_json());
    j["raw_length"] = raw_length;
    j["starts_lower"] = starts_lower;
    j["chain_k"] = chain_length_used;
    j["verified"] = verified;
    return j.dump();
}

FactorizationResult factor_base(const Mat2& A, const RingElement& v,
                                const RingElement& x) {
    const Ring& ring = A.a().ring();
    if (!same_ring(ring, v.ring()) || !same_ring(ring, x.ring())) {
        throw std::invalid_argument("witness ring mismatch");
    }
    if (!v.is_unit()) throw std::invalid_argument("witness v is not a unit");
    const RingElement& a = A.a();
    const RingElement& b = A.b();
    if (b - v != a * x) {
        throw std::invalid_argument("witness does not satisfy b - v = a * x");
    }

    RingElement one = RingElement::one(ring);
    RingElement vinv = v.unit_inverse();
    RingElement s = vinv * (one - a);

    Mat2 B = A * Mat2::elementary(Side::Upper, -x) *
             Mat2::elementary(Side::Lower, s) *
             Mat2::elementary(Side::Upper, -v);
    if (B.a() != one || !B.b().is_zero() || B.d() != one) {
        throw std::logic_error("base reduction did not reach a lower elementary");
    }

    ElemWord word({{Side::Lower, B.c()},
                   {Side::Upper, v},
                   {Side::Lower, vinv * (a - one)},
                   {Side::Upper, x}});
    return finish(A, std::move(word), 2);
}

EngineOutcome factor(const Mat2& A, const SearchBudget& budget) {
    budget.validate();
    const Ring& ring = A.a().ring();
    if (!ring->is_admissible() && ring->kind() != RingKind::Rational) {
        throw std::invalid_argument(
            "ring has too few units: invert a prime or use a real quadratic order");
    }

    if (A.is_identity()) {
        return {EngineStatus::Found, finish(A, ElemWord(), 0), budget, 0};
    }
    RingElement one = RingElement::one(ring);
    if (A.a() == one && A.d() == one && A.c().is_zero()) {
        return {EngineStatus::Found,
                finish(A, ElemWord({{Side::Upper, A.b()}}), 0), budget, 0};
    }
    if (A.a() == one && A.d() == one && A.b().is_zero()) {
        return {EngineStatus::Found,
                finish(A, ElemWord({{Side::Lower, A.c()}}), 0), budget, 0};
    }

    ChainSearcher searcher(ring, budget);
    for (int k = 2; k <= budget.max_k; ++k) {
        // Odd-length chains start from the first row (a, b), even ones from
        // the swap; either way step j of the chain peels one elementary.
        const bool odd = (k % 2) != 0;
        const RingElement& s0 = odd ? A.a() : A.b();
        const RingElement& s1 = odd ? A.b() : A.a();
        auto chain = searcher.find_exact(s0, s1, k);
        if (!chain) {
            if (searcher.exhausted()) {
                return {EngineStatus::BudgetExhausted, std::nullopt, budget,
                        searcher.nodes_used()};
            }
            continue;
        }

        const auto& qs = chain->quotients();
        const auto& rem = chain->remainders();
        Mat2 cur = A;
        std::vector<ElemLetter> peeled;
        for (int j = k; j >= 3; --j) {
            const RingElement& q = qs[static_cast<std::size_t>(k - j)];
            Side side = (j % 2) != 0 ? Side::Lower : Side::Upper;
            cur = cur * Mat2::elementary(side, -q);
            peeled.push_back({side, q});
        }
        // Two steps remain: a length-2 chain from (beta, alpha) where the
        // current first row is (alpha, beta), i.e. beta - v = alpha * x.
        const RingElement& v = rem[static_cast<std::size_t>(k - 2)];
        const RingElement& x = qs[static_cast<std::size_t>(k - 2)];
        FactorizationResult base = factor_base(cur, v, x);

        ElemWord word = base.word;
        for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
            word.push_back(*it);
        }
        return {EngineStatus::Found, finish(A, std::move(word), k), budget,
                searcher.nodes_used()};
    }
    return {EngineStatus::BudgetExhausted, std::nullopt, budget,
            searcher.nodes_used()};
}

bool verify(const Mat2& A, const ElemWord& word) {
    return eval_word(A.a().ring(), word) == A;
}

}  // namespace sl2factor
