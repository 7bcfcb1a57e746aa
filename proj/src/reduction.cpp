#include "sl2factor/reduction.hpp"

#include <utility>

#include "json.hpp"

namespace sl2factor {

RowPair RowPair::of(RingElement a, RingElement b) {
    if (!same_ring(a.ring(), b.ring()))
        throw std::invalid_argument("ring mismatch in row pair");
    return RowPair(std::move(a), std::move(b), std::nullopt);
}

RowPair RowPair::from_matrix(const Mat2& m) {
    return RowPair(m.a(), m.b(), std::make_pair(m.c(), m.d()));
}

bool RowPair::operator==(const RowPair& other) const {
    return a_ == other.a_ && b_ == other.b_;
}

RowPair apply_l(const RowPair& p, const RingElement& x) {
    RowPair out = RowPair::of(p.a() + p.b() * x, p.b());
    if (p.witness())
        out.witness_ = std::make_pair(p.witness()->first + p.witness()->second * x,
                                      p.witness()->second);
    return out;
}

RowPair apply_u(const RowPair& p, const RingElement& x) {
    RowPair out = RowPair::of(p.a(), p.a() * x + p.b());
    if (p.witness())
        out.witness_ = std::make_pair(p.witness()->first,
                                      p.witness()->first * x + p.witness()->second);
    return out;
}

// ---------------------------------------------------------------------------
// DivisionChain

DivisionChain DivisionChain::make(RingElement a, RingElement b,
                                  std::vector<RingElement> quotients) {
    if (!same_ring(a.ring(), b.ring()))
        throw std::invalid_argument("ring mismatch in division chain");
    std::vector<RingElement> r;
    r.reserve(quotients.size());
    const RingElement* r2 = &a;  // r_{i-2}
    const RingElement* r1 = &b;  // r_{i-1}
    for (const auto& q : quotients) {
        r.push_back(*r2 - q * *r1);
        r2 = r1;
        r1 = &r.back();
    }
    return DivisionChain(std::move(a), std::move(b), std::move(quotients), std::move(r));
}

DivisionChain DivisionChain::from_parts(RingElement a, RingElement b,
                                        std::vector<RingElement> quotients,
                                        std::vector<RingElement> remainders) {
    DivisionChain rebuilt = make(std::move(a), std::move(b), std::move(quotients));
    if (rebuilt.r_.size() != remainders.size())
        throw std::invalid_argument("remainder count does not match the quotients");
    for (std::size_t i = 0; i < remainders.size(); ++i)
        if (rebuilt.r_[i] != remainders[i])
            throw std::invalid_argument("remainders do not satisfy the recurrence");
    return rebuilt;
}

bool DivisionChain::terminating() const {
    if (q_.empty()) return b_.is_zero();
    return r_.back().is_zero();
}

DivisionChain DivisionChain::drop_first() const {
    if (q_.empty()) throw std::domain_error("drop_first: empty chain");
    std::vector<RingElement> q(q_.begin() + 1, q_.end());
    std::vector<RingElement> r(r_.begin() + 1, r_.end());
    return DivisionChain(b_, r_.front(), std::move(q), std::move(r));
}

std::string DivisionChain::to_json() const {
    nlohmann::ordered_json j;
    j["a"] = a_.to_string();
    j["b"] = b_.to_string();
    j["q"] = nlohmann::ordered_json::array();
    for (const auto& q : q_) j["q"].push_back(q.to_string());
    j["r"] = nlohmann::ordered_json::array();
    for (const auto& r : r_) j["r"].push_back(r.to_string());
    return j.dump();
}

DivisionChain DivisionChain::from_json(const Ring& ring, std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad chain JSON: ") + e.what(), 0);
    }
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("q") ||
        !j.contains("r") || !j["q"].is_array() || !j["r"].is_array())
        throw ParseError("chain JSON needs \"a\", \"b\", \"q\", \"r\"", 0);
    RingElement a = RingElement::parse(ring, j["a"].get<std::string>());
    RingElement b = RingElement::parse(ring, j["b"].get<std::string>());
    std::vector<RingElement> q, r;
    for (const auto& s : j["q"]) q.push_back(RingElement::parse(ring, s.get<std::string>()));
    for (const auto& s : j["r"]) r.push_back(RingElement::parse(ring, s.get<std::string>()));
    try {
        return from_parts(std::move(a), std::move(b), std::move(q), std::move(r));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    }
}

ReductionPath chain_to_reduction(const DivisionChain& chain) {
    ReductionPath path{{}, chain.start_a(), chain.start_b()};
    path.move_params.reserve(chain.quotients().size());
    for (const auto& q : chain.quotients()) path.move_params.push_back(-q);
    const int k = chain.length();
    if (k >= 1) {
        // after k alternating moves the pair is (r_k, r_{k-1}) for odd k,
        // (r_{k-1}, r_k) for even k, with r_0 = b
        const auto& r = chain.remainders();
        const RingElement& rk = r[static_cast<std::size_t>(k - 1)];
        const RingElement& rk1 =
            k >= 2 ? r[static_cast<std::size_t>(k - 2)] : chain.start_b();
        if (k % 2 == 1) {
            path.final_a = rk;
            path.final_b = rk1;
        } else {
            path.final_a = rk1;
            path.final_b = rk;
        }
    }
    return path;
}

}  // namespace sl2factor
