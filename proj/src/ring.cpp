#include "sl2factor/ring.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace sl2factor {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bool is_prime_ul(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) return n == p;
    return true;
}

// Squarefree test for |d| <= LONG_MAX: trial division far enough that the
// leftover cofactor can only be 1, a prime, a product of two distinct
// primes, or a prime square (caught by the perfect-square test).
bool is_squarefree(long d) {
    unsigned long n = d < 0 ? static_cast<unsigned long>(-(d + 1)) + 1UL
                            : static_cast<unsigned long>(d);
    if (n == 0) return false;
    for (unsigned long p = 2; p <= 3000000UL && p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    Integer rest(n);
    if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) return false;
    return true;
}

// (x1 + y1 w)(x2 + y2 w) coefficient pair for the given ring.
std::pair<Integer, Integer> mul_pair(const RingSpec& spec, const Integer& x1,
                                     const Integer& y1, const Integer& x2,
                                     const Integer& y2) {
    if (spec.kind() == RingKind::Rational) return {x1 * x2, Integer(0)};
    if (spec.half_basis()) {
        Integer c = spec.half_c();  // w^2 = c + w
        return {x1 * x2 + c * y1 * y2, x1 * y2 + y1 * x2 + y1 * y2};
    }
    return {x1 * x2 + Integer(spec.d()) * y1 * y2, x1 * y2 + y1 * x2};
}

std::pair<Integer, Integer> conj_pair(const RingSpec& spec, const Integer& x,
                                      const Integer& y) {
    if (spec.kind() == RingKind::Rational) return {x, Integer(0)};
    if (spec.half_basis()) return {x + y, -y};  // conj(w) = 1 - w
    return {x, -y};
}

// Numerator times its own conjugate. Over the rationals conj is the
// identity, so this is x^2 there, keeping A * conj(B) / norm_pair(B) = A / B
// uniform across kinds.
Integer norm_pair(const RingSpec& spec, const Integer& x, const Integer& y) {
    if (spec.kind() == RingKind::Rational) return x * x;
    if (spec.half_basis()) return x * x + x * y - spec.half_c() * y * y;
    return x * x - Integer(spec.d()) * y * y;
}

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos);
    }
    void expect_word(std::string_view w) {
        if (text.substr(pos, w.size()) != w)
            throw ParseError("expected \"" + std::string(w) + "\"", pos);
        pos += w.size();
    }
    Integer integer() {
        std::size_t start = pos;
        if (peek() == '-') ++pos;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected an integer", pos);
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        return Integer(std::string(text.substr(start, pos - start)), 10);
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// RingSpec

RingSpec::RingSpec(RingKind kind, long d, bool half_basis,
                   std::vector<unsigned long> primes)
    : kind_(kind), d_(d), half_basis_(half_basis), inverted_primes_(std::move(primes)) {}

Ring RingSpec::rationals(std::vector<unsigned long> inverted_primes) {
    std::sort(inverted_primes.begin(), inverted_primes.end());
    inverted_primes.erase(std::unique(inverted_primes.begin(), inverted_primes.end()),
                          inverted_primes.end());
    for (unsigned long p : inverted_primes)
        if (!is_prime_ul(p))
            throw std::invalid_argument("inverted primes must be prime: " + std::to_string(p));
    return Ring(new RingSpec(RingKind::Rational, 0, false, std::move(inverted_primes)));
}

Ring RingSpec::quadratic(long d, bool half_basis, std::vector<unsigned long> inverted_primes) {
    if (d == 0 || d == 1) throw std::invalid_argument("d must not be 0 or 1");
    if (!is_squarefree(d)) throw std::invalid_argument("d must be squarefree");
    if (half_basis && ((d % 4) + 4) % 4 != 1)
        throw std::invalid_argument("half basis requires d = 1 mod 4");
    std::sort(inverted_primes.begin(), inverted_primes.end());
    inverted_primes.erase(std::unique(inverted_primes.begin(), inverted_primes.end()),
                          inverted_primes.end());
    for (unsigned long p : inverted_primes)
        if (!is_prime_ul(p))
            throw std::invalid_argument("inverted primes must be prime: " + std::to_string(p));
    return Ring(new RingSpec(RingKind::Quadratic, d, half_basis, std::move(inverted_primes)));
}

bool RingSpec::has_real_embedding() const noexcept {
    return kind_ == RingKind::Rational || d_ > 0;
}

bool RingSpec::has_infinite_units() const noexcept {
    if (!inverted_primes_.empty()) return true;
    return kind_ == RingKind::Quadratic && d_ > 0;
}

bool RingSpec::is_admissible() const noexcept {
    if (!inverted_primes_.empty()) return true;
    return kind_ == RingKind::Quadratic && d_ > 0;
}

Integer RingSpec::half_c() const {
    if (!half_basis_) throw std::domain_error("half_c: not a half-basis ring");
    return Integer(d_ - 1) / 4;
}

bool RingSpec::operator==(const RingSpec& other) const noexcept {
    return kind_ == other.kind_ && d_ == other.d_ && half_basis_ == other.half_basis_ &&
           inverted_primes_ == other.inverted_primes_;
}

std::string RingSpec::to_string() const {
    std::string s = "Q";
    if (kind_ == RingKind::Quadratic) {
        s += "(sqrt " + std::to_string(d_);
        if (half_basis_) s += "; half";
        s += ")";
    }
    if (!inverted_primes_.empty()) {
        Integer prod(1);
        for (unsigned long p : inverted_primes_) prod *= static_cast<unsigned long>(p);
        s += "[1/" + prod.get_str() + "]";
    }
    return s;
}

Ring RingSpec::parse(std::string_view text) {
    Lexer lx{text};
    lx.expect('Q');
    bool quadratic = false;
    long d = 0;
    bool half = false;
    if (lx.accept('(')) {
        quadratic = true;
        lx.expect_word("sqrt ");
        Integer dz = lx.integer();
        if (!dz.fits_slong_p()) throw ParseError("d out of range", lx.pos);
        d = dz.get_si();
        if (lx.accept(';')) {
            lx.expect_word(" half");
            half = true;
        }
        lx.expect(')');
    }
    std::vector<unsigned long> primes;
    if (lx.accept('[')) {
        lx.expect_word("1/");
        Integer n = lx.integer();
        if (n < 2) throw ParseError("inverted-prime product must be at least 2", lx.pos);
        for (unsigned long p = 2; Integer(p) * p <= n; ++p) {
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                primes.push_back(p);
                while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            }
        }
        if (n > 1) {
            if (!n.fits_ulong_p()) throw ParseError("inverted prime too large", lx.pos);
            primes.push_back(n.get_ui());
        }
        lx.expect(']');
    }
    if (!lx.eof()) throw ParseError("unexpected trailing input", lx.pos);
    try {
        if (quadratic) return RingSpec::quadratic(d, half, std::move(primes));
        return RingSpec::rationals(std::move(primes));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    }
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(Ring ring, Integer x, Integer y, Integer den)
    : ring_(std::move(ring)), x_(std::move(x)), y_(std::move(y)), den_(std::move(den)) {}

RingElement RingElement::make(Ring ring, Integer x, Integer y, Integer den) {
    if (!ring) throw std::invalid_argument("null ring");
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (ring->kind() == RingKind::Rational && y != 0)
        throw std::invalid_argument("nonzero w-coefficient over the rationals");
    if (den < 0) {
        den = -den;
        x = -x;
        y = -y;
    }
    if (x == 0 && y == 0) return RingElement(std::move(ring), 0, 0, 1);
    Integer g = gcd(gcd(x, y), den);
    x /= g;
    y /= g;
    den /= g;
    if (detail::strip_inverted(*ring, den) != 1)
        throw std::invalid_argument("denominator not supported by the ring");
    return RingElement(std::move(ring), std::move(x), std::move(y), std::move(den));
}

RingElement RingElement::integer(Ring ring, Integer v) {
    return make(std::move(ring), std::move(v), 0, 1);
}

RingElement RingElement::zero(Ring ring) { return integer(std::move(ring), 0); }

RingElement RingElement::one(Ring ring) { return integer(std::move(ring), 1); }

RingElement RingElement::omega(Ring ring) {
    if (!ring || !ring->is_quadratic())
        throw std::domain_error("omega: quadratic rings only");
    return make(std::move(ring), 0, 1, 1);
}

namespace {
void check_same(const RingElement& a, const RingElement& b) {
    if (!same_ring(a.ring(), b.ring()))
        throw std::invalid_argument("ring mismatch between operands");
}
}  // namespace

bool RingElement::operator==(const RingElement& other) const {
    check_same(*this, other);
    return x_ == other.x_ && y_ == other.y_ && den_ == other.den_;
}

RingElement RingElement::operator+(const RingElement& other) const {
    check_same(*this, other);
    Integer l = lcm(den_, other.den_);
    Integer f1 = l / den_, f2 = l / other.den_;
    return make(ring_, x_ * f1 + other.x_ * f2, y_ * f1 + other.y_ * f2, l);
}

RingElement RingElement::operator-(const RingElement& other) const {
    return *this + (-other);
}

RingElement RingElement::operator-() const {
    return RingElement(ring_, -x_, -y_, den_);
}

RingElement RingElement::operator*(const RingElement& other) const {
    check_same(*this, other);
    auto [px, py] = mul_pair(*ring_, x_, y_, other.x_, other.y_);
    return make(ring_, std::move(px), std::move(py), den_ * other.den_);
}

RingElement RingElement::conj() const {
    auto [cx, cy] = conj_pair(*ring_, x_, y_);
    return RingElement(ring_, std::move(cx), std::move(cy), den_);
}

Rational RingElement::norm() const {
    Rational n;
    if (ring_->kind() == RingKind::Rational) {
        n = Rational(x_, den_);
    } else {
        n = Rational(norm_pair(*ring_, x_, y_), den_ * den_);
    }
    n.canonicalize();
    return n;
}

bool RingElement::is_unit() const {
    if (is_zero()) return false;
    Integer n = abs(norm_pair(*ring_, x_, y_));
    return detail::strip_inverted(*ring_, n) == 1;
}

std::optional<RingElement> RingElement::exact_divide(const RingElement& divisor) const {
    check_same(*this, divisor);
    if (divisor.is_zero()) throw std::invalid_argument("division by zero");
    if (is_zero()) return zero(ring_);
    auto [cx, cy] = conj_pair(*ring_, divisor.x_, divisor.y_);
    auto [px, py] = mul_pair(*ring_, x_, y_, cx, cy);
    px *= divisor.den_;
    py *= divisor.den_;
    Integer d = den_ * norm_pair(*ring_, divisor.x_, divisor.y_);
    if (d < 0) {
        d = -d;
        px = -px;
        py = -py;
    }
    Integer g = gcd(gcd(px, py), d);
    px /= g;
    py /= g;
    d /= g;
    if (detail::strip_inverted(*ring_, d) != 1) return std::nullopt;
    return RingElement(ring_, std::move(px), std::move(py), std::move(d));
}

RingElement RingElement::unit_inverse() const {
    if (!is_unit()) throw std::domain_error("unit_inverse: not a unit");
    auto inv = one(ring_).exact_divide(*this);
    assert(inv);
    return *inv;
}

double RingElement::size_measure() const {
    double dd = den_.get_d();
    if (ring_->kind() == RingKind::Rational) return std::abs(x_.get_d()) / dd;
    if (ring_->d() > 0) {
        double s = std::sqrt(static_cast<double>(ring_->d()));
        double w1 = ring_->half_basis() ? (1.0 + s) / 2.0 : s;
        double w2 = ring_->half_basis() ? (1.0 - s) / 2.0 : -s;
        double e1 = x_.get_d() + y_.get_d() * w1;
        double e2 = x_.get_d() + y_.get_d() * w2;
        return std::max(std::abs(e1), std::abs(e2)) / dd;
    }
    Integer n = abs(norm_pair(*ring_, x_, y_));
    return n.get_d() / (dd * dd);
}

Integer RingElement::coeff_height() const {
    Integer ax = abs(x_), ay = abs(y_);
    return ax > ay ? ax : ay;
}

std::string RingElement::to_string() const {
    if (y_ == 0) {
        std::string s = x_.get_str();
        if (den_ != 1) s += "/" + den_.get_str();
        return s;
    }
    std::string core = x_.get_str() + "+" + y_.get_str() + "*w";
    if (den_ == 1) return core;
    return "(" + core + ")/" + den_.get_str();
}

std::ostream& operator<<(std::ostream& os, const RingElement& e) {
    return os << e.to_string();
}

RingElement RingElement::parse(const Ring& ring, std::string_view text) {
    std::size_t pos = 0;
    RingElement e = detail::parse_element_at(ring, text, pos);
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    return e;
}

namespace detail {

Integer strip_inverted(const RingSpec& spec, const Integer& n) {
    Integer rest = abs(n);
    for (unsigned long p : spec.inverted_primes())
        while (rest != 0 && mpz_divisible_ui_p(rest.get_mpz_t(), p))
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    return rest;
}

RingElement parse_element_at(const Ring& ring, std::string_view text, std::size_t& pos) {
    Lexer lx{text, pos};
    Integer x, y(0), den(1);
    bool need_den = false;
    if (lx.accept('(')) {
        x = lx.integer();
        lx.expect('+');
        y = lx.integer();
        lx.expect_word("*w");
        lx.expect(')');
        lx.expect('/');
        den = lx.integer();
        need_den = true;
    } else {
        x = lx.integer();
        if (lx.accept('+')) {
            y = lx.integer();
            lx.expect_word("*w");
        } else if (lx.accept('/')) {
            den = lx.integer();
            need_den = true;
        }
    }
    if (need_den && den <= 0) throw ParseError("denominator must be positive", lx.pos);
    pos = lx.pos;
    try {
        return RingElement::make(ring, std::move(x), std::move(y), std::move(den));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), pos);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Units

RingElement fundamental_unit(const Ring& ring) {
    if (!ring || !ring->is_quadratic() || ring->d() <= 0)
        throw std::domain_error("fundamental_unit: real quadratic rings only");
    const Integer d(ring->d());
    const bool half = ring->half_basis();
    Integer s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());

    // Continued fraction of w with exact state a_k = floor((P_k + sqrt d)/Q_k),
    // P_{k+1} = a_k Q_k - P_k, Q_{k+1} = (d - P_{k+1}^2)/Q_k. The expansion is
    // periodic from index 1; the convergent just before the first period end
    // yields the fundamental unit p - q*conj(w).
    Integer P = half ? 1 : 0;
    Integer Q = half ? 2 : 1;
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), Integer(P + s).get_mpz_t(), Q.get_mpz_t());
    Integer p_prev2(1), p_prev(a);  // p_{-1}, p_0
    Integer q_prev2(0), q_prev(1);  // q_{-1}, q_0
    P = a * Q - P;
    Q = (d - P * P) / Q;
    const Integer P1 = P, Q1 = Q;

    for (int k = 1;; ++k) {
        if (k > 1 && P == P1 && Q == Q1) {
            // period length k-1; unit from convergent p_{k-2}/q_{k-2}
            Integer px = half ? Integer(p_prev2 - q_prev2) : p_prev2;
            RingElement eps = RingElement::make(ring, px, q_prev2, 1);
            Rational n = eps.norm();
            if (!(n == 1 || n == -1))
                throw std::logic_error("fundamental_unit: norm is not +-1");
            return eps;
        }
        if (k > 100000) throw std::logic_error("fundamental_unit: period not found");
        mpz_fdiv_q(a.get_mpz_t(), Integer(P + s).get_mpz_t(), Q.get_mpz_t());
        Integer p_cur = a * p_prev + p_prev2;
        Integer q_cur = a * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p_cur;
        q_prev2 = q_prev;
        q_prev = q_cur;
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
}

std::vector<RingElement> unit_candidates(const Ring& ring, int exp_bound, int height_bound) {
    if (!ring) throw std::invalid_argument("null ring");
    if (exp_bound < 1 || height_bound < 1)
        throw std::invalid_argument("unit_candidates: bounds must be positive");

    std::vector<RingElement> gens;
    if (ring->is_quadratic() && ring->d() > 0) gens.push_back(fundamental_unit(ring));
    for (unsigned long p : ring->inverted_primes())
        gens.push_back(RingElement::integer(ring, Integer(static_cast<unsigned long>(p))));

    // powers[i][exp_bound + e] = gens[i]^e for e in [-exp_bound, exp_bound]
    std::vector<std::vector<RingElement>> powers;
    for (const auto& g : gens) {
        std::vector<RingElement> t;
        t.reserve(2 * exp_bound + 1);
        RingElement ginv = g.unit_inverse();
        RingElement cur = RingElement::one(ring);
        std::vector<RingElement> neg;
        for (int e = 1; e <= exp_bound; ++e) {
            cur = cur * ginv;
            neg.push_back(cur);
        }
        for (int e = exp_bound; e >= 1; --e) t.push_back(neg[e - 1]);
        cur = RingElement::one(ring);
        t.push_back(cur);
        for (int e = 1; e <= exp_bound; ++e) {
            cur = cur * g;
            t.push_back(cur);
        }
        powers.push_back(std::move(t));
    }

    std::vector<RingElement> out;
    std::set<std::tuple<Integer, Integer, Integer>> seen;
    auto emit = [&](const RingElement& u) {
        if (seen.insert({u.x(), u.y(), u.den()}).second) out.push_back(u);
    };

    const int n = static_cast<int>(gens.size());
    const int top = std::max(exp_bound, height_bound);
    std::vector<int> e(n, 0);
    for (int shell = 0; shell <= top; ++shell) {
        if (shell <= exp_bound) {
            // all exponent tuples with max |e_i| == shell, lexicographic
            std::fill(e.begin(), e.end(), -shell);
            while (true) {
                int m = 0;
                for (int v : e) m = std::max(m, std::abs(v));
                if (m == shell) {
                    RingElement u = RingElement::one(ring);
                    for (int i = 0; i < n; ++i)
                        u = u * powers[i][static_cast<std::size_t>(exp_bound + e[i])];
                    emit(u);
                    emit(-u);
                }
                if (n == 0) break;
                int i = n - 1;
                while (i >= 0 && e[i] == shell) e[i--] = -shell;
                if (i < 0) break;
                ++e[i];
            }
        }
        if (shell >= 1 && shell <= height_bound) {
            if (ring->kind() == RingKind::Rational) {
                for (long sx : {-shell, shell}) {
                    RingElement el = RingElement::integer(ring, Integer(sx));
                    if (el.is_unit()) emit(el);
                }
            } else {
                for (long sx = -shell; sx <= shell; ++sx)
                    for (long sy = -shell; sy <= shell; ++sy) {
                        if (std::max(std::abs(sx), std::abs(sy)) != shell) continue;
                        RingElement el = RingElement::make(ring, Integer(sx), Integer(sy), 1);
                        if (el.is_unit()) emit(el);
                    }
            }
        }
    }
    return out;
}

}  // namespace sl2factor
