#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sl2factor {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised by the text parsers; carries the offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

enum class RingKind { Rational, Quadratic };

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

/**
 * An S-integer ring: Z or a quadratic order Z[w], with a finite set of
 * inverted rational primes. w = sqrt(d), or (1+sqrt(d))/2 when half_basis
 * (which requires d = 1 mod 4). Immutable; elements keep a shared handle
 * to their spec, so specs are created through the factory functions.
 *
 * Text syntax: "Q", "Q[1/6]", "Q(sqrt 2)", "Q(sqrt 5; half)[1/3]".
 * The bracket part lists the inverted primes as their product.
 */
class RingSpec {
public:
    static Ring rationals(std::vector<unsigned long> inverted_primes = {});
    static Ring quadratic(long d, bool half_basis,
                          std::vector<unsigned long> inverted_primes = {});
    static Ring parse(std::string_view text);

    RingKind kind() const noexcept { return kind_; }
    bool is_quadratic() const noexcept { return kind_ == RingKind::Quadratic; }
    long d() const noexcept { return d_; }
    bool half_basis() const noexcept { return half_basis_; }
    const std::vector<unsigned long>& inverted_primes() const noexcept {
        return inverted_primes_;
    }

    /// Q always embeds in R; a quadratic field does iff d > 0.
    bool has_real_embedding() const noexcept;
    /// Inverted primes present, or a real quadratic order (Pell units).
    bool has_infinite_units() const noexcept;
    /// Rings the factorization machinery targets: some prime inverted, or a
    /// real quadratic order. Z itself is handled by the engine as a
    /// documented special case (plain Euclid, no length bound claimed).
    bool is_admissible() const noexcept;

    /// The integer c = (d-1)/4 with w^2 = c + w; half basis only.
    Integer half_c() const;

    bool operator==(const RingSpec& other) const noexcept;
    bool operator!=(const RingSpec& other) const noexcept { return !(*this == other); }
    std::string to_string() const;

private:
    RingSpec(RingKind kind, long d, bool half_basis, std::vector<unsigned long> primes);

    RingKind kind_;
    long d_;
    bool half_basis_;
    std::vector<unsigned long> inverted_primes_;
};

bool same_ring(const Ring& a, const Ring& b);

/**
 * An element (x + y*w)/den of a ring. Canonical form: den > 0, supported on
 * the inverted primes, and gcd(x, y, den) = 1; the zero element is 0/1.
 * For rational rings y = 0 throughout. All arithmetic is exact.
 */
class RingElement {
public:
    static RingElement make(Ring ring, Integer x, Integer y, Integer den);
    static RingElement integer(Ring ring, Integer v);
    static RingElement zero(Ring ring);
    static RingElement one(Ring ring);
    static RingElement omega(Ring ring);  // quadratic rings only
    static RingElement parse(const Ring& ring, std::string_view text);

    const Ring& ring() const noexcept { return ring_; }
    const Integer& x() const noexcept { return x_; }
    const Integer& y() const noexcept { return y_; }
    const Integer& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return x_ == 0 && y_ == 0; }
    bool operator==(const RingElement& other) const;
    bool operator!=(const RingElement& other) const { return !(*this == other); }

    RingElement operator+(const RingElement& other) const;
    RingElement operator-(const RingElement& other) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& other) const;

    /// Field conjugate (identity on rational rings).
    RingElement conj() const;
    /// Field norm as an exact rational; for rational rings the element itself.
    Rational norm() const;
    /// Unit of the S-integer ring: nonzero with norm supported on the
    /// inverted primes (so +-1 when nothing is inverted).
    bool is_unit() const;
    /// Exact quotient *this / divisor when it lies in the ring.
    std::optional<RingElement> exact_divide(const RingElement& divisor) const;
    /// Inverse of a unit; throws std::domain_error otherwise.
    RingElement unit_inverse() const;

    /// Archimedean size used only to order and prune searches: |a| over Q,
    /// max |real embedding| for d > 0, |norm| for d < 0. Approximate by
    /// design (double); never used to decide equality.
    double size_measure() const;
    /// max(|x|, |y|) of the numerator.
    Integer coeff_height() const;

    std::string to_string() const;

private:
    RingElement(Ring ring, Integer x, Integer y, Integer den);

    Ring ring_;
    Integer x_, y_, den_;
};

std::ostream& operator<<(std::ostream& os, const RingElement& e);

/**
 * Smallest unit > 1 of the order Z[w] of a real quadratic field, found by
 * the continued fraction expansion of w run with exact integer state.
 * Throws std::domain_error unless the ring is quadratic with d > 0.
 */
RingElement fundamental_unit(const Ring& ring);

/**
 * Deterministic, duplicate-free candidate units: products
 * +-eps^a * prod p_i^e_i with |a|, |e_i| <= exp_bound (eps the fundamental
 * unit when the field is real quadratic), merged with a sweep of all
 * denominator-free elements of coefficient height <= height_bound that pass
 * is_unit. Enumerated in shells of increasing exponent/height so growing
 * either bound only adds candidates. The list is NOT complete for the full
 * unit group; absence from it never proves an element is not a unit.
 */
std::vector<RingElement> unit_candidates(const Ring& ring, int exp_bound,
                                         int height_bound);

namespace detail {
/// Element parser usable mid-string (for the matrix syntax); advances pos.
RingElement parse_element_at(const Ring& ring, std::string_view text, std::size_t& pos);
/// Strip all inverted-prime factors from |n|; the ring's denominators are
/// exactly those with remainder 1.
Integer strip_inverted(const RingSpec& spec, const Integer& n);
}  // namespace detail

}  // namespace sl2factor
