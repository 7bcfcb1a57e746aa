#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sl2factor/ring.hpp"

namespace sl2factor {

/// Side of an elementary matrix: Lower is L(x) = [[1,0],[x,1]],
/// Upper is U(x) = [[1,x],[0,1]].
enum class Side { Lower, Upper };

inline Side other_side(Side s) { return s == Side::Lower ? Side::Upper : Side::Lower; }

struct ElemLetter {
    Side side;
    RingElement param;
};

/// A word in the elementary generators, evaluated left to right.
class ElemWord {
public:
    ElemWord() = default;
    explicit ElemWord(std::vector<ElemLetter> letters) : letters_(std::move(letters)) {}

    const std::vector<ElemLetter>& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    void push_back(ElemLetter l) { letters_.push_back(std::move(l)); }

    bool operator==(const ElemWord& other) const;

    /// "L(0) U(1) L(1)" style, parameters in the element syntax.
    std::string to_text() const;
    /// {"letters":[{"side":"L","param":"..."},...]}
    std::string to_json() const;
    static ElemWord from_json(const Ring& ring, std::string_view text);

private:
    std::vector<ElemLetter> letters_;
};

struct CanonicalWord {
    ElemWord word;
    bool starts_lower;  // whether the input's first letter was Lower
};

/// Merge adjacent same-side letters and drop zero parameters until no more
/// apply. Evaluation is preserved; the result alternates sides.
CanonicalWord canonicalize(const ElemWord& w);

/// Reverse the word and negate every parameter; evaluates to the inverse.
ElemWord word_inverse(const ElemWord& w);

/**
 * A 2x2 matrix over a ring with determinant 1, row major:
 * [[a, b], [c, d]]. The determinant is checked on every construction.
 * Text syntax: "[[7,5],[4,3]]" with entries in the element syntax;
 * whitespace is allowed around entries and delimiters.
 */
class Mat2 {
public:
    Mat2(RingElement a, RingElement b, RingElement c, RingElement d);
    static Mat2 identity(Ring ring);
    static Mat2 elementary(Side side, const RingElement& x);
    static Mat2 parse(const Ring& ring, std::string_view text);

    const Ring& ring() const noexcept { return a_.ring(); }
    const RingElement& a() const noexcept { return a_; }
    const RingElement& b() const noexcept { return b_; }
    const RingElement& c() const noexcept { return c_; }
    const RingElement& d() const noexcept { return d_; }

    Mat2 operator*(const Mat2& other) const;
    Mat2 inverse() const;
    bool operator==(const Mat2& other) const;
    bool operator!=(const Mat2& other) const { return !(*this == other); }
    bool is_identity() const;

    std::string to_string() const;

private:
    RingElement a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const Mat2& m);

/// Product of the word's elementary matrices; identity for the empty word.
Mat2 eval_word(const Ring& ring, const ElemWord& w);

}  // namespace sl2factor
