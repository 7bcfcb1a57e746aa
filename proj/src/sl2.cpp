#include "sl2factor/sl2.hpp"

#include <ostream>
#include <utility>

#include "json.hpp"

namespace sl2factor {

bool ElemWord::operator==(const ElemWord& other) const {
    if (letters_.size() != other.letters_.size()) return false;
    for (std::size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i].side != other.letters_[i].side ||
            letters_[i].param != other.letters_[i].param)
            return false;
    return true;
}

std::string ElemWord::to_text() const {
    std::string s;
    for (const auto& l : letters_) {
        if (!s.empty()) s += " ";
        s += (l.side == Side::Lower ? "L(" : "U(");
        s += l.param.to_string();
        s += ")";
    }
    return s;
}

std::string ElemWord::to_json() const {
    nlohmann::ordered_json j;
    j["letters"] = nlohmann::ordered_json::array();
    for (const auto& l : letters_) {
        nlohmann::ordered_json lj;
        lj["side"] = l.side == Side::Lower ? "L" : "U";
        lj["param"] = l.param.to_string();
        j["letters"].push_back(std::move(lj));
    }
    return j.dump();
}

ElemWord ElemWord::from_json(const Ring& ring, std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad word JSON: ") + e.what(), 0);
    }
    if (!j.is_object() || !j.contains("letters") || !j["letters"].is_array())
        throw ParseError("word JSON must be an object with a \"letters\" array", 0);
    std::vector<ElemLetter> letters;
    for (const auto& lj : j["letters"]) {
        if (!lj.is_object() || !lj.contains("side") || !lj.contains("param"))
            throw ParseError("each letter needs \"side\" and \"param\"", 0);
        std::string side = lj["side"].get<std::string>();
        if (side != "L" && side != "U")
            throw ParseError("letter side must be \"L\" or \"U\"", 0);
        RingElement p = RingElement::parse(ring, lj["param"].get<std::string>());
        letters.push_back({side == "L" ? Side::Lower : Side::Upper, std::move(p)});
    }
    return ElemWord(std::move(letters));
}

CanonicalWord canonicalize(const ElemWord& w) {
    bool starts_lower = !w.empty() && w.letters().front().side == Side::Lower;
    std::vector<ElemLetter> out;
    for (const auto& l : w.letters()) {
        if (l.param.is_zero()) continue;
        if (!out.empty() && out.back().side == l.side) {
            RingElement merged = out.back().param + l.param;
            out.pop_back();
            if (!merged.is_zero()) out.push_back({l.side, std::move(merged)});
        } else {
            out.push_back(l);
        }
    }
    return {ElemWord(std::move(out)), starts_lower};
}

ElemWord word_inverse(const ElemWord& w) {
    std::vector<ElemLetter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        out.push_back({it->side, -it->param});
    return ElemWord(std::move(out));
}

// ---------------------------------------------------------------------------
// Mat2

Mat2::Mat2(RingElement a, RingElement b, RingElement c, RingElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != RingElement::one(a_.ring()))
        throw std::invalid_argument("matrix determinant is not 1");
}

Mat2 Mat2::identity(Ring ring) {
    RingElement o = RingElement::one(ring);
    RingElement z = RingElement::zero(ring);
    return Mat2(o, z, z, o);
}

Mat2 Mat2::elementary(Side side, const RingElement& x) {
    RingElement o = RingElement::one(x.ring());
    RingElement z = RingElement::zero(x.ring());
    if (side == Side::Lower) return Mat2(o, z, x, o);
    return Mat2(o, x, z, o);
}

Mat2 Mat2::operator*(const Mat2& other) const {
    return Mat2(a_ * other.a_ + b_ * other.c_, a_ * other.b_ + b_ * other.d_,
                c_ * other.a_ + d_ * other.c_, c_ * other.b_ + d_ * other.d_);
}

Mat2 Mat2::inverse() const {
    // det = 1, so the adjugate is the inverse
    return Mat2(d_, -b_, -c_, a_);
}

bool Mat2::operator==(const Mat2& other) const {
    return a_ == other.a_ && b_ == other.b_ && c_ == other.c_ && d_ == other.d_;
}

bool Mat2::is_identity() const {
    RingElement o = RingElement::one(ring());
    return a_ == o && b_.is_zero() && c_.is_zero() && d_ == o;
}

std::string Mat2::to_string() const {
    return "[[" + a_.to_string() + "," + b_.to_string() + "],[" + c_.to_string() +
           "," + d_.to_string() + "]]";
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << m.to_string();
}

namespace {
void skip_ws(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
        ++pos;
}

void expect_ch(std::string_view text, std::size_t& pos, char c) {
    skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != c)
        throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
}

RingElement entry(const Ring& ring, std::string_view text, std::size_t& pos) {
    skip_ws(text, pos);
    return detail::parse_element_at(ring, text, pos);
}
}  // namespace

Mat2 Mat2::parse(const Ring& ring, std::string_view text) {
    std::size_t pos = 0;
    expect_ch(text, pos, '[');
    expect_ch(text, pos, '[');
    RingElement a = entry(ring, text, pos);
    expect_ch(text, pos, ',');
    RingElement b = entry(ring, text, pos);
    expect_ch(text, pos, ']');
    expect_ch(text, pos, ',');
    expect_ch(text, pos, '[');
    RingElement c = entry(ring, text, pos);
    expect_ch(text, pos, ',');
    RingElement d = entry(ring, text, pos);
    expect_ch(text, pos, ']');
    expect_ch(text, pos, ']');
    skip_ws(text, pos);
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    try {
        return Mat2(std::move(a), std::move(b), std::move(c), std::move(d));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), pos);
    }
}

Mat2 eval_word(const Ring& ring, const ElemWord& w) {
    Mat2 m = Mat2::identity(ring);
    for (const auto& l : w.letters()) m = m * Mat2::elementary(l.side, l.param);
    return m;
}

}  // namespace sl2factor
