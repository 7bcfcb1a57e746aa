#include "sl2factor/randgen.hpp"

#include <stdexcept>

namespace sl2factor {

RingElement random_element(Lcg64& rng, const Ring& ring, long height) {
    if (height < 0) throw std::invalid_argument("negative height");
    Integer x(rng.range(-height, height));
    Integer y = ring->is_quadratic() ? Integer(rng.range(-height, height)) : Integer(0);
    return RingElement::make(ring, std::move(x), std::move(y), 1);
}

RingElement random_nonzero_param(Lcg64& rng, const Ring& ring, long height) {
    if (height < 1) throw std::invalid_argument("height must be positive");
    for (;;) {
        RingElement e = random_element(rng, ring, height);
        if (!e.is_zero()) return e;
    }
}

ElemWord random_word(Lcg64& rng, const Ring& ring, int length, long height) {
    if (length < 0) throw std::invalid_argument("negative length");
    ElemWord w;
    Side side = rng.uniform(2) == 0 ? Side::Lower : Side::Upper;
    for (int i = 0; i < length; ++i) {
        w.push_back({side, random_nonzero_param(rng, ring, height)});
        side = other_side(side);
    }
    return w;
}

Mat2 random_matrix(Lcg64& rng, const Ring& ring, int length, long height) {
    return eval_word(ring, random_word(rng, ring, length, height));
}

}  // namespace sl2factor
