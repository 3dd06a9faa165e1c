#include <doctest.h>

#include <stdexcept>

#include "ufc/simd/bit_vector.hpp"

using ufc::BitVector;

TEST_CASE("tail bits stay clear") {
    BitVector v(70, true);
    CHECK(v.count() == 70);
    v.flip();
    CHECK(v.none());
    v.flip();
    CHECK(v.words()[1] == (BitVector::Word{1} << 6) - 1);
}

TEST_CASE("find and window") {
    BitVector v(200);
    v.set(3);
    v.set(130);
    CHECK(v.find_first() == 3);
    CHECK(v.find_next(4) == 130);
    CHECK_FALSE(v.find_next(131).has_value());
    CHECK(v.window(3) == 1);
    CHECK(v.window(130) == 1);
    CHECK(v.window(67) == (BitVector::Word{1} << 63));
    CHECK(v.window(500) == 0);
}

TEST_CASE("set relations") {
    BitVector a(100), b(100);
    a.set(10);
    b.set(10);
    b.set(50);
    CHECK(a.is_subset_of(b));
    CHECK_FALSE(b.is_subset_of(a));
    CHECK(a.intersects(b));
    CHECK((a ^ b).count() == 1);
    CHECK((~a).count() == 99);
    CHECK_THROWS_AS(a &= BitVector(99), std::invalid_argument);
}
