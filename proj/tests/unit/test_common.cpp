#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <doctest.h>

#include <vector>

using namespace codetect;

TEST_SUITE("common") {

TEST_CASE("sha256 matches reference digests") {
    // Values from python hashlib.
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("a\nb\n") == "911169ddaaf146aff539f58c26c489af3b892dff0fe283c1c264c65ae5aa59a2");
    CHECK(sha256_hex("h\xc3\xa9llo") == "3c48591d8d098a4538f5e013dfcf406e948eac4d3277b10bf614e295d6068179");
}

TEST_CASE("utf8 length counts code points") {
    CHECK(utf8_length("") == 0);
    CHECK(utf8_length("abc") == 3);
    CHECK(utf8_length("h\xc3\xa9llo") == 5);
    CHECK(utf8_length("\xe2\x82\xac\xf0\x9f\x98\x80") == 2);
}

TEST_CASE("trim helpers") {
    CHECK(trim("  a b \t\n") == "a b");
    CHECK(trim_right("  x  ") == "  x");
    CHECK(is_blank(" \t\r\n"));
    CHECK_FALSE(is_blank(" x "));
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -0.0, 5.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("seeded streams are reproducible and distinct") {
    Rng a(mix_seed(7, 0)), b(mix_seed(7, 0)), c(mix_seed(7, 1));
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
    Rng r(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(r);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(uniform_index(r, 7) < 7);
    }
}

TEST_CASE("shuffle is a permutation") {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[i] = i;
    Rng r(11);
    shuffle(std::span<int>(v), r);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

}
