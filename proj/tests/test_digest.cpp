#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "digest.hpp"

using namespace enchain;

namespace {

Digest random_digest(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    Digest d;
    for (auto& o : d.octets) o = static_cast<Byte>(byte(rng));
    return d;
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<int> byte(0, 255);
    Bytes out(len(rng));
    for (auto& b : out) b = static_cast<Byte>(byte(rng));
    return out;
}

// Independent oracle for add: 128-bit arithmetic on short operands.
unsigned __int128 u128_of(const Bytes& b) {
    unsigned __int128 v = 0;
    for (Byte o : b) v = (v << 8) | o;
    return v;
}

Bytes u128_to_bytes(unsigned __int128 v) {
    if (v == 0) return Bytes{0};
    Bytes out;
    while (v > 0) {
        out.insert(out.begin(), static_cast<Byte>(v & 0xff));
        v >>= 8;
    }
    return out;
}

}  // namespace

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(hash_bytes({}).hex() ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    Bytes abc = to_bytes("abc");
    CHECK(hash_bytes(as_span(abc)).hex() ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("hash is deterministic and 32 octets at every input length") {
    std::mt19937_64 rng(7);
    for (std::size_t len : {0ul, 1ul, 31ul, 32ul, 33ul, 4096ul}) {
        Bytes input = random_bytes(rng, len, len);
        Digest a = hash_bytes(as_span(input));
        Digest b = hash_bytes(as_span(input));
        CHECK(a == b);
        CHECK(a.octets.size() == kDigestSize);
    }
    for (HashKind kind : {HashKind::Sha256, HashKind::Fnv256}) {
        Bytes input = random_bytes(rng, 100, 100);
        CHECK(hash_bytes(as_span(input), kind) == hash_bytes(as_span(input), kind));
    }
}

TEST_CASE("no collisions across 2000 distinct inputs") {
    std::set<std::string> seen;
    for (int i = 0; i < 2000; ++i) {
        Bytes input = to_bytes("input-" + std::to_string(i));
        CHECK(seen.insert(hash_bytes(as_span(input)).hex()).second);
    }
    CHECK(seen.size() == 2000);
}

TEST_CASE("xor is self-inverse, has identity, and cancels") {
    std::mt19937_64 rng(11);
    const Digest zero{};
    for (int i = 0; i < 200; ++i) {
        Digest a = random_digest(rng);
        Digest b = random_digest(rng);
        CHECK(xor_digests(a, a) == zero);
        CHECK(xor_digests(a, zero) == a);
        CHECK(xor_digests(xor_digests(a, b), b) == a);
        CHECK(xor_digests(a, b) == xor_digests(b, a));
    }
}

TEST_CASE("add handles small integers and carries") {
    std::vector<Bytes> small{{0x01}, {0x02}};
    CHECK(add_bytestrings(small) == Bytes{0x03});
    std::vector<Bytes> carry{{0xff}, {0x01}};
    CHECK(add_bytestrings(carry) == Bytes{0x01, 0x00});
}

TEST_CASE("add agrees with 128-bit arithmetic on random operands") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        std::size_t count = 2 + rng() % 4;
        std::vector<Bytes> ops;
        unsigned __int128 expected = 0;
        for (std::size_t k = 0; k < count; ++k) {
            ops.push_back(random_bytes(rng, 1, 12));
            expected += u128_of(ops.back());
        }
        CHECK(add_bytestrings(ops) == u128_to_bytes(expected));
    }
}

TEST_CASE("add is invariant under operand permutation") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        std::vector<Bytes> ops;
        for (int k = 0; k < 5; ++k) ops.push_back(random_bytes(rng, 1, 40));
        Bytes sum = add_bytestrings(ops);
        std::shuffle(ops.begin(), ops.end(), rng);
        CHECK(add_bytestrings(ops) == sum);
    }
}

TEST_CASE("add serialization carries no leading zero") {
    std::vector<Bytes> padded{{0x00, 0x00, 0x01}, {0x00, 0x01}};
    CHECK(add_bytestrings(padded) == Bytes{0x02});
    std::vector<Bytes> zeros{{0x00}, {0x00, 0x00}};
    CHECK(add_bytestrings(zeros) == Bytes{0x00});
}

TEST_CASE("add rejects contract violations") {
    std::vector<Bytes> single{{0x01}};
    CHECK_THROWS_AS(add_bytestrings(single), std::invalid_argument);
    std::vector<Bytes> none;
    CHECK_THROWS_AS(add_bytestrings(none), std::invalid_argument);
    std::vector<Bytes> with_empty{{0x01}, {}};
    CHECK_THROWS_AS(add_bytestrings(with_empty), std::invalid_argument);
}

TEST_CASE("concat is length-additive, ordered, associative") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        Bytes a = random_bytes(rng, 1, 20);
        Bytes b = random_bytes(rng, 1, 20);
        Bytes c = random_bytes(rng, 1, 20);
        CHECK(concat_bytes(as_span(a), as_span(b)).size() == a.size() + b.size());
        CHECK(concat_bytes(as_span(concat_bytes(as_span(a), as_span(b))), as_span(c)) ==
              concat_bytes(as_span(a), as_span(concat_bytes(as_span(b), as_span(c)))));
    }
    Bytes x = to_bytes("ab");
    Bytes y = to_bytes("ba");
    CHECK(concat_bytes(as_span(x), as_span(y)) != concat_bytes(as_span(y), as_span(x)));
}

TEST_CASE("algebra counts every primitive call") {
    Algebra alg;
    Bytes a = to_bytes("aa");
    Bytes b = to_bytes("bb");
    alg.hash(as_span(a));
    alg.xored(Digest{}, Digest{});
    alg.concat(as_span(a), as_span(b));
    std::vector<Bytes> ops{{0x01}, {0x02}, {0x03}, {0x04}};
    alg.add(ops);  // n-ary add counts n-1 binary additions
    CHECK(alg.counters() == OpCounters{1, 1, 3, 1});
}

TEST_CASE("hex round-trips and rejects malformed input") {
    Bytes raw = from_hex("00ff10ab");
    CHECK(to_hex(as_span(raw)) == "00ff10ab");
    CHECK_THROWS_AS(from_hex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(from_hex("zz"), std::invalid_argument);
    CHECK(Tag::from_hex("0102030405060708").hex() == "0102030405060708");
    CHECK_THROWS_AS(Tag::from_hex("01"), std::invalid_argument);
    CHECK_THROWS_AS(Nonce::from_hex("01"), std::invalid_argument);
    CHECK_THROWS_AS(Digest::from_hex("01"), std::invalid_argument);
}
