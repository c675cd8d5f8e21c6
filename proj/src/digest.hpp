/*
 * Copyright 2026 the enchain authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ENCHAIN_DIGEST_HPP
#define ENCHAIN_DIGEST_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "bytes.hpp"

namespace enchain {

inline constexpr std::size_t kDigestSize = 32;
inline constexpr std::size_t kTagSize = 8;
inline constexpr std::size_t kNonceSize = 16;

/// Fixed 32-octet hash output. XOR is defined only between two digests.
struct Digest {
    std::array<Byte, kDigestSize> octets{};

    auto operator<=>(const Digest&) const = default;

    Bytes bytes() const { return Bytes(octets.begin(), octets.end()); }
    ByteSpan span() const { return ByteSpan(octets.data(), octets.size()); }
    std::string hex() const { return to_hex(span()); }
    bool is_zero() const;

    static Digest from_bytes(ByteSpan data);  // requires exactly 32 octets
    static Digest from_hex(std::string_view hex);
};

/// Public 8-octet identifier of an ECall function.
struct Tag {
    std::array<Byte, kTagSize> octets{};

    auto operator<=>(const Tag&) const = default;

    ByteSpan span() const { return ByteSpan(octets.data(), octets.size()); }
    std::string hex() const { return to_hex(span()); }

    static Tag from_bytes(ByteSpan data);  // requires exactly 8 octets
    static Tag from_hex(std::string_view hex);
};

/// 16-octet request randomizer, fresh per request.
struct Nonce {
    std::array<Byte, kNonceSize> octets{};

    auto operator<=>(const Nonce&) const = default;

    ByteSpan span() const { return ByteSpan(octets.data(), octets.size()); }
    std::string hex() const { return to_hex(span()); }

    static Nonce from_bytes(ByteSpan data);
    static Nonce from_hex(std::string_view hex);
};

/// The hash primitive is a single configuration point: Sha256 in
/// production, Fnv256 as a fast non-cryptographic stand-in for tests
/// that only care about chain structure.
enum class HashKind {
    Sha256,
    Fnv256,
};

Digest hash_bytes(ByteSpan input, HashKind kind = HashKind::Sha256);
Digest xor_digests(const Digest& a, const Digest& b);

/// Big-endian arbitrary-precision sum of two or more nonempty byte
/// strings, serialized with no leading zero octet (the value zero is the
/// single octet 0x00). Commutative and associative; this is the `+`
/// combining operator for multi-predecessor chain inputs.
Bytes add_bytestrings(std::span<const Bytes> operands);

Bytes concat_bytes(ByteSpan a, ByteSpan b);

/// Tallies of primitive chain operations performed during one run.
struct OpCounters {
    std::uint64_t hash_count = 0;
    std::uint64_t xor_count = 0;
    std::uint64_t add_count = 0;
    std::uint64_t con_count = 0;

    bool operator==(const OpCounters&) const = default;
    OpCounters& operator+=(const OpCounters& o);
};

/// Counting front end over the primitives. One instance per run; an
/// n-ary add counts as n-1 binary additions.
class Algebra {
  public:
    explicit Algebra(HashKind kind = HashKind::Sha256) : kind_(kind) {}

    Digest hash(ByteSpan input) {
        ++counters_.hash_count;
        return hash_bytes(input, kind_);
    }

    Digest xored(const Digest& a, const Digest& b) {
        ++counters_.xor_count;
        return xor_digests(a, b);
    }

    Bytes add(std::span<const Bytes> operands) {
        counters_.add_count += operands.size() - 1;
        return add_bytestrings(operands);
    }

    Bytes concat(ByteSpan a, ByteSpan b) {
        ++counters_.con_count;
        return concat_bytes(a, b);
    }

    HashKind kind() const { return kind_; }
    const OpCounters& counters() const { return counters_; }

  private:
    HashKind kind_;
    OpCounters counters_;
};

}  // namespace enchain

#endif  // ENCHAIN_DIGEST_HPP
