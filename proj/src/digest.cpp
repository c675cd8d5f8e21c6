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

#include "digest.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

namespace enchain {

namespace {

template <std::size_t N>
std::array<Byte, N> array_from_span(ByteSpan data, const char* what) {
    if (data.size() != N) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(N) +
                                    " octets, got " + std::to_string(data.size()));
    }
    std::array<Byte, N> out{};
    std::copy(data.begin(), data.end(), out.begin());
    return out;
}

// Four independent FNV-1a lanes widened to a 32-octet output. Test-only:
// fast, deterministic, not collision resistant.
Digest fnv256(ByteSpan input) {
    constexpr std::uint64_t kPrime = 1099511628211ULL;
    std::uint64_t lanes[4];
    for (int l = 0; l < 4; ++l) {
        lanes[l] = 1469598103934665603ULL ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(l + 1));
    }
    for (Byte b : input) {
        for (int l = 0; l < 4; ++l) {
            lanes[l] ^= static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(l) * 0x65ULL;
            lanes[l] *= kPrime;
        }
    }
    Digest out;
    for (int l = 0; l < 4; ++l) {
        for (int i = 0; i < 8; ++i) {
            out.octets[static_cast<std::size_t>(l * 8 + i)] =
                static_cast<Byte>(lanes[l] >> (56 - 8 * i));
        }
    }
    return out;
}

}  // namespace

bool Digest::is_zero() const {
    return std::all_of(octets.begin(), octets.end(), [](Byte b) { return b == 0; });
}

Digest Digest::from_bytes(ByteSpan data) {
    return Digest{array_from_span<kDigestSize>(data, "Digest")};
}

Digest Digest::from_hex(std::string_view hex) {
    return from_bytes(as_span(enchain::from_hex(hex)));
}

Tag Tag::from_bytes(ByteSpan data) {
    return Tag{array_from_span<kTagSize>(data, "Tag")};
}

Tag Tag::from_hex(std::string_view hex) {
    return from_bytes(as_span(enchain::from_hex(hex)));
}

Nonce Nonce::from_bytes(ByteSpan data) {
    return Nonce{array_from_span<kNonceSize>(data, "Nonce")};
}

Nonce Nonce::from_hex(std::string_view hex) {
    return from_bytes(as_span(enchain::from_hex(hex)));
}

Digest hash_bytes(ByteSpan input, HashKind kind) {
    if (kind == HashKind::Fnv256) {
        return fnv256(input);
    }
    Digest out;
    static const Byte kEmpty = 0;
    const Byte* p = input.empty() ? &kEmpty : input.data();
    crypto_hash_sha256(out.octets.data(), p, input.size());
    return out;
}

Digest xor_digests(const Digest& a, const Digest& b) {
    Digest out;
    for (std::size_t i = 0; i < kDigestSize; ++i) {
        out.octets[i] = a.octets[i] ^ b.octets[i];
    }
    return out;
}

namespace {

// Big-endian ripple add; operands may differ in length.
Bytes be_add(const Bytes& a, const Bytes& b) {
    Bytes out(std::max(a.size(), b.size()) + 1, 0);
    unsigned carry = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        unsigned sum = carry;
        if (i < a.size()) sum += a[a.size() - 1 - i];
        if (i < b.size()) sum += b[b.size() - 1 - i];
        out[out.size() - 1 - i] = static_cast<Byte>(sum & 0xff);
        carry = sum >> 8;
    }
    return out;
}

}  // namespace

Bytes add_bytestrings(std::span<const Bytes> operands) {
    if (operands.size() < 2) {
        throw std::invalid_argument("add requires at least two operands");
    }
    for (const Bytes& op : operands) {
        if (op.empty()) {
            throw std::invalid_argument("add operand must be nonempty");
        }
    }
    Bytes acc = operands[0];
    for (std::size_t i = 1; i < operands.size(); ++i) {
        acc = be_add(acc, operands[i]);
    }
    std::size_t first = 0;
    while (first + 1 < acc.size() && acc[first] == 0) {
        ++first;
    }
    return Bytes(acc.begin() + static_cast<std::ptrdiff_t>(first), acc.end());
}

Bytes concat_bytes(ByteSpan a, ByteSpan b) {
    Bytes out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

OpCounters& OpCounters::operator+=(const OpCounters& o) {
    hash_count += o.hash_count;
    xor_count += o.xor_count;
    add_count += o.add_count;
    con_count += o.con_count;
    return *this;
}

}  // namespace enchain
