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

#include "rng.hpp"

#include <sodium.h>

#include <cstring>
#include <optional>
#include <stdexcept>

namespace enchain {

Bytes RandomSource::bytes(std::size_t n) {
    Bytes out(n);
    fill(std::span<Byte>(out.data(), out.size()));
    return out;
}

Nonce RandomSource::nonce() {
    Nonce n;
    fill(std::span<Byte>(n.octets.data(), n.octets.size()));
    return n;
}

Tag RandomSource::tag() {
    Tag t;
    fill(std::span<Byte>(t.octets.data(), t.octets.size()));
    return t;
}

std::uint64_t RandomSource::next_u64() {
    Byte buf[8];
    fill(std::span<Byte>(buf, 8));
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v = (v << 8) | buf[i];
    }
    return v;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("below(0)");
    }
    // Rejection sampling keeps the distribution uniform.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

SystemRandom::SystemRandom() {
    if (sodium_init() < 0) {
        throw std::runtime_error("libsodium initialization failed");
    }
}

void SystemRandom::fill(std::span<Byte> out) {
    randombytes_buf(out.data(), out.size());
}

SeededRandom::SeededRandom(std::uint64_t seed) : seed_(seed) {}

void SeededRandom::refill() {
    Byte block_input[16];
    for (int i = 0; i < 8; ++i) {
        block_input[i] = static_cast<Byte>(seed_ >> (56 - 8 * i));
        block_input[8 + i] = static_cast<Byte>(counter_ >> (56 - 8 * i));
    }
    block_ = hash_bytes(ByteSpan(block_input, 16), HashKind::Sha256);
    ++counter_;
    used_ = 0;
}

void SeededRandom::fill(std::span<Byte> out) {
    std::size_t written = 0;
    while (written < out.size()) {
        if (used_ == kDigestSize) {
            refill();
        }
        std::size_t take = std::min(out.size() - written, kDigestSize - used_);
        std::memcpy(out.data() + written, block_.octets.data() + used_, take);
        used_ += take;
        written += take;
    }
}

std::unique_ptr<RandomSource> make_random_source(std::optional<std::uint64_t> seed) {
    if (seed.has_value()) {
        return std::make_unique<SeededRandom>(*seed);
    }
    return std::make_unique<SystemRandom>();
}

}  // namespace enchain
