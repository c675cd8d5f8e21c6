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

#ifndef ENCHAIN_RNG_HPP
#define ENCHAIN_RNG_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>

#include "bytes.hpp"
#include "digest.hpp"

namespace enchain {

/// Byte source behind all randomness (nonces, keys, generated attacks).
/// Scenario runs use the seeded variant so reports are reproducible.
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<Byte> out) = 0;

    Bytes bytes(std::size_t n);
    Nonce nonce();
    Tag tag();
    std::uint64_t next_u64();
    /// Uniform value in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);
};

/// Operating-system entropy.
class SystemRandom final : public RandomSource {
  public:
    SystemRandom();
    void fill(std::span<Byte> out) override;
};

/// Counter-mode SHA-256 expansion of a 64-bit seed. Identical seed gives
/// an identical byte stream on every platform.
class SeededRandom final : public RandomSource {
  public:
    explicit SeededRandom(std::uint64_t seed);
    void fill(std::span<Byte> out) override;

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    Digest block_{};
    std::size_t used_ = kDigestSize;
};

std::unique_ptr<RandomSource> make_random_source(std::optional<std::uint64_t> seed);

}  // namespace enchain

#endif  // ENCHAIN_RNG_HPP
