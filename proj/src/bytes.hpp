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

#ifndef ENCHAIN_BYTES_HPP
#define ENCHAIN_BYTES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enchain {

using Byte = std::uint8_t;
using Bytes = std::vector<Byte>;
using ByteSpan = std::span<const Byte>;

/// Lowercase hex, no separators. All byte strings in logs, traces and
/// scenario files use this encoding.
std::string to_hex(ByteSpan data);

/// Inverse of to_hex. Throws std::invalid_argument on odd length or
/// non-hex characters.
Bytes from_hex(std::string_view hex);

/// UTF-8 text copied into a byte string.
Bytes to_bytes(std::string_view text);

inline ByteSpan as_span(const Bytes& b) { return ByteSpan(b.data(), b.size()); }

}  // namespace enchain

#endif  // ENCHAIN_BYTES_HPP
