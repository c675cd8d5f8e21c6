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

#ifndef ENCHAIN_PROTOCOL_HPP
#define ENCHAIN_PROTOCOL_HPP

#include <array>
#include <optional>
#include <set>
#include <string>

#include "digest.hpp"
#include "plan.hpp"
#include "rng.hpp"
#include "runtime.hpp"
#include "verifier.hpp"

namespace enchain {

inline constexpr std::size_t kSessionKeySize = 32;
inline constexpr std::size_t kSignSecretKeySize = 64;  // Ed25519 secret key
inline constexpr std::size_t kVerifyKeySize = 32;      // Ed25519 public key
inline constexpr std::size_t kSignatureSize = 64;

/// Authenticated encryption of (D, request id, r) under the session key.
struct RequestEnvelope {
    Bytes ciphertext;
};

/// Authenticated encryption of (Result, hash_cloud, Sig).
struct ResponseEnvelope {
    Bytes ciphertext;
};

struct SessionKeys {
    std::array<Byte, kSessionKeySize> session_key{};
    std::array<Byte, kSignSecretKeySize> cloud_sign_key{};
    std::array<Byte, kVerifyKeySize> user_verify_key{};
};

/// Length-prefixed field encoding used inside both envelopes: each
/// field is a 4-octet big-endian length followed by the raw octets.
Bytes encode_fields(std::initializer_list<ByteSpan> fields);
std::vector<Bytes> decode_fields(ByteSpan encoded, std::size_t expected);  // Error{DecryptFailure}

/// XChaCha20-Poly1305 with the 24-octet nonce prepended to the sealed
/// box. Any single-octet modification fails authentication.
Bytes aead_seal(const std::array<Byte, kSessionKeySize>& key, ByteSpan plaintext,
                RandomSource& rng);
Bytes aead_open(const std::array<Byte, kSessionKeySize>& key, ByteSpan sealed);  // Error{DecryptFailure}

/// Ed25519 detached signature over exactly the given octets.
std::array<Byte, kSignatureSize> sign_detached(const std::array<Byte, kSignSecretKeySize>& sk,
                                               ByteSpan message);
bool signature_valid(const std::array<Byte, kVerifyKeySize>& vk, ByteSpan message,
                     ByteSpan signature);

struct CloudOptions {
    const ChannelTap* tap = nullptr;
    /// Plan the untrusted dispatcher actually schedules; the honest
    /// plan from the registry when absent.
    const ExecutionPlan* plan_override = nullptr;
    bool symbolic = false;
    HashKind hash_kind = HashKind::Sha256;
};

/// One user/cloud conversation. Attestation is simulated: establishing
/// a session hands both endpoints the session key and the signature
/// keypair, all drawn from the given randomness source.
class Session {
  public:
    /// The refuse flag injects an attestation failure for tests.
    static Session establish(RandomSource& rng, bool refuse = false);

    const SessionKeys& keys() const { return keys_; }

    struct BuiltRequest {
        RequestEnvelope envelope;
        Nonce nonce;
    };
    /// Phase 2: fresh nonce, encode (data, request id, r), seal.
    BuiltRequest build_request(ByteSpan data, const std::string& request_id,
                               const PlanRegistry& plans);

    struct CloudOutcome {
        ResponseEnvelope envelope;
        ExecutionResult exec;
        std::string request_id;
        Nonce nonce;
    };
    /// Phase 3: decrypt, resolve the plan, execute, sign
    /// Result||hash_cloud, seal the response.
    CloudOutcome cloud_handle(const RequestEnvelope& request, const PlanRegistry& plans,
                              const FunctionRegistry& fns, const CloudOptions& opts = {});

    struct ReceiveOutcome {
        Verdict verdict;
        Bytes result;
        Digest hash_user;
        Digest hash_cloud;
        UserHashResult user;
        bool sig_ok = false;
    };
    /// Phase 4: decrypt, check the signature, recompute hash_user from
    /// (plan, r) and compare.
    ReceiveOutcome user_receive(const ExecutionPlan& plan, const Nonce& r,
                                const ResponseEnvelope& response,
                                const UserHashOptions& opts = {});

    std::size_t seen_nonce_count() const { return seen_nonces_.size(); }

  private:
    explicit Session(RandomSource& rng);

    SessionKeys keys_;
    std::set<Nonce> seen_nonces_;
    RandomSource* rng_;
};

}  // namespace enchain

#endif  // ENCHAIN_PROTOCOL_HPP
