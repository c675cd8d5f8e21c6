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

#include "protocol.hpp"

#include <sodium.h>

#include <cstring>

namespace enchain {

namespace {

void ensure_sodium() {
    if (sodium_init() < 0) {
        throw std::runtime_error("libsodium initialization failed");
    }
}

void put_u32be(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<Byte>(v >> 24));
    out.push_back(static_cast<Byte>(v >> 16));
    out.push_back(static_cast<Byte>(v >> 8));
    out.push_back(static_cast<Byte>(v));
}

}  // namespace

Bytes encode_fields(std::initializer_list<ByteSpan> fields) {
    Bytes out;
    for (ByteSpan f : fields) {
        put_u32be(out, static_cast<std::uint32_t>(f.size()));
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

std::vector<Bytes> decode_fields(ByteSpan encoded, std::size_t expected) {
    std::vector<Bytes> fields;
    std::size_t pos = 0;
    while (pos < encoded.size()) {
        if (encoded.size() - pos < 4) {
            throw Error(Errc::DecryptFailure, "truncated field length");
        }
        std::uint32_t len = (static_cast<std::uint32_t>(encoded[pos]) << 24) |
                            (static_cast<std::uint32_t>(encoded[pos + 1]) << 16) |
                            (static_cast<std::uint32_t>(encoded[pos + 2]) << 8) |
                            static_cast<std::uint32_t>(encoded[pos + 3]);
        pos += 4;
        if (encoded.size() - pos < len) {
            throw Error(Errc::DecryptFailure, "truncated field body");
        }
        fields.emplace_back(encoded.begin() + static_cast<std::ptrdiff_t>(pos),
                            encoded.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
    }
    if (fields.size() != expected) {
        throw Error(Errc::DecryptFailure,
                    "expected " + std::to_string(expected) + " fields, got " +
                        std::to_string(fields.size()));
    }
    return fields;
}

Bytes aead_seal(const std::array<Byte, kSessionKeySize>& key, ByteSpan plaintext,
                RandomSource& rng) {
    ensure_sodium();
    Bytes out(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES);
    rng.fill(std::span<Byte>(out.data(), out.size()));
    out.resize(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES + plaintext.size() +
               crypto_aead_xchacha20poly1305_ietf_ABYTES);
    unsigned long long clen = 0;
    static const Byte kEmpty = 0;
    const Byte* msg = plaintext.empty() ? &kEmpty : plaintext.data();
    crypto_aead_xchacha20poly1305_ietf_encrypt(
        out.data() + crypto_aead_xchacha20poly1305_ietf_NPUBBYTES, &clen, msg, plaintext.size(),
        nullptr, 0, nullptr, out.data(), key.data());
    out.resize(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES + clen);
    return out;
}

Bytes aead_open(const std::array<Byte, kSessionKeySize>& key, ByteSpan sealed) {
    ensure_sodium();
    constexpr std::size_t overhead = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES +
                                     crypto_aead_xchacha20poly1305_ietf_ABYTES;
    if (sealed.size() < overhead) {
        throw Error(Errc::DecryptFailure, "ciphertext too short");
    }
    Bytes plain(sealed.size() - overhead + 1);
    unsigned long long plen = 0;
    int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
        plain.data(), &plen, nullptr,
        sealed.data() + crypto_aead_xchacha20poly1305_ietf_NPUBBYTES,
        sealed.size() - crypto_aead_xchacha20poly1305_ietf_NPUBBYTES, nullptr, 0, sealed.data(),
        key.data());
    if (rc != 0) {
        throw Error(Errc::DecryptFailure, "authentication tag mismatch");
    }
    plain.resize(plen);
    return plain;
}

std::array<Byte, kSignatureSize> sign_detached(const std::array<Byte, kSignSecretKeySize>& sk,
                                               ByteSpan message) {
    ensure_sodium();
    std::array<Byte, kSignatureSize> sig{};
    static const Byte kEmpty = 0;
    const Byte* msg = message.empty() ? &kEmpty : message.data();
    crypto_sign_detached(sig.data(), nullptr, msg, message.size(), sk.data());
    return sig;
}

bool signature_valid(const std::array<Byte, kVerifyKeySize>& vk, ByteSpan message,
                     ByteSpan signature) {
    ensure_sodium();
    if (signature.size() != kSignatureSize) {
        return false;
    }
    static const Byte kEmpty = 0;
    const Byte* msg = message.empty() ? &kEmpty : message.data();
    return crypto_sign_verify_detached(signature.data(), msg, message.size(), vk.data()) == 0;
}

Session::Session(RandomSource& rng) : rng_(&rng) {
    ensure_sodium();
    rng.fill(std::span<Byte>(keys_.session_key.data(), keys_.session_key.size()));
    std::array<Byte, crypto_sign_SEEDBYTES> seed{};
    rng.fill(std::span<Byte>(seed.data(), seed.size()));
    crypto_sign_seed_keypair(keys_.user_verify_key.data(), keys_.cloud_sign_key.data(),
                             seed.data());
}

Session Session::establish(RandomSource& rng, bool refuse) {
    if (refuse) {
        throw Error(Errc::AttestationRefused, "simulated attestation failure");
    }
    return Session(rng);
}

Session::BuiltRequest Session::build_request(ByteSpan data, const std::string& request_id,
                                             const PlanRegistry& plans) {
    if (!plans.contains(request_id)) {
        throw Error(Errc::UnknownRequest, request_id);
    }
    Nonce r = rng_->nonce();
    while (!seen_nonces_.insert(r).second) {
        r = rng_->nonce();
    }
    Bytes plain = encode_fields({data, as_span(to_bytes(request_id)), r.span()});
    return BuiltRequest{RequestEnvelope{aead_seal(keys_.session_key, as_span(plain), *rng_)}, r};
}

Session::CloudOutcome Session::cloud_handle(const RequestEnvelope& request,
                                            const PlanRegistry& plans,
                                            const FunctionRegistry& fns,
                                            const CloudOptions& opts) {
    Bytes plain = aead_open(keys_.session_key, as_span(request.ciphertext));
    std::vector<Bytes> fields = decode_fields(as_span(plain), 3);
    const Bytes& data = fields[0];
    const std::string request_id(fields[1].begin(), fields[1].end());
    if (fields[2].size() != kNonceSize) {
        throw Error(Errc::DecryptFailure, "malformed nonce field");
    }
    const Nonce r = Nonce::from_bytes(as_span(fields[2]));

    const ExecutionPlan& honest = plans.resolve(request_id);
    const ExecutionPlan& scheduled = opts.plan_override ? *opts.plan_override : honest;

    ExecOptions exec_opts;
    exec_opts.symbolic = opts.symbolic;
    exec_opts.hash_kind = opts.hash_kind;
    exec_opts.tap = opts.tap;
    ExecutionResult exec = execute_plan(scheduled, fns, as_span(data), r, exec_opts);

    Bytes signed_octets = concat_bytes(as_span(exec.result), exec.hash_cloud.span());
    std::array<Byte, kSignatureSize> sig = sign_detached(keys_.cloud_sign_key,
                                                         as_span(signed_octets));
    Bytes response_plain = encode_fields(
        {as_span(exec.result), exec.hash_cloud.span(), ByteSpan(sig.data(), sig.size())});
    ResponseEnvelope envelope{aead_seal(keys_.session_key, as_span(response_plain), *rng_)};
    return CloudOutcome{std::move(envelope), std::move(exec), request_id, r};
}

Session::ReceiveOutcome Session::user_receive(const ExecutionPlan& plan, const Nonce& r,
                                              const ResponseEnvelope& response,
                                              const UserHashOptions& opts) {
    Bytes plain = aead_open(keys_.session_key, as_span(response.ciphertext));
    std::vector<Bytes> fields = decode_fields(as_span(plain), 3);
    const Bytes& result = fields[0];
    if (fields[1].size() != kDigestSize) {
        throw Error(Errc::DecryptFailure, "malformed hash field");
    }
    const Digest hash_cloud = Digest::from_bytes(as_span(fields[1]));
    const Bytes& sig = fields[2];

    Bytes signed_octets = concat_bytes(as_span(result), hash_cloud.span());
    bool sig_ok = signature_valid(keys_.user_verify_key, as_span(signed_octets), as_span(sig));

    ReceiveOutcome out;
    out.user = compute_user_hash(plan, r, opts);
    out.hash_user = out.user.hash_user;
    out.hash_cloud = hash_cloud;
    out.sig_ok = sig_ok;
    out.verdict = verify(out.hash_user, hash_cloud, as_span(result), sig_ok);
    if (out.verdict.accepted) {
        out.result = result;
    }
    return out;
}

}  // namespace enchain
