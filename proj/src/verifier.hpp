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

#ifndef ENCHAIN_VERIFIER_HPP
#define ENCHAIN_VERIFIER_HPP

#include <optional>
#include <string>

#include "digest.hpp"
#include "plan.hpp"
#include "runtime.hpp"

namespace enchain {

struct UserHashOptions {
    bool symbolic = false;
    HashKind hash_kind = HashKind::Sha256;
};

struct UserHashResult {
    Digest hash_user;
    ExecutionTrace trace;
    OpCounters counters;
};

/// Recomputes the execution-plan hash from (plan, r) alone, walking the
/// plan in the same deterministic order as the cloud but with no result
/// terms: cross-enclave values contribute hash(h) directly, so the
/// result hashes the cloud folds in cancel pairwise on honest runs.
UserHashResult compute_user_hash(const ExecutionPlan& plan, const Nonce& r,
                                 const UserHashOptions& opts = {});

enum class RejectReason { BadSignature, HashMismatch };

const char* reject_reason_name(RejectReason reason);

struct Verdict {
    bool accepted = false;
    std::optional<RejectReason> reason;

    static Verdict accept() { return Verdict{true, std::nullopt}; }
    static Verdict reject(RejectReason r) { return Verdict{false, r}; }
    std::string to_string() const;
};

/// Final acceptance decision: the signature must hold and the locally
/// recomputed digest must equal the received one.
Verdict verify(const Digest& expected, const Digest& received_hash, ByteSpan received_result,
               bool sig_ok);

}  // namespace enchain

#endif  // ENCHAIN_VERIFIER_HPP
