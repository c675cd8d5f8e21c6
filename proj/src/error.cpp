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

#include "error.hpp"

namespace enchain {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidPlan: return "InvalidPlan";
        case Errc::MutationInvalid: return "MutationInvalid";
        case Errc::UnknownEdge: return "UnknownEdge";
        case Errc::UnknownRequest: return "UnknownRequest";
        case Errc::DuplicateName: return "DuplicateName";
        case Errc::FunctionFailure: return "FunctionFailure";
        case Errc::MissingContribution: return "MissingContribution";
        case Errc::DecryptFailure: return "DecryptFailure";
        case Errc::NotCrossEnclave: return "NotCrossEnclave";
        case Errc::NoSuchMessage: return "NoSuchMessage";
        case Errc::AttackInvalid: return "AttackInvalid";
        case Errc::BaselineFailed: return "BaselineFailed";
        case Errc::WorkloadTooSmall: return "WorkloadTooSmall";
        case Errc::AttestationRefused: return "AttestationRefused";
        case Errc::IoError: return "IoError";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace enchain
