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

#ifndef ENCHAIN_SYMBOLIC_HPP
#define ENCHAIN_SYMBOLIC_HPP

#include <memory>
#include <string>
#include <vector>

namespace enchain::sym {

/// Immutable expression tree over the chain-value grammar. Traces keep
/// one of these per node so the final hash formula can be printed and
/// string-compared.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Symbol, Hash, Concat, Add, Xor };

    Kind kind;
    std::string symbol;             // Kind::Symbol only
    std::vector<ExprPtr> children;  // Concat: 2, Add: >=2, Xor: flattened n
};

ExprPtr symbol(std::string name);
ExprPtr hashed(ExprPtr inner);
ExprPtr concat(ExprPtr left, ExprPtr right);
ExprPtr add(std::vector<ExprPtr> operands);
/// XOR chains are associative and rendered flat, so nested xors merge
/// into one operand list.
ExprPtr xored(ExprPtr left, ExprPtr right);

/// Renders with the literal tokens `hash(`, `||`, `+`, `⊕`. Concat
/// operands that are plain symbol chains print without parentheses;
/// every other compound operand is parenthesized.
std::string render(const ExprPtr& expr);

}  // namespace enchain::sym

#endif  // ENCHAIN_SYMBOLIC_HPP
