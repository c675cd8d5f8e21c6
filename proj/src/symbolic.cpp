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

#include "symbolic.hpp"

#include <utility>

namespace enchain::sym {

ExprPtr symbol(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Symbol;
    e->symbol = std::move(name);
    return e;
}

ExprPtr hashed(ExprPtr inner) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Hash;
    e->children.push_back(std::move(inner));
    return e;
}

ExprPtr concat(ExprPtr left, ExprPtr right) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Concat;
    e->children.push_back(std::move(left));
    e->children.push_back(std::move(right));
    return e;
}

ExprPtr add(std::vector<ExprPtr> operands) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Add;
    e->children = std::move(operands);
    return e;
}

ExprPtr xored(ExprPtr left, ExprPtr right) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Xor;
    auto absorb = [&e](ExprPtr operand) {
        if (operand->kind == Expr::Kind::Xor) {
            for (const ExprPtr& c : operand->children) e->children.push_back(c);
        } else {
            e->children.push_back(std::move(operand));
        }
    };
    absorb(std::move(left));
    absorb(std::move(right));
    return e;
}

namespace {

// A chain of concats whose leaves are all symbols, e.g. r||tag_1||tag_2.
bool symbol_chain(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Symbol) return true;
    if (e->kind != Expr::Kind::Concat) return false;
    for (const ExprPtr& c : e->children) {
        if (!symbol_chain(c)) return false;
    }
    return true;
}

std::string render_concat_operand(const ExprPtr& e);
std::string render_xor_operand(const ExprPtr& e);

std::string render_bare(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Symbol:
            return e->symbol;
        case Expr::Kind::Hash:
            return "hash(" + render_bare(e->children[0]) + ")";
        case Expr::Kind::Concat:
            return render_concat_operand(e->children[0]) + "||" +
                   render_concat_operand(e->children[1]);
        case Expr::Kind::Add: {
            std::string out;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += " + ";
                const ExprPtr& c = e->children[i];
                if (c->kind == Expr::Kind::Symbol) {
                    out += render_bare(c);
                } else {
                    out += "(" + render_bare(c) + ")";
                }
            }
            return out;
        }
        case Expr::Kind::Xor: {
            std::string out;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += " ⊕ ";
                out += render_xor_operand(e->children[i]);
            }
            return out;
        }
    }
    return {};
}

std::string render_concat_operand(const ExprPtr& e) {
    if (symbol_chain(e)) {
        return render_bare(e);
    }
    return "(" + render_bare(e) + ")";
}

std::string render_xor_operand(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Symbol || e->kind == Expr::Kind::Hash) {
        return render_bare(e);
    }
    return "(" + render_bare(e) + ")";
}

}  // namespace

std::string render(const ExprPtr& expr) { return render_bare(expr); }

}  // namespace enchain::sym
