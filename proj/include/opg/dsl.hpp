/*
 * Copyright 2026 The opg-solve Authors
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

#pragma once

// Text format for open games and diagrams.
//
//   # comment
//   opg C : (1,1) -> (1,0) {
//     maxprio 4;            # optional; defaults to the least even M >= 2 covering the edges
//     node a E;             # E = Exists, A = Forall
//     in.r1 -> a @ 0;
//     a -> out.r1 @ 1;
//   }
//   diagram d = C ; (C + C);
//
// Interface nodes are implicit: in.r<k>, in.l<k>, out.r<k>, out.l<k>, with
// counts taken from the type (rightward entrances, leftward exits) ->
// (rightward exits, leftward entrances). Exit self-loops are added
// automatically; edges out of exits are rejected. In terms `+` binds
// tighter than `;`, both associate to the left.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opg/diagram.hpp"
#include "opg/open_game.hpp"

namespace opg {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
          column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// Error tied to a named definition rather than a source position.
class SemanticError : public std::runtime_error {
public:
    SemanticError(const std::string& definition, const std::string& msg)
        : std::runtime_error(definition + ": " + msg), definition_(definition)
    {
    }
    const std::string& definition() const { return definition_; }

private:
    std::string definition_;
};

struct NodeDecl {
    std::string name;
    Player owner = Player::Exists;
    bool operator==(const NodeDecl&) const = default;
};

struct EdgeDecl {
    std::string source, target;
    Priority priority = 0;
    bool operator==(const EdgeDecl&) const = default;
};

struct OpgDef {
    std::string name;
    InterfaceType type;
    std::optional<Priority> maxprio;
    std::vector<NodeDecl> nodes;
    std::vector<EdgeDecl> edges;
    bool operator==(const OpgDef&) const = default;
};

struct TermAst {
    enum class Kind { Name, Seq, Sum };
    Kind kind = Kind::Name;
    std::string name;
    std::vector<TermAst> children; // two for Seq and Sum

    static TermAst ref(std::string n) { return TermAst{Kind::Name, std::move(n), {}}; }
    static TermAst seq(TermAst l, TermAst r) { return TermAst{Kind::Seq, {}, {std::move(l), std::move(r)}}; }
    static TermAst sum(TermAst l, TermAst r) { return TermAst{Kind::Sum, {}, {std::move(l), std::move(r)}}; }

    bool operator==(const TermAst&) const = default;
};

struct DiagramDef {
    std::string name;
    TermAst term;
    bool operator==(const DiagramDef&) const = default;
};

struct SourceFile {
    std::vector<OpgDef> opgs;
    std::vector<DiagramDef> diagrams;

    const OpgDef* find_opg(std::string_view name) const
    {
        for (const auto& d : opgs)
            if (d.name == name)
                return &d;
        return nullptr;
    }
    const DiagramDef* find_diagram(std::string_view name) const
    {
        for (const auto& d : diagrams)
            if (d.name == name)
                return &d;
        return nullptr;
    }

    bool operator==(const SourceFile&) const = default;
};

namespace detail {

struct Token {
    enum class Kind { Ident, Nat, Punct, End };
    Kind kind;
    std::string text;
    int line, column;
};

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t k = 0;
    auto advance = [&] {
        if (src[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++k;
    };
    while (k < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[k]);
        if (std::isspace(c)) {
            advance();
            continue;
        }
        if (c == '#') {
            while (k < src.size() && src[k] != '\n')
                advance();
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(c) || c == '_') {
            std::string s;
            while (k < src.size() && (std::isalnum(static_cast<unsigned char>(src[k])) || src[k] == '_')) {
                s += src[k];
                advance();
            }
            out.push_back({Token::Kind::Ident, s, tl, tc});
        } else if (std::isdigit(c)) {
            std::string s;
            while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                s += src[k];
                advance();
            }
            if (s.size() > 9)
                throw ParseError("number too large: " + s, tl, tc);
            out.push_back({Token::Kind::Nat, s, tl, tc});
        } else if (c == '-' && k + 1 < src.size() && src[k + 1] == '>') {
            advance();
            advance();
            out.push_back({Token::Kind::Punct, "->", tl, tc});
        } else if (std::string_view(":(),{};@=+.").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(c)), tl, tc});
            advance();
        } else {
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", tl, tc);
        }
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

inline bool is_keyword(std::string_view s)
{
    return s == "opg" || s == "diagram" || s == "node" || s == "maxprio" || s == "in" || s == "out";
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    SourceFile file()
    {
        SourceFile f;
        std::set<std::string> names;
        while (peek().kind != Token::Kind::End) {
            const Token& t = peek();
            if (t.kind == Token::Kind::Ident && t.text == "opg") {
                f.opgs.push_back(opg());
                claim(names, f.opgs.back().name, t);
            } else if (t.kind == Token::Kind::Ident && t.text == "diagram") {
                f.diagrams.push_back(diagram());
                claim(names, f.diagrams.back().name, t);
            } else {
                fail("expected 'opg' or 'diagram'", t);
            }
        }
        return f;
    }

private:
    [[noreturn]] static void fail(const std::string& msg, const Token& t)
    {
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + ", got " + got, t.line, t.column);
    }

    static void claim(std::set<std::string>& names, const std::string& n, const Token& at)
    {
        if (!names.insert(n).second)
            throw ParseError("duplicate definition '" + n + "'", at.line, at.column);
    }

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    bool at_punct(std::string_view p, std::size_t ahead = 0) const
    {
        return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
    }

    void expect(std::string_view p)
    {
        if (!at_punct(p))
            fail("expected '" + std::string(p) + "'", peek());
        take();
    }

    void expect_keyword(std::string_view kw)
    {
        if (peek().kind != Token::Kind::Ident || peek().text != kw)
            fail("expected '" + std::string(kw) + "'", peek());
        take();
    }

    std::string name()
    {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident || is_keyword(t.text))
            fail("expected a name", t);
        return take().text;
    }

    std::uint32_t nat()
    {
        if (peek().kind != Token::Kind::Nat)
            fail("expected a number", peek());
        return static_cast<std::uint32_t>(std::stoul(take().text));
    }

    OpgDef opg()
    {
        expect_keyword("opg");
        OpgDef d;
        d.name = name();
        expect(":");
        expect("(");
        d.type.dom_r = nat();
        expect(",");
        d.type.dom_l = nat();
        expect(")");
        expect("->");
        expect("(");
        d.type.cod_r = nat();
        expect(",");
        d.type.cod_l = nat();
        expect(")");
        expect("{");
        if (peek().kind == Token::Kind::Ident && peek().text == "maxprio") {
            take();
            d.maxprio = nat();
            expect(";");
        }
        while (peek().kind == Token::Kind::Ident && peek().text == "node") {
            take();
            NodeDecl n;
            n.name = name();
            const Token& o = peek();
            if (o.kind != Token::Kind::Ident || (o.text != "E" && o.text != "A"))
                fail("expected owner 'E' or 'A'", o);
            n.owner = take().text == "E" ? Player::Exists : Player::Forall;
            expect(";");
            d.nodes.push_back(std::move(n));
        }
        while (!at_punct("}")) {
            EdgeDecl e;
            const Token& start = peek();
            e.source = endpoint();
            expect("->");
            e.target = endpoint();
            expect("@");
            e.priority = nat();
            expect(";");
            if (e.source.rfind("out.", 0) == 0)
                throw ParseError("exit must be a sink: edge " + e.source + " -> " + e.target, start.line,
                                 start.column);
            d.edges.push_back(std::move(e));
        }
        expect("}");
        return d;
    }

    std::string endpoint()
    {
        const Token& t = peek();
        if (t.kind == Token::Kind::Ident && (t.text == "in" || t.text == "out")) {
            std::string head = take().text;
            expect(".");
            const Token& r = peek();
            bool ok = r.kind == Token::Kind::Ident && r.text.size() >= 2 && (r.text[0] == 'r' || r.text[0] == 'l');
            for (std::size_t k = 1; ok && k < r.text.size(); ++k)
                ok = std::isdigit(static_cast<unsigned char>(r.text[k]));
            // "r01"-style indices would not round-trip.
            ok = ok && r.text[1] != '0';
            if (!ok)
                fail("expected r<k> or l<k> after '" + head + ".'", r);
            return head + "." + take().text;
        }
        return name();
    }

    DiagramDef diagram()
    {
        expect_keyword("diagram");
        DiagramDef d;
        d.name = name();
        expect("=");
        d.term = seq_term();
        expect(";");
        return d;
    }

    // A ';' continues the term only when a term follows; otherwise it ends
    // the definition.
    bool seq_continues() const
    {
        if (!at_punct(";"))
            return false;
        const Token& n = peek(1);
        return (n.kind == Token::Kind::Ident && !is_keyword(n.text)) || at_punct("(", 1);
    }

    TermAst seq_term()
    {
        TermAst t = sum_term();
        while (seq_continues()) {
            take();
            t = TermAst::seq(std::move(t), sum_term());
        }
        return t;
    }

    TermAst sum_term()
    {
        TermAst t = primary();
        while (at_punct("+")) {
            take();
            t = TermAst::sum(std::move(t), primary());
        }
        return t;
    }

    TermAst primary()
    {
        if (at_punct("(")) {
            take();
            TermAst t = seq_term();
            expect(")");
            return t;
        }
        return TermAst::ref(name());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline void print_term(std::string& out, const TermAst& t, int context)
{
    // context: 0 = anywhere, 1 = operand of '+' (left), 2 = right operand of '+', 3 = right operand of ';'
    switch (t.kind) {
    case TermAst::Kind::Name: out += t.name; return;
    case TermAst::Kind::Seq: {
        bool paren = context != 0;
        if (paren)
            out += "(";
        print_term(out, t.children[0], 0);
        out += " ; ";
        print_term(out, t.children[1], 3);
        if (paren)
            out += ")";
        return;
    }
    case TermAst::Kind::Sum: {
        bool paren = context == 2;
        if (paren)
            out += "(";
        print_term(out, t.children[0], 1);
        out += " + ";
        print_term(out, t.children[1], 2);
        if (paren)
            out += ")";
        return;
    }
    }
}

} // namespace detail

inline SourceFile parse_source(std::string_view text) { return detail::Parser(text).file(); }

/// Pretty-printer; parse_source(print_source(f)) == f.
inline std::string print_source(const SourceFile& f)
{
    std::string out;
    for (const auto& d : f.opgs) {
        out += "opg " + d.name + " : (" + std::to_string(d.type.dom_r) + "," + std::to_string(d.type.dom_l) + ") -> (" +
               std::to_string(d.type.cod_r) + "," + std::to_string(d.type.cod_l) + ") {\n";
        if (d.maxprio)
            out += "  maxprio " + std::to_string(*d.maxprio) + ";\n";
        for (const auto& n : d.nodes)
            out += "  node " + n.name + (n.owner == Player::Exists ? " E;\n" : " A;\n");
        for (const auto& e : d.edges)
            out += "  " + e.source + " -> " + e.target + " @ " + std::to_string(e.priority) + ";\n";
        out += "}\n\n";
    }
    for (const auto& d : f.diagrams) {
        out += "diagram " + d.name + " = ";
        detail::print_term(out, d.term, 0);
        out += ";\n";
    }
    return out;
}

/// Builds the game of one definition. Node ids: interface nodes in the order
/// in.r*, in.l*, out.r*, out.l*, then declared nodes.
inline OpenParityGame build_opg(const OpgDef& d)
{
    std::vector<Player> owners;
    std::vector<std::string> names;
    std::map<std::string, NodeId> ids;
    Interface io;
    auto add = [&](const std::string& n, Player p) {
        if (!ids.emplace(n, static_cast<NodeId>(owners.size())).second)
            throw SemanticError(d.name, "duplicate node '" + n + "'");
        owners.push_back(p);
        names.push_back(n);
        return ids[n];
    };
    auto add_iface = [&](std::vector<NodeId>& list, std::uint32_t count, const std::string& prefix) {
        for (std::uint32_t k = 1; k <= count; ++k)
            list.push_back(add(prefix + std::to_string(k), Player::Exists));
    };
    add_iface(io.in_r, d.type.dom_r, "in.r");
    add_iface(io.in_l, d.type.cod_l, "in.l");
    add_iface(io.out_r, d.type.cod_r, "out.r");
    add_iface(io.out_l, d.type.dom_l, "out.l");
    for (const auto& n : d.nodes)
        add(n.name, n.owner);

    auto lookup = [&](const std::string& n) {
        auto it = ids.find(n);
        if (it == ids.end())
            throw SemanticError(d.name, "unknown node '" + n + "'");
        return it->second;
    };

    Priority used = 0;
    std::vector<Edge> edges;
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<char> has_succ(owners.size(), 0);
    for (const auto& e : d.edges) {
        NodeId s = lookup(e.source);
        NodeId t = lookup(e.target);
        if (s >= io.in_r.size() + io.in_l.size() && s < io.in_r.size() + io.in_l.size() + io.out_r.size() + io.out_l.size())
            throw SemanticError(d.name, "exit must be a sink: edge " + e.source + " -> " + e.target);
        if (!seen.emplace(s, t).second)
            throw SemanticError(d.name, "duplicate edge " + e.source + " -> " + e.target);
        used = std::max(used, e.priority);
        has_succ[s] = 1;
        edges.push_back({s, t, e.priority});
    }
    for (NodeId o : io.out_r)
        edges.push_back({o, o, 0}), has_succ[o] = 1;
    for (NodeId o : io.out_l)
        edges.push_back({o, o, 0}), has_succ[o] = 1;
    for (NodeId v = 0; v < owners.size(); ++v)
        if (!has_succ[v])
            throw SemanticError(d.name, "node '" + names[v] + "' has no successor");

    Priority m = 0;
    if (d.maxprio) {
        m = *d.maxprio;
        if (m < 2 || m % 2 != 0)
            throw SemanticError(d.name, "maxprio must be even and at least 2, got " + std::to_string(m));
        if (used > m)
            throw SemanticError(d.name, "priority " + std::to_string(used) + " exceeds maxprio " + std::to_string(m));
    } else {
        m = PrioritySpace::covering(used).max();
    }
    return OpenParityGame(ParityGame(PrioritySpace(m), std::move(owners), std::move(edges)), std::move(io),
                          std::move(names));
}

namespace detail {

inline void collect_atoms(const TermAst& t, std::set<std::string>& out)
{
    if (t.kind == TermAst::Kind::Name)
        out.insert(t.name);
    for (const auto& c : t.children)
        collect_atoms(c, out);
}

inline DiagramPtr lower(const TermAst& t, const std::map<std::string, std::shared_ptr<const OpenParityGame>>& atoms)
{
    switch (t.kind) {
    case TermAst::Kind::Name: return DiagramTerm::atom(t.name, atoms.at(t.name));
    case TermAst::Kind::Seq: return DiagramTerm::seq(lower(t.children[0], atoms), lower(t.children[1], atoms));
    case TermAst::Kind::Sum: return DiagramTerm::sum(lower(t.children[0], atoms), lower(t.children[1], atoms));
    }
    throw std::logic_error("unreachable");
}

} // namespace detail

/// Builds and type-checks a named diagram. All its atoms are lifted to one
/// shared priority space, the largest among them.
inline DiagramPtr build_diagram(const SourceFile& f, std::string_view name)
{
    const DiagramDef* d = f.find_diagram(name);
    if (!d)
        throw SemanticError(std::string(name), "no such diagram");
    std::set<std::string> used;
    detail::collect_atoms(d->term, used);
    std::map<std::string, OpenParityGame> games;
    Priority m = 2;
    for (const auto& n : used) {
        const OpgDef* def = f.find_opg(n);
        if (!def)
            throw SemanticError(d->name, "unknown open game '" + n + "'");
        auto g = build_opg(*def);
        m = std::max(m, g.space().max());
        games.emplace(n, std::move(g));
    }
    std::map<std::string, std::shared_ptr<const OpenParityGame>> atoms;
    for (auto& [n, g] : games)
        atoms.emplace(n, std::make_shared<const OpenParityGame>(g.with_space(PrioritySpace(m))));
    DiagramPtr term = detail::lower(d->term, atoms);
    try {
        type_of(*term);
    } catch (const TypeError& e) {
        throw SemanticError(d->name, e.what());
    }
    return term;
}

/// Parses, then builds every open game and type-checks every diagram.
inline SourceFile parse_and_check(std::string_view text)
{
    SourceFile f = parse_source(text);
    for (const auto& d : f.opgs)
        build_opg(d);
    for (const auto& d : f.diagrams)
        build_diagram(f, d.name);
    return f;
}

} // namespace opg
