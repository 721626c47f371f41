#include "eqbases/term.hpp"

#include <algorithm>
#include <utility>

namespace eqbases {

std::string format_position(const Position& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
    }
    out += ']';
    return out;
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Signature::Signature(std::string name, std::vector<OpDecl> ops) : name_(std::move(name)) {
    for (auto& op : ops) add_op(std::move(op.name), op.arity);
}

bool Signature::declares(const std::string& op) const { return arity_of(op).has_value(); }

std::optional<std::size_t> Signature::arity_of(const std::string& op) const {
    for (const auto& decl : ops_)
        if (decl.name == op) return decl.arity;
    return std::nullopt;
}

void Signature::add_op(std::string op, std::size_t arity) {
    if (declares(op))
        throw std::invalid_argument("duplicate operator '" + op + "' in signature '" +
                                    name_ + "'");
    ops_.push_back(OpDecl{std::move(op), arity});
}

struct Term::Node {
    bool is_var;
    std::string symbol;
    std::vector<Term> args;
};

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::variable(std::string name) {
    return Term(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

Term Term::apply(std::string op, std::vector<Term> args) {
    return Term(std::make_shared<const Node>(Node{false, std::move(op), std::move(args)}));
}

bool Term::is_variable() const { return node_->is_var; }
const std::string& Term::symbol() const { return node_->symbol; }
const std::vector<Term>& Term::args() const { return node_->args; }

bool Term::operator==(const Term& rhs) const {
    if (node_ == rhs.node_) return true;
    if (node_->is_var != rhs.node_->is_var) return false;
    if (node_->symbol != rhs.node_->symbol) return false;
    if (node_->args.size() != rhs.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i)
        if (node_->args[i] != rhs.node_->args[i]) return false;
    return true;
}

bool Term::operator<(const Term& rhs) const {
    if (node_ == rhs.node_) return false;
    if (node_->is_var != rhs.node_->is_var) return node_->is_var;  // variables first
    if (node_->symbol != rhs.node_->symbol) return node_->symbol < rhs.node_->symbol;
    return std::lexicographical_compare(node_->args.begin(), node_->args.end(),
                                        rhs.node_->args.begin(), rhs.node_->args.end());
}

namespace {

struct Token {
    enum Kind { Ident, LParen, RParen, Comma, End } kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& tok) {
    switch (tok.kind) {
        case Token::Ident: return "'" + tok.text + "'";
        case Token::LParen: return "'('";
        case Token::RParen: return "')'";
        case Token::Comma: return "','";
        case Token::End: return "end of input";
    }
    return "?";
}

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_blanks();
        std::size_t line = line_, column = column_;
        if (pos_ >= text_.size()) return {Token::End, "", line, column};
        char c = text_[pos_];
        if (c == '(') { advance(); return {Token::LParen, "(", line, column}; }
        if (c == ')') { advance(); return {Token::RParen, ")", line, column}; }
        if (c == ',') { advance(); return {Token::Comma, ",", line, column}; }
        if (is_ident_start(c)) {
            std::string ident;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                ident += text_[pos_];
                advance();
            }
            return {Token::Ident, std::move(ident), line, column};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blanks() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class TermParser {
public:
    TermParser(const std::string& text, const Signature& sig) : lexer_(text), sig_(sig) {
        tok_ = lexer_.next();
    }

    Term parse_full() {
        Term t = parse();
        if (tok_.kind != Token::End)
            throw ParseError("unexpected " + describe(tok_) + " after term", tok_.line,
                             tok_.column);
        return t;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    Term parse() {
        if (tok_.kind != Token::Ident)
            throw ParseError("expected identifier, found " + describe(tok_), tok_.line,
                             tok_.column);
        Token head = tok_;
        advance();
        if (tok_.kind == Token::LParen) {
            advance();
            std::vector<Term> args;
            args.push_back(parse());
            while (tok_.kind == Token::Comma) {
                advance();
                args.push_back(parse());
            }
            if (tok_.kind != Token::RParen)
                throw ParseError("expected ')' or ',', found " + describe(tok_), tok_.line,
                                 tok_.column);
            advance();
            auto arity = sig_.arity_of(head.text);
            if (!arity)
                throw ParseError("unknown operator '" + head.text + "'", head.line,
                                 head.column);
            if (*arity != args.size())
                throw ArityError("operator '" + head.text + "' expects " +
                                     std::to_string(*arity) + " argument(s), got " +
                                     std::to_string(args.size()),
                                 head.line, head.column);
            return Term::apply(head.text, std::move(args));
        }
        auto arity = sig_.arity_of(head.text);
        if (!arity) return Term::variable(head.text);
        if (*arity != 0)
            throw ArityError("operator '" + head.text + "' expects " +
                                 std::to_string(*arity) + " argument(s), got 0",
                             head.line, head.column);
        return Term::apply(head.text, {});
    }

    Lexer lexer_;
    const Signature& sig_;
    Token tok_;
};

}  // namespace

Term parse_term(const std::string& text, const Signature& sig) {
    return TermParser(text, sig).parse_full();
}

namespace {

void format_into(const Term& t, std::string& out) {
    out += t.symbol();
    if (!t.is_variable() && !t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) out += ',';
            format_into(t.args()[i], out);
        }
        out += ')';
    }
}

}  // namespace

std::string format_term(const Term& t) {
    std::string out;
    format_into(t, out);
    return out;
}

Term substitute(const Term& t, const Substitution& s) {
    if (t.is_variable()) {
        auto it = s.find(t.symbol());
        return it == s.end() ? t : it->second;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
        args.push_back(substitute(a, s));
        if (args.back() != a) changed = true;
    }
    if (!changed) return t;
    return Term::apply(t.symbol(), std::move(args));
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
    if (pattern.is_variable()) {
        auto it = s.find(pattern.symbol());
        if (it != s.end()) return it->second == subject;
        s.emplace(pattern.symbol(), subject);
        return true;
    }
    if (subject.is_variable()) return false;
    if (pattern.symbol() != subject.symbol()) return false;
    if (pattern.args().size() != subject.args().size()) return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_into(pattern.args()[i], subject.args()[i], s)) return false;
    return true;
}

}  // namespace

std::optional<Substitution> match_term(const Term& pattern, const Term& subject,
                                       Substitution seed) {
    if (match_into(pattern, subject, seed)) return seed;
    return std::nullopt;
}

std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
    return match_term(pattern, subject, Substitution{});
}

Term subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::size_t idx : p) {
        if (idx >= cur->args().size())
            throw std::out_of_range("position " + format_position(p) + " not valid in " +
                                    format_term(t));
        cur = &cur->args()[idx];
    }
    return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& r) {
    if (depth == p.size()) return r;
    if (p[depth] >= t.args().size())
        throw std::out_of_range("position " + format_position(p) + " not valid in " +
                                format_term(t));
    std::vector<Term> args = t.args();
    args[p[depth]] = replace_rec(args[p[depth]], p, depth + 1, r);
    return Term::apply(t.symbol(), std::move(args));
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& r) {
    return replace_rec(t, p, 0, r);
}

namespace {

void collect_variables(const Term& t, std::set<std::string>& out) {
    if (t.is_variable()) {
        out.insert(t.symbol());
        return;
    }
    for (const Term& a : t.args()) collect_variables(a, out);
}

void collect_positions(const Term& t, Position& prefix, std::vector<Position>& out) {
    out.push_back(prefix);
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        prefix.push_back(i);
        collect_positions(t.args()[i], prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::set<std::string> variables(const Term& t) {
    std::set<std::string> out;
    collect_variables(t, out);
    return out;
}

std::vector<Position> all_positions(const Term& t) {
    std::vector<Position> out;
    Position prefix;
    collect_positions(t, prefix, out);
    return out;
}

}  // namespace eqbases
