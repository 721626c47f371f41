#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqbases {

// Path from the root of a term to a subterm: 0-based argument indices,
// outermost first. The empty path denotes the root.
using Position = std::vector<std::size_t>;

// Renders a position as "[0,1,2]" ("[]" for the root).
std::string format_position(const Position& p);

// Error with 1-based source coordinates, thrown by all text parsers.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Operator written with the wrong number of arguments.
class ArityError : public ParseError {
public:
    using ParseError::ParseError;
};

struct OpDecl {
    std::string name;
    std::size_t arity;
    bool operator==(const OpDecl&) const = default;
};

// Ordered operator declarations. Order is significant: it fixes table order
// in model files and the cell fill order of the model search.
class Signature {
public:
    Signature() = default;
    Signature(std::string name, std::vector<OpDecl> ops);

    const std::string& name() const { return name_; }
    const std::vector<OpDecl>& ops() const { return ops_; }
    bool declares(const std::string& op) const;
    std::optional<std::size_t> arity_of(const std::string& op) const;

    // Appends a declaration; throws std::invalid_argument on a duplicate.
    void add_op(std::string op, std::size_t arity);

    bool operator==(const Signature&) const = default;

private:
    std::string name_;
    std::vector<OpDecl> ops_;
};

// Immutable term: a variable or an operator application. Copies share
// structure; equality and ordering are structural.
class Term {
public:
    static Term variable(std::string name);
    static Term apply(std::string op, std::vector<Term> args = {});

    bool is_variable() const;
    // The variable name, or the operator name of an application.
    const std::string& symbol() const;
    // Empty for variables and constants.
    const std::vector<Term>& args() const;

    bool operator==(const Term& rhs) const;
    bool operator!=(const Term& rhs) const { return !(*this == rhs); }
    bool operator<(const Term& rhs) const;

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

// Simultaneous variable-to-term map.
using Substitution = std::map<std::string, Term>;

// Parses the prefix grammar term := ident | ident "(" term ("," term)* ")".
// Identifiers declared in sig are operators (constants are written bare,
// without parentheses); all other identifiers are variables. Whitespace is
// insignificant and "#" starts a line comment.
// Throws ParseError (syntax) or ArityError (declared operator misused).
Term parse_term(const std::string& text, const Signature& sig);

// Canonical prefix rendering; parse_term(format_term(t), sig) == t.
std::string format_term(const Term& t);

// Replaces mapped variables simultaneously; inserted subterms are not
// re-substituted.
Term substitute(const Term& t, const Substitution& s);

// One-sided first-order matching: the unique s extending seed with
// substitute(pattern, s) == subject, if one exists.
std::optional<Substitution> match_term(const Term& pattern, const Term& subject);
std::optional<Substitution> match_term(const Term& pattern, const Term& subject,
                                       Substitution seed);

// Subterm access and replacement; std::out_of_range for invalid positions.
Term subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& r);

// Variable names occurring in t.
std::set<std::string> variables(const Term& t);

// Every position of t, leftmost-outermost (pre-order), root first.
std::vector<Position> all_positions(const Term& t);

}  // namespace eqbases
