#pragma once

#include "eqbases/term.hpp"

#include <string>
#include <vector>

namespace eqbases {

// A named, oriented pair of terms. Rewriting may use it in either
// direction; the orientation only fixes which side is "lhs". Variables of
// one side need not occur on the other.
struct Identity {
    std::string name;
    Term lhs;
    Term rhs;

    bool operator==(const Identity&) const = default;
};

// A named, ordered list of identities over one signature.
class Theory {
public:
    Theory() = default;
    Theory(std::string name, Signature sig, std::vector<Identity> identities);

    const std::string& name() const { return name_; }
    const Signature& signature() const { return signature_; }
    const std::vector<Identity>& identities() const { return identities_; }

    // Lookup by identity name; nullptr when absent.
    const Identity* find(const std::string& id_name) const;

    // Appends an identity; throws std::invalid_argument on a duplicate name.
    void add(Identity i);

    bool operator==(const Theory&) const = default;

private:
    std::string name_;
    Signature signature_;
    std::vector<Identity> identities_;
};

// Contents of a theory file, in declaration order.
struct TheoryFile {
    std::vector<Signature> signatures;
    std::vector<Theory> theories;

    const Signature* find_signature(const std::string& name) const;
    const Theory* find_theory(const std::string& name) const;
};

// Parses the line-oriented theory format:
//   signature <name>
//     op <ident> <arity>
//   theory <name> over <signature-name>
//     <name>: <term> = <term>
// Indented lines belong to the preceding block; '#' starts a comment.
// Throws ParseError (with file coordinates) on syntax errors, references to
// undeclared signatures, or duplicate names.
TheoryFile parse_theory(const std::string& text);

// The bundled axiom systems (MV_A, MV_M, MV_3base, CBCK_B, CBCK_B_elim,
// CBCK_C, LBCK_B, LBCK_B_elim, LBCK_L, PR_2base) and the derived-identity
// catalogs (MV_derived, CBCK_derived, LBCK_derived).
const TheoryFile& builtin_theories();

// The canonical text builtin_theories() is parsed from; shipped verbatim as
// a fixture file.
const std::string& builtin_theory_text();

// Alpha-renames the identity's variables away from the avoid set. A clashing
// variable v becomes v0, v1, ... (first suffix that collides with nothing).
Identity rename_apart(const Identity& i, const std::set<std::string>& avoid);

}  // namespace eqbases
