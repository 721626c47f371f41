#pragma once

#include "eqbases/theory.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eqbases {

// Rewrite orientation of an identity application. Either leaves the
// checker free to use whichever orientation reproduces the step's target.
enum class Direction { LeftToRight, RightToLeft, Either };

// "lr", "rl", or "either".
std::string format_direction(Direction d);

// One chain line: the full term the chain reaches, the identity that
// justifies the move, and optional orientation/position annotations that
// constrain the witness search.
struct ProofStep {
    Term target;
    std::string justification;
    Direction direction = Direction::Either;
    std::optional<Position> position;
};

// Body of a lemma script: an equational goal plus the chain that walks its
// left side to its right side one rewrite at a time.
struct LemmaBody {
    Identity goal;  // goal.name == script name
    Term start;     // must equal goal.lhs
    std::vector<ProofStep> steps;
};

// Body of a definition script: introduces a fresh constant for a body term
// whose value a previously proven constancy lemma shows to be independent
// of the body's variables.
struct DefinitionBody {
    std::string op;  // new 0-ary operator
    Term body;
    std::string constancy;  // name of the constancy lemma
};

// A named proof unit inside one ambient theory.
struct ProofScript {
    std::string name;
    std::string theory;
    std::variant<LemmaBody, DefinitionBody> body;

    bool is_lemma() const { return std::holds_alternative<LemmaBody>(body); }
    const LemmaBody& lemma() const { return std::get<LemmaBody>(body); }
    const DefinitionBody& definition() const { return std::get<DefinitionBody>(body); }
};

// A position/direction pair where the justification's source side matched
// but the rewrite does not reproduce the step's target.
struct NearMiss {
    Position position;
    Direction direction = Direction::LeftToRight;
};

// Successful witness of one step: where the identity applied, with which
// substitution, in which orientation.
struct StepWitness {
    Position position;
    Substitution substitution;
    Direction direction = Direction::LeftToRight;
};

// Per-step outcome inside a CheckReport.
struct StepVerdict {
    std::size_t index = 0;
    bool ok = false;
    std::string justification;
    StepWitness witness;         // meaningful when ok
    std::string failure;         // reason when not ok
    std::vector<NearMiss> near_misses;
};

// Outcome of checking one script.
struct CheckReport {
    std::string script;
    std::string theory;
    bool ok = false;
    bool is_definition = false;
    std::vector<StepVerdict> steps;
    // Names of identities used by witnesses (for definitions: the
    // constancy lemma), sorted, without duplicates.
    std::vector<std::string> dependencies;
    // For definition scripts: the registered equation name ("<op>_def").
    std::string registered;
    // Set when the script fails before or after the step loop (bad chain
    // endpoints, unresolved names, malformed definition).
    std::string failure;
};

// Replaces the p-subterm of t, an instance of one side of i under s, by
// the matching instance of the other side. dir selects the source side
// (LeftToRight rewrites lhs to rhs). Throws std::invalid_argument when dir
// is Either or the instance does not occur at p.
Term apply_identity(const Term& t, const Identity& i, Direction dir, const Position& p,
                    const Substitution& s);

// Finds the first (position, substitution, direction) with
// apply_identity(current, just, dir, p, s) == step.target, honouring the
// step's explicit direction/position annotations. Positions are searched
// leftmost-outermost (pre-order), LeftToRight before RightToLeft at each
// position; the substitution is inferred by matching the source side at p
// and extending over the target side, so no search over substitutions
// occurs. Near misses are appended to *near_misses when given.
std::optional<StepWitness> verify_step(const Term& current, const ProofStep& step,
                                       const Identity& just,
                                       std::vector<NearMiss>* near_misses = nullptr);

// Accumulates verified results per ambient theory: lemma goals and
// definition equations become resolvable justifications for later scripts
// of the same theory, and definitions grow that theory's working
// signature.
class ProofLibrary {
public:
    explicit ProofLibrary(const TheoryFile& catalog);

    const TheoryFile& catalog() const { return *catalog_; }

    // The ambient theory's signature extended by its registered constants.
    // Throws std::invalid_argument for an unknown theory.
    const Signature& working_signature(const std::string& theory) const;

    // Resolves a justification visible to scripts of the theory: an
    // ambient axiom, a registered definition equation, or a previously
    // verified lemma goal. nullptr when absent.
    const Identity* resolve(const std::string& theory, const std::string& name) const;

    // True when the name is an axiom of the named theory.
    bool is_axiom(const std::string& theory, const std::string& name) const;

    // The verified lemma goal registered under the name, if any.
    const Identity* find_lemma(const std::string& theory, const std::string& name) const;

    // The constancy lemma behind a registered definition equation, if the
    // name denotes one.
    const std::string* definition_constancy(const std::string& theory,
                                            const std::string& name) const;

    // Registration; throws std::invalid_argument on name clashes.
    void add_lemma(const std::string& theory, Identity goal);
    void add_definition(const std::string& theory, const std::string& op, Term body,
                        const std::string& constancy);

private:
    struct TheoryState {
        Signature working;
        std::vector<Identity> lemmas;
        std::vector<Identity> definitions;           // "<op>_def" equations
        std::map<std::string, std::string> def_constancy;  // equation -> lemma
    };
    TheoryState& state(const std::string& theory);
    const TheoryState* find_state(const std::string& theory) const;

    const TheoryFile* catalog_;
    std::map<std::string, TheoryState> states_;
};

// Replays one script against the library and, on success, registers its
// result for later scripts. Never throws on verification failures; those
// land in the report.
CheckReport check_script(const ProofScript& script, ProofLibrary& library);

// Transitive closure from the named root down to terminal names: ambient
// axioms always terminate; names listed in assumed_roots terminate even
// when they have scripts. The returned set contains exactly the terminals
// reached. Dependencies of a definition script lead to its constancy
// lemma. reports must stem from one ProofLibrary run over scripts of one
// ambient theory. Throws std::invalid_argument for an unknown root or an
// unresolvable dependency.
std::set<std::string> dependency_closure(const std::vector<CheckReport>& reports,
                                         const ProofLibrary& library,
                                         const std::string& root,
                                         const std::set<std::string>& assumed_roots = {});

// Parses the proof-file format:
//   proof <name> in <theory>
//     goal: <term> = <term>
//     chain:
//       <start term>
//       = <term>  by <name> [lr|rl] [at [i,j,...]]
//   define <op> := <body> constancy <lemma-name>
// '#' starts a comment. A define line attaches to the ambient theory of
// the preceding script and is named "<op>_definition"; the new constant is
// part of the parse signature for the rest of the file. Theory names
// resolve against the catalog. Throws ParseError with file coordinates.
std::vector<ProofScript> parse_proofs(const std::string& text, const TheoryFile& catalog);

}  // namespace eqbases
