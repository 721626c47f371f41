#pragma once

#include "eqbases/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace eqbases {

// Partially filled operation tables: the working state of the model search.
// Layout mirrors FiniteAlgebra (tables in signature order, cells row-major)
// with every entry optional.
class PartialAlgebra {
public:
    PartialAlgebra() = default;
    // Throws std::invalid_argument when size is zero.
    PartialAlgebra(Signature sig, std::size_t size);

    const Signature& signature() const { return signature_; }
    std::size_t size() const { return size_; }
    const std::vector<std::vector<std::optional<std::size_t>>>& tables() const {
        return tables_;
    }

    std::optional<std::size_t> entry(std::size_t op_index, std::size_t cell) const {
        return tables_[op_index][cell];
    }
    // Throws std::invalid_argument when value is not a carrier element.
    void set(std::size_t op_index, std::size_t cell, std::size_t value);
    void clear(std::size_t op_index, std::size_t cell);

    bool complete() const;
    // Throws std::logic_error while any entry is still undefined.
    FiniteAlgebra to_algebra(std::string name) const;

private:
    Signature signature_;
    std::size_t size_ = 0;
    std::vector<std::vector<std::optional<std::size_t>>> tables_;
};

struct SearchOptions {
    // Keep only the least-labeled member of each isomorphism class
    // (supported for size <= 6; std::invalid_argument beyond).
    bool up_to_iso = false;
    // Number of threads; the tree is split statically by the values of the
    // first few cells, so results do not depend on this count.
    std::size_t workers = 1;
    // Cooperative wall-clock limit, checked between search nodes; when it
    // runs out the models found so far are returned with budget_exhausted.
    std::optional<double> budget_secs;
    // Re-check every pruning violation with an independent term evaluator
    // and count disagreements (diagnostics; expected to stay zero).
    bool audit_prunes = false;
};

struct SearchResult {
    // Every total table satisfying the theory, exactly once, sorted by
    // table content; names are "<theory>_n<size>_<ordinal>".
    std::vector<FiniteAlgebra> models;
    bool budget_exhausted = false;
    // Cell assignments attempted and branches cut by a violated ground
    // instance (diagnostics; vary with the worker split).
    std::size_t nodes = 0;
    std::size_t prunes = 0;
    // Pruning violations the independent re-check failed to confirm;
    // counted only under audit_prunes.
    std::size_t audit_failures = 0;
};

// Depth-first search over table cells in the fixed global order (operators
// in signature order, cells row-major within each table). Ground instances
// of the identities are precomputed once per size; an instance is
// re-evaluated when the cell it is blocked on gets a value, and any
// violated instance prunes the branch.
SearchResult enumerate_models(const Theory& t, std::size_t n,
                              const SearchOptions& options = {});

enum class CompareMode { SameSignature, ConstantExpansion };
enum class CompareVerdict { Equal, LeftNotRight, RightNotLeft };

// "same-signature" / "constant-expansion".
std::string format_compare_mode(CompareMode m);
// "equal" / "left-not-right" / "right-not-left".
std::string format_compare_verdict(CompareVerdict v);

// Outcome of a two-theory model comparison at one size.
struct ComparisonReport {
    std::string left;
    std::string right;
    std::size_t size = 0;
    CompareMode mode = CompareMode::SameSignature;
    CompareVerdict verdict = CompareVerdict::Equal;
    // A model separating the two theories: it satisfies the side named by
    // the verdict and fails the other (for constant expansion, fails the
    // reduct condition or admits no expansion). Absent when equal.
    std::optional<FiniteAlgebra> witness;
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    bool budget_exhausted = false;
};

// Enumerates all models of both theories at size n and compares the two
// sets of tables; the first table (in sorted order) lying in exactly one
// set becomes the witness. The up_to_iso option is ignored here: set
// comparison always looks at full model sets. Throws std::invalid_argument
// when the signatures differ.
ComparisonReport compare_same_signature(const Theory& t1, const Theory& t2,
                                        std::size_t n,
                                        const SearchOptions& options = {});

// Comparison across signatures differing by exactly one constant c (in
// t_big). Equal iff dropping c from every model of t_big yields a model of
// t_small, and every model of t_small extends to a model of t_big under at
// least one of the n values of c. Witness: the first t_big model whose
// reduct fails, else the first t_small model with no working expansion.
// Throws std::invalid_argument when the signatures do not have that shape.
ComparisonReport compare_with_constant_expansion(const Theory& t_big,
                                                 const Theory& t_small,
                                                 std::size_t n,
                                                 const SearchOptions& options = {});

// Outcome of checking a model against a hold/fail split of a theory's
// identities.
struct IndependenceReport {
    std::string theory;
    std::string model;
    bool passed = false;
    // Reports in the order the names were given; each must_fail report
    // carries its first counterexample.
    std::vector<SatReport> must_hold;
    std::vector<SatReport> must_fail;
    // First deviation ("'M2' unexpectedly holds"); empty when passed.
    std::string failure;
};

// Checks that m satisfies every must_hold identity and falsifies every
// must_fail identity. The two name lists must partition t's identities and
// m must live over t's signature; std::invalid_argument otherwise.
IndependenceReport verify_independence(const Theory& t, const FiniteAlgebra& m,
                                       const std::vector<std::string>& must_hold,
                                       const std::vector<std::string>& must_fail);

// Evaluates body under every assignment to its variables and returns the
// common value, or nullopt when the value varies. Used to interpret a
// defined constant inside a plain model of the defining theory.
std::optional<std::size_t> constant_value(const FiniteAlgebra& a, const Term& body);

// One bundled counterexample check: the identities of the theory the model
// must satisfy and the ones it must falsify.
struct IndependenceCase {
    std::string theory;
    std::string model;
    std::vector<std::string> must_hold;
    std::vector<std::string> must_fail;
};

// Text of the four bundled two-element counterexample algebras; the files
// under fixtures/models ship this exact text.
const std::string& builtin_independence_text();
// The four algebras, parsed: indep_A, indep_B, indep_C, indep_D.
const std::vector<FiniteAlgebra>& builtin_independence_models();
// The six checks the bundled algebras support, grouped by model.
const std::vector<IndependenceCase>& builtin_independence_cases();

}  // namespace eqbases
