#pragma once

#include "eqbases/theory.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace eqbases {

// A finite algebra: carrier {0..size-1} and one total, row-major lookup
// table per signature operator (a constant's table is a single entry).
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    // Tables follow signature op order. Throws std::invalid_argument when a
    // table's length is not size^arity or an entry is out of range.
    FiniteAlgebra(std::string name, Signature sig, std::size_t size,
                  std::vector<std::vector<std::size_t>> tables);

    const std::string& name() const { return name_; }
    const Signature& signature() const { return signature_; }
    std::size_t size() const { return size_; }
    const std::vector<std::vector<std::size_t>>& tables() const { return tables_; }

    // Table of the named operator; throws std::invalid_argument if absent.
    const std::vector<std::size_t>& table(const std::string& op) const;

    // Applies operator #op_index to carrier elements.
    std::size_t apply(std::size_t op_index, const std::vector<std::size_t>& args) const;

    bool operator==(const FiniteAlgebra&) const = default;

private:
    std::string name_;
    Signature signature_;
    std::size_t size_ = 0;
    std::vector<std::vector<std::size_t>> tables_;
};

// Variable valuation in a finite algebra.
using Assignment = std::map<std::string, std::size_t>;

// A falsifying assignment together with the two side values.
struct Counterexample {
    Assignment assignment;
    std::size_t lhs_value = 0;
    std::size_t rhs_value = 0;

    bool operator==(const Counterexample&) const = default;
};

// Outcome of checking one identity in one algebra.
struct SatReport {
    std::string identity;
    bool holds = false;
    // First counterexample in lexicographic assignment order (variables
    // sorted by name), absent when the identity holds.
    std::optional<Counterexample> counterexample;
    // All counterexamples, capped; filled only in exhaustive mode.
    std::vector<Counterexample> all_counterexamples;
    bool truncated = false;
};

// Listing cap for SatMode::Exhaustive.
inline constexpr std::size_t kMaxListedCounterexamples = 1000;

enum class SatMode { FirstOnly, Exhaustive };

// Evaluates t under v by recursive table lookup. Throws
// std::invalid_argument on an unbound variable or an operator absent from
// the algebra's signature.
std::size_t eval_term(const FiniteAlgebra& a, const Term& t, const Assignment& v);

// Exhaustively checks i over all size^k assignments to its variables.
SatReport satisfies(const FiniteAlgebra& a, const Identity& i,
                    SatMode mode = SatMode::FirstOnly);

// Pointwise satisfies over the theory's identities, in order.
std::vector<SatReport> satisfies_theory(const FiniteAlgebra& a, const Theory& t,
                                        SatMode mode = SatMode::FirstOnly);

// The n-element chain: plus(i,j) = min(n-1, i+j), neg(i) = n-1-i, zero = 0,
// over signature mv0. Element i stands for the rational i/(n-1). Throws
// std::invalid_argument for n < 2.
FiniteAlgebra lukasiewicz_chain(std::size_t n);

// Implication reduct imp(i,j) = plus(neg(i), j), with one = neg(zero) when
// keep_constants is set; the input must carry plus/neg/zero and satisfy
// MV_A (checked; std::invalid_argument otherwise).
FiniteAlgebra bck_reduct(const FiniteAlgebra& a, bool keep_constants);

// Isomorphism test by brute force over all n! bijections.
struct IsoReport {
    // First witnessing bijection in lexicographic order (element i of a
    // maps to bijection[i] of b), absent when none exists.
    std::optional<std::vector<std::size_t>> bijection;
    // Non-empty when the two algebras are incomparable (different size or
    // signature); such pairs are reported as non-isomorphic.
    std::string mismatch;

    bool isomorphic() const { return bijection.has_value(); }
};

// Requires size <= 8 (throws std::invalid_argument beyond that).
IsoReport is_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b);

// Parses the model-file format
//   model <name> over <signature-name>
//     size <n>
//     table <op>
//       <n^k integers, row-major>
// resolving signature names against the given list. '#' starts a comment.
// Throws ParseError on malformed input, unknown signatures or operators,
// missing or duplicate tables, or out-of-range entries.
std::vector<FiniteAlgebra> parse_models(const std::string& text,
                                        const std::vector<Signature>& signatures);

// Renders one algebra in the model-file format (tables in signature order).
std::string format_model(const FiniteAlgebra& a);

}  // namespace eqbases
