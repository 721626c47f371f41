#include "eqbases/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace eqbases {

namespace {

// size^arity with overflow-free iteration bounds for the sizes in play.
std::size_t table_length(std::size_t size, std::size_t arity) {
    std::size_t len = 1;
    for (std::size_t k = 0; k < arity; ++k) len *= size;
    return len;
}

// Advances a mixed-radix counter (all digits base `size`), most significant
// digit first; returns false on wrap-around.
bool next_tuple(std::vector<std::size_t>& digits, std::size_t size) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < size) return true;
        digits[k] = 0;
    }
    return false;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::string name, Signature sig, std::size_t size,
                             std::vector<std::vector<std::size_t>> tables)
    : name_(std::move(name)), signature_(std::move(sig)), size_(size),
      tables_(std::move(tables)) {
    if (size_ == 0) throw std::invalid_argument("algebra '" + name_ + "': empty carrier");
    if (tables_.size() != signature_.ops().size())
        throw std::invalid_argument("algebra '" + name_ + "': expected " +
                                    std::to_string(signature_.ops().size()) + " tables, got " +
                                    std::to_string(tables_.size()));
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const OpDecl& op = signature_.ops()[i];
        std::size_t want = table_length(size_, op.arity);
        if (tables_[i].size() != want)
            throw std::invalid_argument("algebra '" + name_ + "': table '" + op.name +
                                        "' has " + std::to_string(tables_[i].size()) +
                                        " entries, expected " + std::to_string(want));
        for (std::size_t entry : tables_[i])
            if (entry >= size_)
                throw std::invalid_argument("algebra '" + name_ + "': table '" + op.name +
                                            "' entry " + std::to_string(entry) +
                                            " outside carrier 0.." + std::to_string(size_ - 1));
    }
}

const std::vector<std::size_t>& FiniteAlgebra::table(const std::string& op) const {
    for (std::size_t i = 0; i < signature_.ops().size(); ++i)
        if (signature_.ops()[i].name == op) return tables_[i];
    throw std::invalid_argument("algebra '" + name_ + "' has no operator '" + op + "'");
}

std::size_t FiniteAlgebra::apply(std::size_t op_index,
                                 const std::vector<std::size_t>& args) const {
    std::size_t flat = 0;
    for (std::size_t v : args) flat = flat * size_ + v;
    return tables_[op_index][flat];
}

std::size_t eval_term(const FiniteAlgebra& a, const Term& t, const Assignment& v) {
    if (t.is_variable()) {
        auto it = v.find(t.symbol());
        if (it == v.end())
            throw std::invalid_argument("unbound variable '" + t.symbol() + "'");
        return it->second;
    }
    const auto& ops = a.signature().ops();
    std::size_t op_index = 0;
    while (op_index < ops.size() && ops[op_index].name != t.symbol()) ++op_index;
    if (op_index == ops.size())
        throw std::invalid_argument("operator '" + t.symbol() + "' not in algebra '" +
                                    a.name() + "'");
    std::vector<std::size_t> args;
    args.reserve(t.args().size());
    for (const Term& arg : t.args()) args.push_back(eval_term(a, arg, v));
    return a.apply(op_index, args);
}

SatReport satisfies(const FiniteAlgebra& a, const Identity& i, SatMode mode) {
    SatReport report;
    report.identity = i.name;
    report.holds = true;

    std::set<std::string> var_set = variables(i.lhs);
    std::set<std::string> rhs_vars = variables(i.rhs);
    var_set.insert(rhs_vars.begin(), rhs_vars.end());
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    std::vector<std::size_t> digits(vars.size(), 0);
    Assignment v;
    do {
        for (std::size_t k = 0; k < vars.size(); ++k) v[vars[k]] = digits[k];
        std::size_t lhs = eval_term(a, i.lhs, v);
        std::size_t rhs = eval_term(a, i.rhs, v);
        if (lhs != rhs) {
            report.holds = false;
            if (!report.counterexample)
                report.counterexample = Counterexample{v, lhs, rhs};
            if (mode == SatMode::FirstOnly) return report;
            if (report.all_counterexamples.size() < kMaxListedCounterexamples)
                report.all_counterexamples.push_back(Counterexample{v, lhs, rhs});
            else
                report.truncated = true;
        }
    } while (next_tuple(digits, a.size()));
    return report;
}

std::vector<SatReport> satisfies_theory(const FiniteAlgebra& a, const Theory& t,
                                        SatMode mode) {
    std::vector<SatReport> reports;
    reports.reserve(t.identities().size());
    for (const Identity& i : t.identities()) reports.push_back(satisfies(a, i, mode));
    return reports;
}

FiniteAlgebra lukasiewicz_chain(std::size_t n) {
    if (n < 2) throw std::invalid_argument("lukasiewicz_chain needs n >= 2");
    Signature sig("mv0", {{"plus", 2}, {"neg", 1}, {"zero", 0}});
    std::vector<std::size_t> plus(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) plus[i * n + j] = std::min(n - 1, i + j);
    std::vector<std::size_t> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = n - 1 - i;
    return FiniteAlgebra("L" + std::to_string(n), std::move(sig), n,
                         {std::move(plus), std::move(neg), {0}});
}

FiniteAlgebra bck_reduct(const FiniteAlgebra& a, bool keep_constants) {
    for (const char* op : {"plus", "neg", "zero"})
        if (!a.signature().declares(op))
            throw std::invalid_argument("bck_reduct: input lacks operator '" +
                                        std::string(op) + "'");
    const Theory* mv_a = builtin_theories().find_theory("MV_A");
    for (const Identity& i : mv_a->identities()) {
        SatReport r = satisfies(a, i);
        if (!r.holds)
            throw std::invalid_argument("bck_reduct: input violates " + i.name);
    }

    std::size_t n = a.size();
    const auto& plus = a.table("plus");
    const auto& neg = a.table("neg");
    std::size_t zero = a.table("zero")[0];
    std::vector<std::size_t> imp(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) imp[i * n + j] = plus[neg[i] * n + j];

    std::string name = a.name() + "_imp";
    if (keep_constants) {
        Signature sig("bck1", {{"imp", 2}, {"one", 0}});
        return FiniteAlgebra(std::move(name), std::move(sig), n,
                             {std::move(imp), {neg[zero]}});
    }
    Signature sig("bck", {{"imp", 2}});
    return FiniteAlgebra(std::move(name), std::move(sig), n, {std::move(imp)});
}

IsoReport is_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    IsoReport report;
    if (a.size() != b.size()) {
        report.mismatch = "different sizes";
        return report;
    }
    if (!(a.signature() == b.signature())) {
        report.mismatch = "different signatures";
        return report;
    }
    if (a.size() > 8)
        throw std::invalid_argument("is_isomorphic: size above the brute-force limit 8");

    std::size_t n = a.size();
    std::vector<std::size_t> phi(n);
    std::iota(phi.begin(), phi.end(), 0);
    do {
        bool ok = true;
        for (std::size_t op = 0; ok && op < a.signature().ops().size(); ++op) {
            std::size_t arity = a.signature().ops()[op].arity;
            std::vector<std::size_t> args(arity, 0), mapped(arity, 0);
            do {
                for (std::size_t k = 0; k < arity; ++k) mapped[k] = phi[args[k]];
                if (phi[a.apply(op, args)] != b.apply(op, mapped)) {
                    ok = false;
                    break;
                }
            } while (next_tuple(args, n));
        }
        if (ok) {
            report.bijection = phi;
            return report;
        }
    } while (std::next_permutation(phi.begin(), phi.end()));
    return report;
}

namespace {

// One lexed token with its source location.
struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex_model_file(const std::string& text) {
    std::vector<Token> tokens;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        std::size_t pos = 0;
        while (pos < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[pos]))) {
                ++pos;
                continue;
            }
            std::size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            tokens.push_back(Token{line.substr(start, pos - start), line_no, start + 1});
        }
    }
    return tokens;
}

}  // namespace

std::vector<FiniteAlgebra> parse_models(const std::string& text,
                                        const std::vector<Signature>& signatures) {
    std::vector<Token> tokens = lex_model_file(text);
    std::vector<FiniteAlgebra> out;
    std::size_t pos = 0;

    auto fail = [&](const std::string& message) -> ParseError {
        if (pos < tokens.size())
            return ParseError(message, tokens[pos].line, tokens[pos].column);
        return ParseError(message + " (at end of input)",
                          tokens.empty() ? 1 : tokens.back().line, 1);
    };
    auto expect_word = [&](const std::string& word) {
        if (pos >= tokens.size() || tokens[pos].text != word)
            throw fail("expected '" + word + "'");
        ++pos;
    };
    auto take = [&]() -> const Token& {
        if (pos >= tokens.size()) throw fail("unexpected end of input");
        return tokens[pos++];
    };
    auto take_number = [&]() -> std::size_t {
        const Token& tok = take();
        try {
            std::size_t used = 0;
            std::size_t value = std::stoul(tok.text, &used);
            if (used != tok.text.size()) throw std::invalid_argument(tok.text);
            return value;
        } catch (const std::exception&) {
            --pos;
            throw fail("expected a number, found '" + tok.text + "'");
        }
    };

    while (pos < tokens.size()) {
        expect_word("model");
        std::string name = take().text;
        expect_word("over");
        const Token& sig_tok = take();
        const Signature* sig = nullptr;
        for (const Signature& s : signatures)
            if (s.name() == sig_tok.text) sig = &s;
        if (!sig) {
            --pos;
            throw fail("unknown signature '" + sig_tok.text + "'");
        }
        expect_word("size");
        std::size_t size = take_number();
        if (size == 0) throw fail("size must be positive");

        std::vector<std::vector<std::size_t>> tables(sig->ops().size());
        std::vector<bool> seen(sig->ops().size(), false);
        while (pos < tokens.size() && tokens[pos].text == "table") {
            ++pos;
            const Token& op_tok = take();
            std::size_t op_index = sig->ops().size();
            for (std::size_t i = 0; i < sig->ops().size(); ++i)
                if (sig->ops()[i].name == op_tok.text) op_index = i;
            if (op_index == sig->ops().size()) {
                --pos;
                throw fail("signature '" + sig->name() + "' has no operator '" +
                           op_tok.text + "'");
            }
            if (seen[op_index]) {
                --pos;
                throw fail("duplicate table '" + op_tok.text + "'");
            }
            seen[op_index] = true;
            std::size_t want = table_length(size, sig->ops()[op_index].arity);
            std::vector<std::size_t> entries;
            entries.reserve(want);
            for (std::size_t k = 0; k < want; ++k) {
                std::size_t value = take_number();
                if (value >= size) {
                    --pos;
                    throw fail("entry " + std::to_string(value) + " outside carrier 0.." +
                               std::to_string(size - 1));
                }
                entries.push_back(value);
            }
            tables[op_index] = std::move(entries);
        }
        for (std::size_t i = 0; i < sig->ops().size(); ++i)
            if (!seen[i]) throw fail("missing table '" + sig->ops()[i].name + "'");
        out.push_back(FiniteAlgebra(name, *sig, size, std::move(tables)));
    }
    return out;
}

std::string format_model(const FiniteAlgebra& a) {
    std::ostringstream out;
    out << "model " << a.name() << " over " << a.signature().name() << "\n";
    out << "  size " << a.size() << "\n";
    for (std::size_t i = 0; i < a.signature().ops().size(); ++i) {
        const OpDecl& op = a.signature().ops()[i];
        out << "  table " << op.name << "\n";
        const auto& table = a.tables()[i];
        // Binary tables as one row per line; everything else on one line.
        std::size_t row = op.arity == 2 ? a.size() : table.size();
        for (std::size_t k = 0; k < table.size(); ++k) {
            out << (k % row == 0 ? "    " : " ") << table[k];
            if ((k + 1) % row == 0) out << "\n";
        }
    }
    return out.str();
}

}  // namespace eqbases
