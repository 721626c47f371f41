#include "eqbases/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <exception>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace eqbases {

PartialAlgebra::PartialAlgebra(Signature sig, std::size_t size)
    : signature_(std::move(sig)), size_(size) {
    if (size_ == 0) throw std::invalid_argument("PartialAlgebra: empty carrier");
    tables_.reserve(signature_.ops().size());
    for (const OpDecl& op : signature_.ops()) {
        std::size_t cells = 1;
        for (std::size_t i = 0; i < op.arity; ++i) cells *= size_;
        tables_.emplace_back(cells);
    }
}

void PartialAlgebra::set(std::size_t op_index, std::size_t cell, std::size_t value) {
    if (value >= size_)
        throw std::invalid_argument("PartialAlgebra: value " + std::to_string(value) +
                                    " outside carrier of size " + std::to_string(size_));
    tables_[op_index][cell] = value;
}

void PartialAlgebra::clear(std::size_t op_index, std::size_t cell) {
    tables_[op_index][cell].reset();
}

bool PartialAlgebra::complete() const {
    for (const auto& table : tables_)
        for (const auto& entry : table)
            if (!entry) return false;
    return true;
}

FiniteAlgebra PartialAlgebra::to_algebra(std::string name) const {
    std::vector<std::vector<std::size_t>> tables;
    tables.reserve(tables_.size());
    for (std::size_t op = 0; op < tables_.size(); ++op) {
        std::vector<std::size_t> table;
        table.reserve(tables_[op].size());
        for (const auto& entry : tables_[op]) {
            if (!entry)
                throw std::logic_error("PartialAlgebra: operator '" +
                                       signature_.ops()[op].name +
                                       "' still has undefined entries");
            table.push_back(*entry);
        }
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(std::move(name), signature_, size_, std::move(tables));
}

namespace {

// Advances a base-n odometer; false once every tuple has been visited.
bool next_tuple(std::vector<std::size_t>& tuple, std::size_t n) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < n) return true;
        tuple[i] = 0;
    }
    return false;
}

// One step of a postfix program for a ground term: either push an element,
// or pop `arity` arguments and look up the table of operator `payload`.
struct Instr {
    bool literal;
    std::size_t payload;
    std::size_t arity;
};

void compile_term(const Term& t, const Assignment& v, const Signature& sig,
                  std::vector<Instr>& out) {
    if (t.is_variable()) {
        out.push_back(Instr{true, v.at(t.symbol()), 0});
        return;
    }
    for (const Term& arg : t.args()) compile_term(arg, v, sig, out);
    const auto& ops = sig.ops();
    std::size_t op = 0;
    while (op < ops.size() && ops[op].name != t.symbol()) ++op;
    if (op == ops.size())
        throw std::invalid_argument("operator '" + t.symbol() +
                                    "' is not declared in signature '" +
                                    sig.name() + "'");
    out.push_back(Instr{false, op, t.args().size()});
}

// One fully instantiated identity, compiled for the search loop. The
// instantiating assignment is kept so a violation can be re-checked by an
// evaluator independent of the compiled form.
struct GroundInstance {
    std::vector<Instr> lhs;
    std::vector<Instr> rhs;
    std::size_t identity;
    Assignment assignment;
};

// Everything enumerate_models precomputes once per (theory, size): the
// global cell order and the ground instances of every identity.
struct SearchPlan {
    const Theory* theory = nullptr;
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // global -> (op, cell)
    std::vector<std::size_t> op_base;                        // op -> first global cell
    std::vector<GroundInstance> instances;
    // Set when a table-independent instance (variables only) is violated;
    // the theory then has no model of this size at all.
    bool unsatisfiable = false;
};

SearchPlan build_plan(const Theory& t, std::size_t n) {
    SearchPlan plan;
    plan.theory = &t;
    plan.n = n;
    const Signature& sig = t.signature();
    for (std::size_t op = 0; op < sig.ops().size(); ++op) {
        plan.op_base.push_back(plan.cells.size());
        std::size_t cells = 1;
        for (std::size_t i = 0; i < sig.ops()[op].arity; ++i) cells *= n;
        for (std::size_t c = 0; c < cells; ++c) plan.cells.emplace_back(op, c);
    }
    for (std::size_t id = 0; id < t.identities().size(); ++id) {
        const Identity& identity = t.identities()[id];
        std::set<std::string> var_set = variables(identity.lhs);
        var_set.merge(variables(identity.rhs));
        const std::vector<std::string> vars(var_set.begin(), var_set.end());
        std::vector<std::size_t> tuple(vars.size(), 0);
        do {
            Assignment v;
            for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = tuple[i];
            GroundInstance inst{{}, {}, id, v};
            compile_term(identity.lhs, v, sig, inst.lhs);
            compile_term(identity.rhs, v, sig, inst.rhs);
            const bool lhs_literal = inst.lhs.size() == 1 && inst.lhs.front().literal;
            const bool rhs_literal = inst.rhs.size() == 1 && inst.rhs.front().literal;
            if (lhs_literal && rhs_literal) {
                if (inst.lhs.front().payload != inst.rhs.front().payload)
                    plan.unsatisfiable = true;
            } else {
                plan.instances.push_back(std::move(inst));
            }
        } while (next_tuple(tuple, n));
    }
    return plan;
}

// Depth-first table filler over one static share of the search tree. Cell
// d of the global order is assigned at depth d, so the defined cells are
// always exactly a prefix. Each instance waits on one watch list: the cell
// its last evaluation got stuck on (or, once evaluable, the cell completing
// it). Assigning a cell re-evaluates exactly the instances waiting there; a
// parked instance is never skipped because every completed table passes
// through its watched cell.
class Worker {
public:
    Worker(const SearchPlan& plan, bool audit, std::atomic<bool>& stop,
           std::optional<std::chrono::steady_clock::time_point> deadline)
        : plan_(plan),
          audit_(audit),
          stop_(stop),
          deadline_(deadline),
          partial_(plan.theory->signature(), plan.n),
          watch_(plan.cells.size()) {}

    // Explores prefixes first, first+stride, ... of the shared prefix list;
    // each viable prefix seeds a full depth-first descent below it.
    void run(const std::vector<std::vector<std::size_t>>& prefixes,
             std::size_t first, std::size_t stride) {
        park_all();
        for (std::size_t p = first; p < prefixes.size() && !aborted_; p += stride) {
            const std::vector<std::size_t>& prefix = prefixes[p];
            std::size_t filled = 0;
            bool viable = true;
            for (std::size_t i = 0; i < prefix.size(); ++i) {
                if (over_budget()) {
                    aborted_ = true;
                    viable = false;
                    break;
                }
                const bool ok = assign(i, prefix[i]);
                ++filled;
                if (!ok) {
                    viable = false;
                    break;
                }
            }
            if (viable) dfs(prefix.size());
            while (filled > 0) {
                --filled;
                const auto [op, cell] = plan_.cells[filled];
                partial_.clear(op, cell);
            }
        }
    }

    std::vector<FiniteAlgebra> take_models() { return std::move(models_); }
    bool aborted() const { return aborted_; }
    std::size_t nodes() const { return nodes_; }
    std::size_t prunes() const { return prunes_; }
    std::size_t audit_failures() const { return audit_failures_; }

private:
    void park_all() {
        for (std::size_t i = 0; i < plan_.instances.size(); ++i) {
            const GroundInstance& inst = plan_.instances[i];
            std::size_t value = 0;
            std::size_t blocked = 0;
            if (run_side(inst.lhs, &value, &blocked) &&
                run_side(inst.rhs, &value, &blocked))
                continue;  // variable-only; already resolved at plan build
            watch_[blocked].push_back(static_cast<std::uint32_t>(i));
        }
    }

    // Evaluates one compiled side against the current partial tables. True
    // with *value set on success; false with *blocked set to the global
    // index of the first undefined cell hit.
    bool run_side(const std::vector<Instr>& code, std::size_t* value,
                  std::size_t* blocked) {
        stack_.clear();
        const std::size_t n = plan_.n;
        for (const Instr& ins : code) {
            if (ins.literal) {
                stack_.push_back(ins.payload);
                continue;
            }
            const std::size_t base = stack_.size() - ins.arity;
            std::size_t flat = 0;
            for (std::size_t i = base; i < stack_.size(); ++i)
                flat = flat * n + stack_[i];
            const std::optional<std::size_t> entry = partial_.entry(ins.payload, flat);
            if (!entry) {
                *blocked = plan_.op_base[ins.payload] + flat;
                return false;
            }
            stack_.resize(base);
            stack_.push_back(*entry);
        }
        *value = stack_.back();
        return true;
    }

    // Gives cell `depth` a value and re-evaluates the instances waiting on
    // it. False when some instance became fully evaluable and is violated.
    bool assign(std::size_t depth, std::size_t value) {
        ++nodes_;
        const auto [op, cell] = plan_.cells[depth];
        partial_.set(op, cell, value);
        moved_.clear();
        moved_.swap(watch_[depth]);
        bool ok = true;
        for (const std::uint32_t inst_id : moved_) {
            const GroundInstance& inst = plan_.instances[inst_id];
            std::size_t lhs = 0;
            std::size_t rhs = 0;
            std::size_t blocked = 0;
            if (!run_side(inst.lhs, &lhs, &blocked) ||
                !run_side(inst.rhs, &rhs, &blocked)) {
                watch_[blocked].push_back(inst_id);
                continue;
            }
            watch_[depth].push_back(inst_id);
            if (lhs != rhs) {
                if (ok) ++prunes_;
                ok = false;
                if (audit_ && !confirm_violation(inst)) ++audit_failures_;
            }
        }
        return ok;
    }

    void dfs(std::size_t depth) {
        if (depth == plan_.cells.size()) {
            models_.push_back(partial_.to_algebra(""));
            return;
        }
        const auto [op, cell] = plan_.cells[depth];
        for (std::size_t v = 0; v < plan_.n && !aborted_; ++v) {
            if (over_budget()) {
                aborted_ = true;
                break;
            }
            if (assign(depth, v)) dfs(depth + 1);
            partial_.clear(op, cell);
        }
    }

    bool over_budget() {
        if (stop_.load(std::memory_order_relaxed)) return true;
        if (!deadline_) return false;
        if ((++budget_tick_ & 63u) != 0) return false;
        if (std::chrono::steady_clock::now() < *deadline_) return false;
        stop_.store(true, std::memory_order_relaxed);
        return true;
    }

    // Independent re-check of a pruning violation: evaluates the original
    // identity terms recursively instead of running the compiled code.
    bool confirm_violation(const GroundInstance& inst) {
        const Identity& id = plan_.theory->identities()[inst.identity];
        const std::optional<std::size_t> lhs = audit_eval(id.lhs, inst.assignment);
        const std::optional<std::size_t> rhs = audit_eval(id.rhs, inst.assignment);
        return lhs.has_value() && rhs.has_value() && *lhs != *rhs;
    }

    std::optional<std::size_t> audit_eval(const Term& t, const Assignment& v) {
        if (t.is_variable()) return v.at(t.symbol());
        const auto& ops = plan_.theory->signature().ops();
        std::size_t op = 0;
        while (op < ops.size() && ops[op].name != t.symbol()) ++op;
        std::size_t flat = 0;
        for (const Term& arg : t.args()) {
            const std::optional<std::size_t> value = audit_eval(arg, v);
            if (!value) return std::nullopt;
            flat = flat * plan_.n + *value;
        }
        return partial_.entry(op, flat);
    }

    const SearchPlan& plan_;
    bool audit_;
    std::atomic<bool>& stop_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    PartialAlgebra partial_;
    std::vector<std::vector<std::uint32_t>> watch_;
    std::vector<std::size_t> stack_;
    std::vector<std::uint32_t> moved_;
    std::vector<FiniteAlgebra> models_;
    std::size_t nodes_ = 0;
    std::size_t prunes_ = 0;
    std::size_t audit_failures_ = 0;
    std::uint64_t budget_tick_ = 0;
    bool aborted_ = false;
};

// True when no relabeling of the carrier gives a strictly smaller table.
bool least_labeled(const FiniteAlgebra& m) {
    const std::size_t n = m.size();
    const auto& base = m.tables();
    const auto& ops = m.signature().ops();
    std::size_t max_arity = 0;
    for (const OpDecl& op : ops) max_arity = std::max(max_arity, op.arity);
    std::vector<std::size_t> pow(max_arity + 1, 1);
    for (std::size_t i = 1; i <= max_arity; ++i) pow[i] = pow[i - 1] * n;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto relabeled = base;
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::size_t op = 0; op < base.size(); ++op) {
            const std::size_t arity = ops[op].arity;
            for (std::size_t flat = 0; flat < base[op].size(); ++flat) {
                std::size_t mapped = 0;
                for (std::size_t i = 0; i < arity; ++i) {
                    const std::size_t digit = (flat / pow[arity - 1 - i]) % n;
                    mapped = mapped * n + perm[digit];
                }
                relabeled[op][mapped] = perm[base[op][flat]];
            }
        }
        if (relabeled < base) return false;
    }
    return true;
}

}  // namespace

SearchResult enumerate_models(const Theory& t, std::size_t n,
                              const SearchOptions& options) {
    if (n == 0) throw std::invalid_argument("enumerate_models: size must be at least 1");
    if (options.workers == 0)
        throw std::invalid_argument("enumerate_models: worker count must be at least 1");
    if (options.up_to_iso && n > 6)
        throw std::invalid_argument(
            "enumerate_models: up-to-isomorphism reduction supports size <= 6");

    SearchResult result;
    const SearchPlan plan = build_plan(t, n);
    if (plan.unsatisfiable) return result;

    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (options.budget_secs)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(*options.budget_secs));

    // Static split: enough leading cells that every worker gets a share of
    // the value prefixes; the model set is the same for any worker count.
    std::size_t split_cells = 0;
    std::size_t span = 1;
    while (span < options.workers && split_cells < plan.cells.size()) {
        span *= n;
        ++split_cells;
    }
    std::vector<std::vector<std::size_t>> prefixes;
    std::vector<std::size_t> tuple(split_cells, 0);
    do {
        prefixes.push_back(tuple);
    } while (next_tuple(tuple, n));

    const std::size_t worker_count = std::min(options.workers, prefixes.size());
    std::atomic<bool> stop{false};
    std::deque<Worker> workers;
    for (std::size_t w = 0; w < worker_count; ++w)
        workers.emplace_back(plan, options.audit_prunes, stop, deadline);
    if (worker_count == 1) {
        workers.front().run(prefixes, 0, 1);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w)
            threads.emplace_back([&, w] {
                try {
                    workers[w].run(prefixes, w, worker_count);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (std::thread& thread : threads) thread.join();
        for (const std::exception_ptr& error : errors)
            if (error) std::rethrow_exception(error);
    }

    std::vector<FiniteAlgebra> all;
    for (Worker& w : workers) {
        std::vector<FiniteAlgebra> found = w.take_models();
        std::move(found.begin(), found.end(), std::back_inserter(all));
        result.nodes += w.nodes();
        result.prunes += w.prunes();
        result.audit_failures += w.audit_failures();
        result.budget_exhausted = result.budget_exhausted || w.aborted();
    }
    std::sort(all.begin(), all.end(),
              [](const FiniteAlgebra& a, const FiniteAlgebra& b) {
                  return a.tables() < b.tables();
              });
    if (options.up_to_iso) {
        std::vector<FiniteAlgebra> kept;
        for (FiniteAlgebra& m : all)
            if (least_labeled(m)) kept.push_back(std::move(m));
        all = std::move(kept);
    }
    result.models.reserve(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        result.models.emplace_back(
            t.name() + "_n" + std::to_string(n) + "_" + std::to_string(i + 1),
            all[i].signature(), all[i].size(), all[i].tables());
    return result;
}

std::string format_compare_mode(CompareMode m) {
    return m == CompareMode::SameSignature ? "same-signature" : "constant-expansion";
}

std::string format_compare_verdict(CompareVerdict v) {
    switch (v) {
        case CompareVerdict::Equal: return "equal";
        case CompareVerdict::LeftNotRight: return "left-not-right";
        case CompareVerdict::RightNotLeft: return "right-not-left";
    }
    return "equal";
}

ComparisonReport compare_same_signature(const Theory& t1, const Theory& t2,
                                        std::size_t n, const SearchOptions& options) {
    if (t1.signature() != t2.signature())
        throw std::invalid_argument("compare_same_signature: '" + t1.name() +
                                    "' and '" + t2.name() +
                                    "' use different signatures");
    SearchOptions opts = options;
    opts.up_to_iso = false;
    const SearchResult left = enumerate_models(t1, n, opts);
    const SearchResult right = enumerate_models(t2, n, opts);

    ComparisonReport report;
    report.left = t1.name();
    report.right = t2.name();
    report.size = n;
    report.mode = CompareMode::SameSignature;
    report.left_count = left.models.size();
    report.right_count = right.models.size();
    report.budget_exhausted = left.budget_exhausted || right.budget_exhausted;

    std::size_t i = 0;
    std::size_t j = 0;
    while (i < left.models.size() || j < right.models.size()) {
        const bool left_first =
            j == right.models.size() ||
            (i < left.models.size() &&
             left.models[i].tables() < right.models[j].tables());
        if (left_first) {
            report.verdict = CompareVerdict::LeftNotRight;
            report.witness = left.models[i];
            return report;
        }
        const bool right_first =
            i == left.models.size() ||
            right.models[j].tables() < left.models[i].tables();
        if (right_first) {
            report.verdict = CompareVerdict::RightNotLeft;
            report.witness = right.models[j];
            return report;
        }
        ++i;
        ++j;
    }
    return report;
}

ComparisonReport compare_with_constant_expansion(const Theory& t_big,
                                                 const Theory& t_small,
                                                 std::size_t n,
                                                 const SearchOptions& options) {
    const Signature& big = t_big.signature();
    const Signature& small = t_small.signature();
    std::size_t extra = big.ops().size();
    for (std::size_t i = 0; i < big.ops().size(); ++i) {
        if (small.declares(big.ops()[i].name)) continue;
        if (extra != big.ops().size() || big.ops()[i].arity != 0) {
            extra = big.ops().size();
            break;
        }
        extra = i;
    }
    std::vector<OpDecl> reduced;
    if (extra < big.ops().size()) {
        reduced = big.ops();
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(extra));
    }
    if (extra == big.ops().size() || reduced != small.ops())
        throw std::invalid_argument(
            "compare_with_constant_expansion: signature of '" + t_big.name() +
            "' must extend that of '" + t_small.name() +
            "' by exactly one constant");

    SearchOptions opts = options;
    opts.up_to_iso = false;
    const SearchResult big_models = enumerate_models(t_big, n, opts);
    const SearchResult small_models = enumerate_models(t_small, n, opts);

    ComparisonReport report;
    report.left = t_big.name();
    report.right = t_small.name();
    report.size = n;
    report.mode = CompareMode::ConstantExpansion;
    report.left_count = big_models.models.size();
    report.right_count = small_models.models.size();
    report.budget_exhausted =
        big_models.budget_exhausted || small_models.budget_exhausted;

    for (const FiniteAlgebra& b : big_models.models) {
        std::vector<std::vector<std::size_t>> tables = b.tables();
        tables.erase(tables.begin() + static_cast<std::ptrdiff_t>(extra));
        const FiniteAlgebra reduct(b.name(), small, n, std::move(tables));
        bool holds = true;
        for (const SatReport& sat : satisfies_theory(reduct, t_small))
            holds = holds && sat.holds;
        if (!holds) {
            report.verdict = CompareVerdict::LeftNotRight;
            report.witness = b;
            return report;
        }
    }
    for (const FiniteAlgebra& s : small_models.models) {
        bool expandable = false;
        for (std::size_t v = 0; v < n && !expandable; ++v) {
            std::vector<std::vector<std::size_t>> tables = s.tables();
            tables.insert(tables.begin() + static_cast<std::ptrdiff_t>(extra),
                          std::vector<std::size_t>{v});
            const FiniteAlgebra expansion(s.name(), big, n, std::move(tables));
            bool holds = true;
            for (const SatReport& sat : satisfies_theory(expansion, t_big))
                holds = holds && sat.holds;
            expandable = holds;
        }
        if (!expandable) {
            report.verdict = CompareVerdict::RightNotLeft;
            report.witness = s;
            return report;
        }
    }
    return report;
}

IndependenceReport verify_independence(const Theory& t, const FiniteAlgebra& m,
                                       const std::vector<std::string>& must_hold,
                                       const std::vector<std::string>& must_fail) {
    if (m.signature() != t.signature())
        throw std::invalid_argument("verify_independence: model '" + m.name() +
                                    "' is not over the signature of theory '" +
                                    t.name() + "'");
    std::set<std::string> seen;
    for (const std::vector<std::string>* group : {&must_hold, &must_fail})
        for (const std::string& name : *group) {
            if (!t.find(name))
                throw std::invalid_argument("verify_independence: theory '" +
                                            t.name() + "' has no identity '" +
                                            name + "'");
            if (!seen.insert(name).second)
                throw std::invalid_argument(
                    "verify_independence: identity '" + name + "' listed twice");
        }
    if (seen.size() != t.identities().size())
        throw std::invalid_argument(
            "verify_independence: must_hold and must_fail together must cover "
            "every identity of '" + t.name() + "'");

    IndependenceReport report;
    report.theory = t.name();
    report.model = m.name();
    report.passed = true;
    for (const std::string& name : must_hold) {
        SatReport sat = satisfies(m, *t.find(name));
        if (!sat.holds) {
            report.passed = false;
            if (report.failure.empty())
                report.failure = "'" + name + "' unexpectedly fails";
        }
        report.must_hold.push_back(std::move(sat));
    }
    for (const std::string& name : must_fail) {
        SatReport sat = satisfies(m, *t.find(name));
        if (sat.holds) {
            report.passed = false;
            if (report.failure.empty())
                report.failure = "'" + name + "' unexpectedly holds";
        }
        report.must_fail.push_back(std::move(sat));
    }
    return report;
}

std::optional<std::size_t> constant_value(const FiniteAlgebra& a, const Term& body) {
    const std::set<std::string> var_set = variables(body);
    const std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::vector<std::size_t> tuple(vars.size(), 0);
    std::optional<std::size_t> common;
    do {
        Assignment v;
        for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = tuple[i];
        const std::size_t value = eval_term(a, body, v);
        if (!common) common = value;
        if (*common != value) return std::nullopt;
    } while (next_tuple(tuple, a.size()));
    return common;
}

const std::vector<FiniteAlgebra>& builtin_independence_models() {
    static const std::vector<FiniteAlgebra>* models = new std::vector<FiniteAlgebra>(
        parse_models(builtin_independence_text(), builtin_theories().signatures));
    return *models;
}

const std::vector<IndependenceCase>& builtin_independence_cases() {
    static const std::vector<IndependenceCase>* cases =
        new std::vector<IndependenceCase>{
            {"MV_M", "indep_A", {"M1"}, {"M2"}},
            {"MV_M", "indep_B", {"M2"}, {"M1"}},
            {"CBCK_C", "indep_C", {"C1"}, {"C2"}},
            {"LBCK_L", "indep_C", {"L1"}, {"L2"}},
            {"CBCK_C", "indep_D", {"C2"}, {"C1"}},
            {"LBCK_L", "indep_D", {"L2"}, {"L1"}},
        };
    return *cases;
}

}  // namespace eqbases
