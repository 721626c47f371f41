#include "eqbases/model.hpp"
#include "eqbases/proof.hpp"
#include "eqbases/search.hpp"
#include "eqbases/theory.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace eqbases;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;        // every requested check passed
constexpr int kFailed = 1;    // a verification came out negative
constexpr int kUsage = 2;     // bad invocation or unparsable input
constexpr int kBudget = 3;    // the time budget ran out mid-search

// Bad invocation discovered after flag parsing (missing files, bad
// combinations); mapped to kUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One invocation's worth of settings, shared across the subcommands.
struct RunConfig {
    bool json_out = false;
    bool timings = false;
    std::size_t size = 3;
    bool up_to_iso = false;
    bool count_only = false;
    bool exhaustive = false;
    std::size_t workers = 1;
    std::uint32_t seed = 20260823;
    double budget_raw = -1.0;  // negative = no budget given
    std::optional<double> budget_secs;
    bool stretch = false;
    std::vector<std::string> paths;
    std::string theory;
    std::string left;
    std::string right;
    std::string identity;
    std::string equation;
    std::string model_path;
    std::string signature;
    std::vector<std::string> hold;
    std::vector<std::string> fail;
    bool fixtures = false;
    std::size_t chain_n = 3;
    bool reduct = false;
    bool keep_one = false;
    bool audit_iso = false;
    std::string term_text;
};

double secs_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw UsageError("cannot read '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const Theory& catalog_theory(const std::string& name) {
    const Theory* t = builtin_theories().find_theory(name);
    if (!t) throw UsageError("unknown theory '" + name + "'");
    return *t;
}

// All operators of the bundled signatures in one signature, for parsing
// terms without naming a signature first.
Signature combined_signature() {
    Signature sig("builtin", {});
    for (const Signature& s : builtin_theories().signatures)
        for (const OpDecl& op : s.ops())
            if (!sig.declares(op.name)) sig.add_op(op.name, op.arity);
    return sig;
}

Signature chosen_signature(const RunConfig& cfg) {
    if (cfg.signature.empty()) return combined_signature();
    const Signature* sig = builtin_theories().find_signature(cfg.signature);
    if (!sig) throw UsageError("unknown signature '" + cfg.signature + "'");
    return *sig;
}

// Enumeration and comparison sizes are capped at 3; --stretch unlocks 4
// and implies a default wall-clock budget.
void check_size(const RunConfig& cfg, std::size_t size) {
    if (size == 0) throw UsageError("size must be at least 1");
    const std::size_t cap = cfg.stretch ? 4 : 3;
    if (size > cap)
        throw UsageError("size " + std::to_string(size) +
                         (cfg.stretch ? " is beyond the stretch cap of 4"
                                      : " needs --stretch (cap is 3 without it)"));
}

SearchOptions search_options(const RunConfig& cfg) {
    SearchOptions opts;
    opts.up_to_iso = cfg.up_to_iso;
    opts.workers = cfg.workers;
    opts.budget_secs = cfg.budget_secs;
    if (cfg.stretch && !opts.budget_secs) opts.budget_secs = 60.0;
    return opts;
}

ordered_json model_json(const FiniteAlgebra& a) {
    ordered_json tables = ordered_json::object();
    for (std::size_t i = 0; i < a.signature().ops().size(); ++i)
        tables[a.signature().ops()[i].name] = a.tables()[i];
    return ordered_json{{"name", a.name()},
                        {"signature", a.signature().name()},
                        {"size", a.size()},
                        {"tables", tables}};
}

ordered_json counterexample_json(const Counterexample& c) {
    ordered_json assignment = ordered_json::object();
    for (const auto& [var, value] : c.assignment) assignment[var] = value;
    return ordered_json{{"assignment", assignment},
                        {"lhs", c.lhs_value},
                        {"rhs", c.rhs_value}};
}

ordered_json sat_json(const SatReport& r, bool exhaustive) {
    ordered_json out{{"identity", r.identity}, {"holds", r.holds}};
    if (r.counterexample)
        out["counterexample"] = counterexample_json(*r.counterexample);
    if (exhaustive && !r.holds) {
        ordered_json all = ordered_json::array();
        for (const Counterexample& c : r.all_counterexamples)
            all.push_back(counterexample_json(c));
        out["counterexamples"] = std::move(all);
        out["truncated"] = r.truncated;
    }
    return out;
}

std::string describe_counterexample(const Counterexample& c) {
    std::string out;
    for (const auto& [var, value] : c.assignment) {
        if (!out.empty()) out += ", ";
        out += var + "=" + std::to_string(value);
    }
    if (out.empty()) out = "(no variables)";
    return out + " gives " + std::to_string(c.lhs_value) +
           " != " + std::to_string(c.rhs_value);
}

ordered_json comparison_json(const ComparisonReport& rep) {
    ordered_json out{{"left", rep.left},
                     {"right", rep.right},
                     {"size", rep.size},
                     {"mode", format_compare_mode(rep.mode)},
                     {"verdict", format_compare_verdict(rep.verdict)},
                     {"left_count", rep.left_count},
                     {"right_count", rep.right_count},
                     {"budget_exhausted", rep.budget_exhausted}};
    out["witness"] = rep.witness ? model_json(*rep.witness) : ordered_json();
    return out;
}

void print_comparison(const ComparisonReport& rep) {
    std::cout << rep.left << " vs " << rep.right << " at size " << rep.size
              << " [" << format_compare_mode(rep.mode) << "]: "
              << format_compare_verdict(rep.verdict) << " (" << rep.left_count
              << " vs " << rep.right_count << " models)";
    if (rep.budget_exhausted) std::cout << " [budget exhausted]";
    std::cout << "\n";
    if (rep.witness) std::cout << "witness:\n" << format_model(*rep.witness);
}

ordered_json independence_json(const IndependenceReport& rep, bool exhaustive) {
    ordered_json holds = ordered_json::array();
    for (const SatReport& sat : rep.must_hold) holds.push_back(sat_json(sat, false));
    ordered_json fails = ordered_json::array();
    for (const SatReport& sat : rep.must_fail)
        fails.push_back(sat_json(sat, exhaustive));
    return ordered_json{{"theory", rep.theory},  {"model", rep.model},
                        {"passed", rep.passed},  {"must_hold", std::move(holds)},
                        {"must_fail", std::move(fails)}, {"failure", rep.failure}};
}

void print_independence(const IndependenceReport& rep) {
    std::cout << rep.theory << " on " << rep.model << ": "
              << (rep.passed ? "pass" : "FAIL");
    std::string detail;
    for (const SatReport& sat : rep.must_hold) {
        if (!detail.empty()) detail += "; ";
        detail += sat.identity + (sat.holds ? " holds" : " FAILS");
    }
    for (const SatReport& sat : rep.must_fail) {
        if (!detail.empty()) detail += "; ";
        detail += sat.identity + (sat.holds ? " HOLDS" : " fails");
        if (!sat.holds && sat.counterexample)
            detail += " (" + describe_counterexample(*sat.counterexample) + ")";
    }
    std::cout << " (" << detail << ")";
    if (!rep.passed) std::cout << " -- " << rep.failure;
    std::cout << "\n";
}

int cmd_term(const RunConfig& cfg) {
    const Signature sig = chosen_signature(cfg);
    const Term t = parse_term(cfg.term_text, sig);
    const std::set<std::string> vars = variables(t);
    if (cfg.json_out) {
        ordered_json doc{{"command", "term"},
                         {"signature", sig.name()},
                         {"term", format_term(t)},
                         {"variables", vars}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << format_term(t) << "\n";
    }
    return kOk;
}

int cmd_check_proof(const RunConfig& cfg) {
    if (cfg.paths.empty())
        throw UsageError("check-proof needs at least one proof file");
    const TheoryFile& catalog = builtin_theories();
    ProofLibrary library(catalog);
    bool all_ok = true;
    std::size_t script_count = 0;
    ordered_json files = ordered_json::array();
    for (const std::string& path : cfg.paths) {
        const std::vector<ProofScript> scripts =
            parse_proofs(read_file(path), catalog);
        ordered_json entries = ordered_json::array();
        for (const ProofScript& script : scripts) {
            const CheckReport rep = check_script(script, library);
            ++script_count;
            all_ok = all_ok && rep.ok;
            std::optional<std::size_t> failed_step;
            std::string step_failure;
            for (const StepVerdict& step : rep.steps)
                if (!step.ok) {
                    failed_step = step.index;
                    step_failure = step.failure;
                    break;
                }
            if (cfg.json_out) {
                ordered_json entry{{"script", rep.script},
                                   {"theory", rep.theory},
                                   {"ok", rep.ok},
                                   {"definition", rep.is_definition},
                                   {"dependencies", rep.dependencies}};
                if (!rep.registered.empty()) entry["registered"] = rep.registered;
                if (failed_step) {
                    entry["failed_step"] = *failed_step;
                    entry["step_failure"] = step_failure;
                }
                if (!rep.failure.empty()) entry["failure"] = rep.failure;
                entries.push_back(std::move(entry));
            } else if (rep.ok) {
                std::cout << "ok " << rep.theory << "/" << rep.script << "\n";
            } else {
                std::cout << "FAILED " << rep.theory << "/" << rep.script;
                if (failed_step)
                    std::cout << " at step " << *failed_step << ": " << step_failure;
                if (!rep.failure.empty()) std::cout << " -- " << rep.failure;
                std::cout << "\n";
            }
        }
        files.push_back(ordered_json{{"path", path}, {"scripts", std::move(entries)}});
    }
    if (cfg.json_out) {
        ordered_json doc{{"command", "check-proof"},
                         {"files", std::move(files)},
                         {"scripts_checked", script_count},
                         {"ok", all_ok}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << script_count << " scripts, "
                  << (all_ok ? "all verified" : "some FAILED") << "\n";
    }
    return all_ok ? kOk : kFailed;
}

int cmd_eval(const RunConfig& cfg) {
    if (cfg.model_path.empty()) throw UsageError("eval needs --model <file>");
    const std::vector<FiniteAlgebra> models =
        parse_models(read_file(cfg.model_path), builtin_theories().signatures);
    if (models.empty()) throw UsageError("no models in '" + cfg.model_path + "'");

    Identity identity{"", Term::variable("x"), Term::variable("x")};
    if (!cfg.identity.empty()) {
        if (cfg.theory.empty())
            throw UsageError("--identity needs --theory to resolve the name");
        if (!cfg.equation.empty())
            throw UsageError("give either --identity or --equation, not both");
        const Identity* found = catalog_theory(cfg.theory).find(cfg.identity);
        if (!found)
            throw UsageError("theory '" + cfg.theory + "' has no identity '" +
                             cfg.identity + "'");
        identity = *found;
    } else if (!cfg.equation.empty()) {
        const std::size_t split = cfg.equation.find('=');
        if (split == std::string::npos)
            throw UsageError("--equation wants the form \"<term> = <term>\"");
        const Signature sig = combined_signature();
        identity = Identity{"equation",
                            parse_term(cfg.equation.substr(0, split), sig),
                            parse_term(cfg.equation.substr(split + 1), sig)};
    } else {
        throw UsageError("eval needs --identity (with --theory) or --equation");
    }

    const SatMode mode = cfg.exhaustive ? SatMode::Exhaustive : SatMode::FirstOnly;
    bool all_hold = true;
    ordered_json results = ordered_json::array();
    for (const FiniteAlgebra& m : models) {
        const SatReport rep = satisfies(m, identity, mode);
        all_hold = all_hold && rep.holds;
        if (cfg.json_out) {
            ordered_json entry = sat_json(rep, cfg.exhaustive);
            entry["model"] = m.name();
            results.push_back(std::move(entry));
        } else {
            std::cout << m.name() << ": " << (rep.holds ? "holds" : "fails");
            if (rep.counterexample)
                std::cout << " (" << describe_counterexample(*rep.counterexample)
                          << ")";
            std::cout << "\n";
            if (cfg.exhaustive && !rep.holds) {
                for (const Counterexample& c : rep.all_counterexamples)
                    std::cout << "  " << describe_counterexample(c) << "\n";
                if (rep.truncated)
                    std::cout << "  ... list truncated at "
                              << kMaxListedCounterexamples << "\n";
            }
        }
    }
    if (cfg.json_out) {
        ordered_json doc{{"command", "eval"},
                         {"identity", identity.name},
                         {"equation", format_term(identity.lhs) + " = " +
                                          format_term(identity.rhs)},
                         {"results", std::move(results)},
                         {"ok", all_hold}};
        std::cout << doc.dump(2) << "\n";
    }
    return all_hold ? kOk : kFailed;
}

int cmd_chain(const RunConfig& cfg) {
    if (cfg.keep_one && !cfg.reduct)
        throw UsageError("--keep-one only makes sense with --reduct");
    const FiniteAlgebra chain = lukasiewicz_chain(cfg.chain_n);
    const FiniteAlgebra out = cfg.reduct ? bck_reduct(chain, cfg.keep_one) : chain;
    if (cfg.json_out) {
        ordered_json doc{{"command", "chain"},
                         {"n", cfg.chain_n},
                         {"reduct", cfg.reduct},
                         {"model", model_json(out)}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << format_model(out);
    }
    return kOk;
}

int cmd_models(const RunConfig& cfg) {
    if (cfg.theory.empty()) throw UsageError("models needs --theory <name>");
    if (cfg.audit_iso && cfg.up_to_iso)
        throw UsageError("--audit-iso audits the full model set; drop --up-to-iso");
    check_size(cfg, cfg.size);
    const Theory& t = catalog_theory(cfg.theory);
    const auto start = std::chrono::steady_clock::now();
    const SearchResult result = enumerate_models(t, cfg.size, search_options(cfg));
    const double elapsed = secs_since(start);

    bool iso_audit_ok = true;
    if (cfg.audit_iso) {
        std::set<std::vector<std::vector<std::size_t>>> member;
        for (const FiniteAlgebra& m : result.models) member.insert(m.tables());
        std::mt19937 rng(cfg.seed);
        std::vector<std::size_t> perm(cfg.size);
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (const FiniteAlgebra& m : result.models)
            for (int round = 0; round < 4 && iso_audit_ok; ++round) {
                std::shuffle(perm.begin(), perm.end(), rng);
                std::vector<std::vector<std::size_t>> mapped = m.tables();
                const auto& ops = m.signature().ops();
                for (std::size_t op = 0; op < mapped.size(); ++op)
                    for (std::size_t flat = 0; flat < mapped[op].size(); ++flat) {
                        std::size_t rest = flat;
                        std::vector<std::size_t> digits(ops[op].arity);
                        for (std::size_t i = digits.size(); i-- > 0;) {
                            digits[i] = rest % cfg.size;
                            rest /= cfg.size;
                        }
                        std::size_t target = 0;
                        for (std::size_t d : digits)
                            target = target * cfg.size + perm[d];
                        mapped[op][target] = perm[m.tables()[op][flat]];
                    }
                if (!member.count(mapped)) iso_audit_ok = false;
            }
    }

    if (cfg.json_out) {
        ordered_json doc{{"command", "models"},
                         {"theory", cfg.theory},
                         {"size", cfg.size},
                         {"up_to_iso", cfg.up_to_iso},
                         {"count", result.models.size()},
                         {"budget_exhausted", result.budget_exhausted}};
        if (!cfg.count_only) {
            ordered_json list = ordered_json::array();
            for (const FiniteAlgebra& m : result.models)
                list.push_back(model_json(m));
            doc["models"] = std::move(list);
        }
        if (cfg.audit_iso) doc["iso_audit"] = iso_audit_ok ? "pass" : "fail";
        if (cfg.timings) {
            doc["secs"] = elapsed;
            doc["nodes"] = result.nodes;
            doc["prunes"] = result.prunes;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        if (!cfg.count_only)
            for (const FiniteAlgebra& m : result.models)
                std::cout << format_model(m);
        std::cout << "models: " << result.models.size();
        if (result.budget_exhausted) std::cout << " [budget exhausted]";
        if (cfg.audit_iso)
            std::cout << " [iso audit " << (iso_audit_ok ? "pass" : "FAIL") << "]";
        std::cout << " (" << elapsed << " s)\n";
    }
    if (result.budget_exhausted) return kBudget;
    return iso_audit_ok ? kOk : kFailed;
}

int cmd_compare(const RunConfig& cfg) {
    if (cfg.left.empty() || cfg.right.empty())
        throw UsageError("compare needs --left and --right theory names");
    check_size(cfg, cfg.size);
    const Theory& left = catalog_theory(cfg.left);
    const Theory& right = catalog_theory(cfg.right);
    const auto start = std::chrono::steady_clock::now();
    const ComparisonReport rep =
        left.signature() == right.signature()
            ? compare_same_signature(left, right, cfg.size, search_options(cfg))
            : compare_with_constant_expansion(left, right, cfg.size,
                                              search_options(cfg));
    const double elapsed = secs_since(start);
    if (cfg.json_out) {
        ordered_json doc{{"command", "compare"}};
        doc.update(comparison_json(rep));
        if (cfg.timings) doc["secs"] = elapsed;
        std::cout << doc.dump(2) << "\n";
    } else {
        print_comparison(rep);
        std::cout << "compared in " << elapsed << " s\n";
    }
    if (rep.budget_exhausted) return kBudget;
    return rep.verdict == CompareVerdict::Equal ? kOk : kFailed;
}

int cmd_independence(const RunConfig& cfg) {
    std::vector<IndependenceReport> reports;
    if (cfg.fixtures) {
        for (const IndependenceCase& c : builtin_independence_cases()) {
            const FiniteAlgebra* model = nullptr;
            for (const FiniteAlgebra& m : builtin_independence_models())
                if (m.name() == c.model) model = &m;
            reports.push_back(verify_independence(catalog_theory(c.theory), *model,
                                                  c.must_hold, c.must_fail));
        }
    } else {
        if (cfg.theory.empty() || cfg.model_path.empty())
            throw UsageError(
                "independence needs --fixtures, or --theory with --model, "
                "--hold and --fail");
        const Theory& t = catalog_theory(cfg.theory);
        const std::vector<FiniteAlgebra> models =
            parse_models(read_file(cfg.model_path), builtin_theories().signatures);
        if (models.empty()) throw UsageError("no models in '" + cfg.model_path + "'");
        for (const FiniteAlgebra& m : models)
            reports.push_back(verify_independence(t, m, cfg.hold, cfg.fail));
    }

    bool all_passed = true;
    ordered_json cases = ordered_json::array();
    for (const IndependenceReport& rep : reports) {
        all_passed = all_passed && rep.passed;
        if (cfg.json_out)
            cases.push_back(independence_json(rep, cfg.exhaustive));
        else
            print_independence(rep);
    }
    if (cfg.json_out) {
        ordered_json doc{{"command", "independence"},
                         {"cases", std::move(cases)},
                         {"ok", all_passed}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << reports.size() << " checks, "
                  << (all_passed ? "all pass" : "some FAIL") << "\n";
    }
    return all_passed ? kOk : kFailed;
}

int cmd_verify_theorems(const RunConfig& cfg) {
    check_size(cfg, cfg.size);
    const auto start = std::chrono::steady_clock::now();
    const SearchOptions opts = search_options(cfg);
    bool all_equal = true;
    bool budget_hit = false;
    ordered_json comparisons = ordered_json::array();
    for (std::size_t n = 1; n <= cfg.size; ++n) {
        const ComparisonReport reps[] = {
            compare_with_constant_expansion(catalog_theory("MV_A"),
                                            catalog_theory("MV_M"), n, opts),
            compare_same_signature(catalog_theory("CBCK_C"),
                                   catalog_theory("CBCK_B_elim"), n, opts),
            compare_same_signature(catalog_theory("LBCK_L"),
                                   catalog_theory("LBCK_B_elim"), n, opts),
        };
        for (const ComparisonReport& rep : reps) {
            all_equal = all_equal && rep.verdict == CompareVerdict::Equal;
            budget_hit = budget_hit || rep.budget_exhausted;
            if (cfg.json_out)
                comparisons.push_back(comparison_json(rep));
            else
                print_comparison(rep);
        }
    }

    bool all_passed = true;
    ordered_json independence = ordered_json::array();
    for (const IndependenceCase& c : builtin_independence_cases()) {
        const FiniteAlgebra* model = nullptr;
        for (const FiniteAlgebra& m : builtin_independence_models())
            if (m.name() == c.model) model = &m;
        const IndependenceReport rep = verify_independence(
            catalog_theory(c.theory), *model, c.must_hold, c.must_fail);
        all_passed = all_passed && rep.passed;
        if (cfg.json_out)
            independence.push_back(independence_json(rep, false));
        else
            print_independence(rep);
    }

    const bool ok = all_equal && all_passed && !budget_hit;
    const double elapsed = secs_since(start);
    if (cfg.json_out) {
        ordered_json doc{{"command", "verify-theorems"},
                         {"size", cfg.size},
                         {"workers", cfg.workers},
                         {"comparisons", std::move(comparisons)},
                         {"independence", std::move(independence)},
                         {"budget_exhausted", budget_hit},
                         {"ok", ok}};
        if (cfg.timings) doc["secs"] = elapsed;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "verify-theorems: "
                  << (ok ? "PASS" : budget_hit ? "BUDGET EXHAUSTED" : "FAIL")
                  << " (" << 3 * cfg.size << " comparisons, "
                  << builtin_independence_cases().size()
                  << " independence checks) in " << elapsed << " s\n";
    }
    if (budget_hit) return kBudget;
    return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equational toolkit: term handling, proof replay, finite-model "
                 "search, and axiom-system comparison"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_output_flags = [&](CLI::App* sub) {
        sub->add_flag("--json", cfg.json_out, "emit one JSON document");
        sub->add_flag("--timings", cfg.timings, "include wall-clock fields in JSON");
    };
    const auto add_search_flags = [&](CLI::App* sub) {
        sub->add_option("--workers", cfg.workers, "search threads (default 1)");
        sub->add_option("--budget-secs", cfg.budget_raw,
                        "wall-clock budget; exceeding it exits 3");
        sub->add_flag("--stretch", cfg.stretch,
                      "allow size 4 (default budget 60 s unless --budget-secs)");
    };

    CLI::App* term = app.add_subcommand("term", "parse a term and reprint it canonically");
    term->add_option("term", cfg.term_text, "term text")->required();
    term->add_option("--signature", cfg.signature,
                     "signature to parse against (default: all bundled operators)");
    add_output_flags(term);

    CLI::App* check = app.add_subcommand("check-proof", "replay proof script files");
    check->add_option("files", cfg.paths, "proof files, checked in order");
    add_output_flags(check);

    CLI::App* eval = app.add_subcommand("eval", "evaluate an identity in model files");
    eval->add_option("--model", cfg.model_path, "model file")->required();
    eval->add_option("--theory", cfg.theory, "bundled theory the identity lives in");
    eval->add_option("--identity", cfg.identity, "identity name within --theory");
    eval->add_option("--equation", cfg.equation, "ad-hoc \"<term> = <term>\"");
    eval->add_flag("--exhaustive", cfg.exhaustive, "list every counterexample");
    add_output_flags(eval);

    CLI::App* chain = app.add_subcommand("chain", "emit an n-element chain algebra");
    chain->add_option("--n", cfg.chain_n, "number of elements (>= 2)")->required();
    chain->add_flag("--reduct", cfg.reduct, "emit the implication reduct instead");
    chain->add_flag("--keep-one", cfg.keep_one,
                    "keep the top constant in the reduct signature");
    add_output_flags(chain);

    CLI::App* models = app.add_subcommand("models", "enumerate finite models");
    models->add_option("--theory", cfg.theory, "bundled theory name")->required();
    models->add_option("--size", cfg.size, "carrier size")->required();
    models->add_flag("--up-to-iso", cfg.up_to_iso,
                     "one least representative per isomorphism class");
    models->add_flag("--count-only", cfg.count_only, "suppress the tables");
    models->add_flag("--audit-iso", cfg.audit_iso,
                     "re-check closure under seeded random relabelings");
    models->add_option("--seed", cfg.seed, "seed for --audit-iso");
    add_search_flags(models);
    add_output_flags(models);

    CLI::App* compare = app.add_subcommand("compare", "compare two theories' models");
    compare->add_option("--left", cfg.left, "left theory")->required();
    compare->add_option("--right", cfg.right, "right theory")->required();
    compare->add_option("--size", cfg.size, "carrier size")->required();
    add_search_flags(compare);
    add_output_flags(compare);

    CLI::App* indep = app.add_subcommand("independence",
                                         "check hold/fail splits in models");
    indep->add_flag("--fixtures", cfg.fixtures,
                    "run the six bundled counterexample checks");
    indep->add_option("--theory", cfg.theory, "theory whose identities split");
    indep->add_option("--model", cfg.model_path, "model file");
    indep->add_option("--hold", cfg.hold, "identities that must hold")
        ->delimiter(',');
    indep->add_option("--fail", cfg.fail, "identities that must fail")
        ->delimiter(',');
    indep->add_flag("--exhaustive", cfg.exhaustive, "list every counterexample");
    add_output_flags(indep);

    CLI::App* verify = app.add_subcommand(
        "verify-theorems", "run the bundled comparisons and counterexample checks");
    verify->add_option("--size", cfg.size, "compare at sizes 1..n (default 3)");
    add_search_flags(verify);
    add_output_flags(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (cfg.budget_raw >= 0) cfg.budget_secs = cfg.budget_raw;

    try {
        if (app.got_subcommand(term)) return cmd_term(cfg);
        if (app.got_subcommand(check)) return cmd_check_proof(cfg);
        if (app.got_subcommand(eval)) return cmd_eval(cfg);
        if (app.got_subcommand(chain)) return cmd_chain(cfg);
        if (app.got_subcommand(models)) return cmd_models(cfg);
        if (app.got_subcommand(compare)) return cmd_compare(cfg);
        if (app.got_subcommand(indep)) return cmd_independence(cfg);
        if (app.got_subcommand(verify)) return cmd_verify_theorems(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
