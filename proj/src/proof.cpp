#include "eqbases/proof.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace eqbases {

std::string format_direction(Direction d) {
    switch (d) {
        case Direction::LeftToRight: return "lr";
        case Direction::RightToLeft: return "rl";
        case Direction::Either: return "either";
    }
    return "either";
}

Term apply_identity(const Term& t, const Identity& i, Direction dir, const Position& p,
                    const Substitution& s) {
    if (dir == Direction::Either)
        throw std::invalid_argument("apply_identity: direction must be lr or rl");
    const Term& from = dir == Direction::LeftToRight ? i.lhs : i.rhs;
    const Term& to = dir == Direction::LeftToRight ? i.rhs : i.lhs;
    Term redex = substitute(from, s);
    Term sub = subterm_at(t, p);
    if (redex != sub)
        throw std::invalid_argument("apply_identity: " + i.name + " " + format_direction(dir) +
                                    " at " + format_position(p) + ": expected redex " +
                                    format_term(redex) + ", found " + format_term(sub));
    return replace_at(t, p, substitute(to, s));
}

std::optional<StepWitness> verify_step(const Term& current, const ProofStep& step,
                                       const Identity& just,
                                       std::vector<NearMiss>* near_misses) {
    std::vector<Position> positions;
    if (step.position)
        positions.push_back(*step.position);
    else
        positions = all_positions(current);

    std::vector<Direction> dirs;
    if (step.direction == Direction::Either)
        dirs = {Direction::LeftToRight, Direction::RightToLeft};
    else
        dirs = {step.direction};

    for (const Position& p : positions) {
        Term sub = current;
        try {
            sub = subterm_at(current, p);
        } catch (const std::out_of_range&) {
            continue;  // an explicit position may lie outside the term
        }
        for (Direction d : dirs) {
            const Term& from = d == Direction::LeftToRight ? just.lhs : just.rhs;
            const Term& to = d == Direction::LeftToRight ? just.rhs : just.lhs;
            std::optional<Substitution> base = match_term(from, sub);
            if (!base) continue;
            // The target fixes everything else: it must agree with the
            // current term outside p, and its p-subterm must instantiate
            // the identity's other side compatibly with the redex match.
            bool hit = false;
            try {
                Term expected = subterm_at(step.target, p);
                if (replace_at(current, p, expected) == step.target) {
                    std::optional<Substitution> full = match_term(to, expected, *base);
                    if (full) {
                        hit = true;
                        if (near_misses) near_misses->clear();
                        return StepWitness{p, std::move(*full), d};
                    }
                }
            } catch (const std::out_of_range&) {
            }
            if (!hit && near_misses) near_misses->push_back(NearMiss{p, d});
        }
    }
    return std::nullopt;
}

ProofLibrary::ProofLibrary(const TheoryFile& catalog) : catalog_(&catalog) {}

ProofLibrary::TheoryState& ProofLibrary::state(const std::string& theory) {
    auto it = states_.find(theory);
    if (it != states_.end()) return it->second;
    const Theory* t = catalog_->find_theory(theory);
    if (!t) throw std::invalid_argument("unknown theory '" + theory + "'");
    TheoryState fresh;
    fresh.working = t->signature();
    return states_.emplace(theory, std::move(fresh)).first->second;
}

const ProofLibrary::TheoryState* ProofLibrary::find_state(const std::string& theory) const {
    auto it = states_.find(theory);
    return it == states_.end() ? nullptr : &it->second;
}

const Signature& ProofLibrary::working_signature(const std::string& theory) const {
    const TheoryState* s = find_state(theory);
    if (s) return s->working;
    const Theory* t = catalog_->find_theory(theory);
    if (!t) throw std::invalid_argument("unknown theory '" + theory + "'");
    return t->signature();
}

const Identity* ProofLibrary::resolve(const std::string& theory, const std::string& name) const {
    const Theory* t = catalog_->find_theory(theory);
    if (t)
        if (const Identity* i = t->find(name)) return i;
    if (const TheoryState* s = find_state(theory)) {
        for (const Identity& i : s->definitions)
            if (i.name == name) return &i;
        for (const Identity& i : s->lemmas)
            if (i.name == name) return &i;
    }
    return nullptr;
}

bool ProofLibrary::is_axiom(const std::string& theory, const std::string& name) const {
    const Theory* t = catalog_->find_theory(theory);
    return t && t->find(name) != nullptr;
}

const Identity* ProofLibrary::find_lemma(const std::string& theory,
                                         const std::string& name) const {
    if (const TheoryState* s = find_state(theory))
        for (const Identity& i : s->lemmas)
            if (i.name == name) return &i;
    return nullptr;
}

const std::string* ProofLibrary::definition_constancy(const std::string& theory,
                                                      const std::string& name) const {
    if (const TheoryState* s = find_state(theory)) {
        auto it = s->def_constancy.find(name);
        if (it != s->def_constancy.end()) return &it->second;
    }
    return nullptr;
}

void ProofLibrary::add_lemma(const std::string& theory, Identity goal) {
    if (resolve(theory, goal.name))
        throw std::invalid_argument("name '" + goal.name + "' already in use in theory '" +
                                    theory + "'");
    state(theory).lemmas.push_back(std::move(goal));
}

void ProofLibrary::add_definition(const std::string& theory, const std::string& op, Term body,
                                  const std::string& constancy) {
    std::string equation = op + "_def";
    if (resolve(theory, equation))
        throw std::invalid_argument("name '" + equation + "' already in use in theory '" +
                                    theory + "'");
    TheoryState& s = state(theory);
    s.working.add_op(op, 0);  // throws on a duplicate operator
    s.definitions.push_back(Identity{equation, Term::apply(op), std::move(body)});
    s.def_constancy.emplace(equation, constancy);
}

namespace {

// Structural equality modulo a bijective variable renaming.
bool renames_to(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                std::map<std::string, std::string>& bwd) {
    if (a.is_variable() != b.is_variable()) return false;
    if (a.is_variable()) {
        auto f = fwd.find(a.symbol());
        if (f != fwd.end()) return f->second == b.symbol();
        if (bwd.count(b.symbol())) return false;
        fwd.emplace(a.symbol(), b.symbol());
        bwd.emplace(b.symbol(), a.symbol());
        return true;
    }
    if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
    for (std::size_t k = 0; k < a.args().size(); ++k)
        if (!renames_to(a.args()[k], b.args()[k], fwd, bwd)) return false;
    return true;
}

bool equal_up_to_renaming(const Term& a, const Term& b) {
    std::map<std::string, std::string> fwd, bwd;
    return renames_to(a, b, fwd, bwd);
}

}  // namespace

CheckReport check_script(const ProofScript& script, ProofLibrary& library) {
    CheckReport report;
    report.script = script.name;
    report.theory = script.theory;
    report.is_definition = !script.is_lemma();

    if (!library.catalog().find_theory(script.theory)) {
        report.failure = "unknown theory '" + script.theory + "'";
        return report;
    }

    std::set<std::string> deps;
    if (script.is_lemma()) {
        const LemmaBody& body = script.lemma();
        if (library.resolve(script.theory, script.name)) {
            report.failure = "name '" + script.name + "' already in use in theory '" +
                             script.theory + "'";
            return report;
        }
        bool ok = true;
        if (body.start != body.goal.lhs) {
            report.failure = "chain starts at " + format_term(body.start) +
                             " but the goal's left side is " + format_term(body.goal.lhs);
            ok = false;
        }
        Term current = body.start;
        for (std::size_t k = 0; k < body.steps.size(); ++k) {
            const ProofStep& step = body.steps[k];
            StepVerdict v;
            v.index = k;
            v.justification = step.justification;
            const Identity* just = library.resolve(script.theory, step.justification);
            if (!just) {
                v.failure = "unknown justification '" + step.justification + "'";
                ok = false;
            } else {
                deps.insert(step.justification);
                std::vector<NearMiss> misses;
                std::optional<StepWitness> w = verify_step(current, step, *just, &misses);
                if (w) {
                    v.ok = true;
                    v.witness = std::move(*w);
                } else {
                    v.failure = "no rewrite by '" + step.justification + "' reaches " +
                                format_term(step.target);
                    v.near_misses = std::move(misses);
                    ok = false;
                }
            }
            report.steps.push_back(std::move(v));
            current = step.target;  // the written chain fixes every later state
        }
        if (current != body.goal.rhs) {
            if (report.failure.empty())
                report.failure = "chain ends at " + format_term(current) +
                                 " but the goal's right side is " + format_term(body.goal.rhs);
            ok = false;
        }
        report.ok = ok;
        if (ok)
            library.add_lemma(script.theory,
                              Identity{script.name, body.goal.lhs, body.goal.rhs});
    } else {
        const DefinitionBody& body = script.definition();
        deps.insert(body.constancy);
        const Identity* lemma = library.find_lemma(script.theory, body.constancy);
        if (!lemma) {
            report.failure = "constancy lemma '" + body.constancy +
                             "' is not a verified lemma in theory '" + script.theory + "'";
        } else {
            std::set<std::string> lv = variables(lemma->lhs);
            std::set<std::string> rv = variables(lemma->rhs);
            bool disjoint = std::none_of(lv.begin(), lv.end(), [&](const std::string& v) {
                return rv.count(v) != 0;
            });
            if (!disjoint) {
                report.failure = "constancy lemma '" + body.constancy +
                                 "' has sides sharing variables";
            } else if (!equal_up_to_renaming(lemma->lhs, body.body) &&
                       !equal_up_to_renaming(lemma->rhs, body.body)) {
                report.failure = "no side of constancy lemma '" + body.constancy +
                                 "' is the definition body up to renaming";
            } else {
                try {
                    library.add_definition(script.theory, body.op, body.body, body.constancy);
                    report.ok = true;
                    report.registered = body.op + "_def";
                } catch (const std::invalid_argument& e) {
                    report.failure = e.what();
                }
            }
        }
    }
    report.dependencies.assign(deps.begin(), deps.end());
    return report;
}

std::set<std::string> dependency_closure(const std::vector<CheckReport>& reports,
                                         const ProofLibrary& library,
                                         const std::string& root,
                                         const std::set<std::string>& assumed_roots) {
    const CheckReport* root_report = nullptr;
    for (const CheckReport& r : reports)
        if (r.script == root) root_report = &r;
    std::string theory;
    if (root_report)
        theory = root_report->theory;
    else if (!reports.empty())
        theory = reports.front().theory;

    auto find_script = [&](const std::string& name) -> const CheckReport* {
        for (const CheckReport& r : reports)
            if (r.script == name) return &r;
        return nullptr;
    };

    std::set<std::string> terminals;
    std::set<std::string> visited;
    std::deque<std::string> work;
    work.push_back(root);
    while (!work.empty()) {
        std::string name = work.front();
        work.pop_front();
        if (!visited.insert(name).second) continue;
        if (assumed_roots.count(name)) {
            terminals.insert(name);
            continue;
        }
        if (!theory.empty() && library.is_axiom(theory, name)) {
            terminals.insert(name);
            continue;
        }
        if (const CheckReport* r = find_script(name)) {
            for (const std::string& d : r->dependencies) work.push_back(d);
            continue;
        }
        if (!theory.empty())
            if (const std::string* constancy = library.definition_constancy(theory, name)) {
                work.push_back(*constancy);
                continue;
            }
        throw std::invalid_argument("dependency_closure: cannot resolve '" + name + "'");
    }
    return terminals;
}

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string strip_line(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.pop_back();
    return s;
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

ParseError relocate(const ParseError& e, const std::string& message_prefix,
                    std::size_t file_line, std::size_t column_offset) {
    return ParseError(message_prefix + e.what(), file_line, column_offset + e.column() - 1);
}

Position parse_position_token(const std::string& token, std::size_t line_no) {
    if (token.size() < 2 || token.front() != '[' || token.back() != ']')
        throw ParseError("bad position '" + token + "'", line_no, 1);
    std::string inner = token.substr(1, token.size() - 2);
    Position p;
    if (inner.empty()) return p;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = inner.find(',', start);
        std::string piece = inner.substr(start, comma - start);
        try {
            std::size_t used = 0;
            p.push_back(std::stoul(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ParseError("bad position '" + token + "'", line_no, 1);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return p;
}

}  // namespace

std::vector<ProofScript> parse_proofs(const std::string& text, const TheoryFile& catalog) {
    std::vector<ProofScript> out;
    std::map<std::string, Signature> parse_sigs;  // per theory, grown by defines

    auto working_sig = [&](const std::string& theory) -> Signature& {
        auto it = parse_sigs.find(theory);
        if (it != parse_sigs.end()) return it->second;
        return parse_sigs.emplace(theory, catalog.find_theory(theory)->signature())
            .first->second;
    };

    enum class State { None, WantGoal, WantChain, WantStart, InChain } state = State::None;
    std::string cur_name, cur_theory, last_theory;
    std::optional<Identity> cur_goal;
    std::optional<Term> cur_start;
    std::vector<ProofStep> cur_steps;

    auto flush = [&]() {
        if (state == State::InChain)
            out.push_back(ProofScript{cur_name, cur_theory,
                                      LemmaBody{*cur_goal, *cur_start, std::move(cur_steps)}});
        cur_steps.clear();
        state = State::None;
    };

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_line(raw);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        bool indented = line[0] == ' ' || line[0] == '\t';

        if (!indented) {
            if (state == State::WantGoal || state == State::WantChain ||
                state == State::WantStart)
                throw ParseError("incomplete proof '" + cur_name + "'", line_no, 1);
            flush();
            std::vector<std::string> words = split_words(line);
            if (words[0] == "proof") {
                if (words.size() != 4 || words[2] != "in" || !is_identifier(words[1]) ||
                    !is_identifier(words[3]))
                    throw ParseError("expected 'proof <name> in <theory>'", line_no, 1);
                if (!catalog.find_theory(words[3]))
                    throw ParseError("proof '" + words[1] + "' references unknown theory '" +
                                         words[3] + "'",
                                     line_no, 1);
                cur_name = words[1];
                cur_theory = words[3];
                last_theory = cur_theory;
                state = State::WantGoal;
            } else if (words[0] == "define") {
                // define <op> := <body> constancy <lemma>
                if (last_theory.empty())
                    throw ParseError("define before any proof", line_no, 1);
                std::size_t assign = line.find(":=");
                std::size_t marker = line.rfind(" constancy ");
                if (assign == std::string::npos || marker == std::string::npos ||
                    marker < assign)
                    throw ParseError("expected 'define <op> := <body> constancy <lemma>'",
                                     line_no, 1);
                std::vector<std::string> head = split_words(line.substr(0, assign));
                if (head.size() != 2 || head[0] != "define" || !is_identifier(head[1]))
                    throw ParseError("bad defined operator name", line_no, 1);
                std::vector<std::string> tail = split_words(line.substr(marker + 11));
                if (tail.size() != 1 || !is_identifier(tail[0]))
                    throw ParseError("bad constancy lemma name", line_no, 1);
                Signature& sig = working_sig(last_theory);
                std::string body_text = line.substr(assign + 2, marker - assign - 2);
                Term body = Term::variable("_");
                try {
                    body = parse_term(body_text, sig);
                } catch (const ParseError& e) {
                    throw relocate(e, "definition body: ", line_no, assign + 3);
                }
                try {
                    sig.add_op(head[1], 0);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), line_no, 1);
                }
                out.push_back(ProofScript{head[1] + "_definition", last_theory,
                                          DefinitionBody{head[1], std::move(body), tail[0]}});
            } else {
                throw ParseError("expected 'proof' or 'define', found '" + words[0] + "'",
                                 line_no, 1);
            }
            continue;
        }

        std::size_t content = line.find_first_not_of(" \t");
        std::string trimmed = line.substr(content);
        switch (state) {
            case State::None:
                throw ParseError("indented line outside a proof", line_no, 1);
            case State::WantGoal: {
                if (trimmed.rfind("goal:", 0) != 0)
                    throw ParseError("expected 'goal: <term> = <term>'", line_no, 1);
                std::string rest = trimmed.substr(5);
                std::size_t eq = rest.find('=');
                if (eq == std::string::npos)
                    throw ParseError("goal needs '='", line_no, 1);
                const Signature& sig = working_sig(cur_theory);
                std::size_t base = content + 5;  // 0-based start of rest in line
                Term lhs = Term::variable("_");
                Term rhs = Term::variable("_");
                try {
                    lhs = parse_term(rest.substr(0, eq), sig);
                } catch (const ParseError& e) {
                    throw relocate(e, "goal left side: ", line_no, base + 1);
                }
                try {
                    rhs = parse_term(rest.substr(eq + 1), sig);
                } catch (const ParseError& e) {
                    throw relocate(e, "goal right side: ", line_no, base + eq + 2);
                }
                cur_goal = Identity{cur_name, std::move(lhs), std::move(rhs)};
                state = State::WantChain;
                break;
            }
            case State::WantChain:
                if (trimmed != "chain:")
                    throw ParseError("expected 'chain:'", line_no, 1);
                state = State::WantStart;
                break;
            case State::WantStart: {
                try {
                    cur_start = parse_term(line, working_sig(cur_theory));
                } catch (const ParseError& e) {
                    throw relocate(e, "chain start: ", line_no, 1);
                }
                state = State::InChain;
                break;
            }
            case State::InChain: {
                if (trimmed[0] != '=')
                    throw ParseError("expected '= <term>  by <name> ...'", line_no, 1);
                std::string rest = trimmed.substr(1);
                std::size_t by = rest.rfind(" by ");
                if (by == std::string::npos)
                    throw ParseError("step needs 'by <justification>'", line_no, 1);
                Term target = Term::variable("_");
                try {
                    target = parse_term(rest.substr(0, by), working_sig(cur_theory));
                } catch (const ParseError& e) {
                    throw relocate(e, "step term: ", line_no, content + 2);
                }
                std::vector<std::string> tail = split_words(rest.substr(by + 4));
                if (tail.empty() || !is_identifier(tail[0]))
                    throw ParseError("bad justification name", line_no, 1);
                ProofStep step{std::move(target), tail[0], Direction::Either, std::nullopt};
                std::size_t idx = 1;
                if (idx < tail.size() && (tail[idx] == "lr" || tail[idx] == "rl")) {
                    step.direction = tail[idx] == "lr" ? Direction::LeftToRight
                                                       : Direction::RightToLeft;
                    ++idx;
                }
                if (idx < tail.size() && tail[idx] == "at") {
                    std::string token;
                    for (++idx; idx < tail.size(); ++idx) token += tail[idx];
                    step.position = parse_position_token(token, line_no);
                } else if (idx != tail.size()) {
                    throw ParseError("unexpected '" + tail[idx] + "' after justification",
                                     line_no, 1);
                }
                cur_steps.push_back(std::move(step));
                break;
            }
        }
    }
    if (state == State::WantGoal || state == State::WantChain || state == State::WantStart)
        throw ParseError("incomplete proof '" + cur_name + "'", line_no == 0 ? 1 : line_no, 1);
    flush();
    return out;
}

}  // namespace eqbases
