#include "eqbases/theory.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace eqbases {

Theory::Theory(std::string name, Signature sig, std::vector<Identity> identities)
    : name_(std::move(name)), signature_(std::move(sig)) {
    for (auto& i : identities) add(std::move(i));
}

const Identity* Theory::find(const std::string& id_name) const {
    for (const auto& i : identities_)
        if (i.name == id_name) return &i;
    return nullptr;
}

void Theory::add(Identity i) {
    if (find(i.name))
        throw std::invalid_argument("duplicate identity '" + i.name + "' in theory '" +
                                    name_ + "'");
    identities_.push_back(std::move(i));
}

const Signature* TheoryFile::find_signature(const std::string& name) const {
    for (const auto& s : signatures)
        if (s.name() == name) return &s;
    return nullptr;
}

const Theory* TheoryFile::find_theory(const std::string& name) const {
    for (const auto& t : theories)
        if (t.name() == name) return &t;
    return nullptr;
}

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

// Strips the '#' comment and trailing whitespace; returns the content.
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

// Reparents a term-parse error to file coordinates: the term occupies one
// line starting at the given column offset.
ParseError relocate(const ParseError& e, const std::string& message_prefix,
                    std::size_t file_line, std::size_t column_offset) {
    return ParseError(message_prefix + e.what(), file_line, column_offset + e.column() - 1);
}

}  // namespace

TheoryFile parse_theory(const std::string& text) {
    TheoryFile out;
    // Block being filled: none, a signature, or a theory.
    enum class Block { None, Sig, Thy } block = Block::None;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_line(raw);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        bool indented = line[0] == ' ' || line[0] == '\t';
        std::vector<std::string> words = split_words(line);

        if (!indented) {
            if (words[0] == "signature") {
                if (words.size() != 2 || !is_identifier(words[1]))
                    throw ParseError("expected 'signature <name>'", line_no, 1);
                if (out.find_signature(words[1]))
                    throw ParseError("duplicate signature '" + words[1] + "'", line_no, 1);
                out.signatures.emplace_back(words[1], std::vector<OpDecl>{});
                block = Block::Sig;
            } else if (words[0] == "theory") {
                if (words.size() != 4 || words[2] != "over" || !is_identifier(words[1]))
                    throw ParseError("expected 'theory <name> over <signature>'", line_no, 1);
                if (out.find_theory(words[1]))
                    throw ParseError("duplicate theory '" + words[1] + "'", line_no, 1);
                const Signature* sig = out.find_signature(words[3]);
                if (!sig)
                    throw ParseError("theory '" + words[1] + "' references undeclared signature '" +
                                         words[3] + "'",
                                     line_no, 1);
                out.theories.emplace_back(words[1], *sig, std::vector<Identity>{});
                block = Block::Thy;
            } else {
                throw ParseError("expected 'signature' or 'theory', found '" + words[0] + "'",
                                 line_no, 1);
            }
            continue;
        }

        if (block == Block::Sig) {
            if (words.size() != 3 || words[0] != "op" || !is_identifier(words[1]))
                throw ParseError("expected 'op <name> <arity>'", line_no, 1);
            std::size_t arity = 0;
            try {
                std::size_t used = 0;
                arity = std::stoul(words[2], &used);
                if (used != words[2].size()) throw std::invalid_argument(words[2]);
            } catch (const std::exception&) {
                throw ParseError("bad arity '" + words[2] + "'", line_no, 1);
            }
            try {
                out.signatures.back().add_op(words[1], arity);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no, 1);
            }
        } else if (block == Block::Thy) {
            std::size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected '<name>: <term> = <term>'", line_no, 1);
            std::vector<std::string> name_words = split_words(line.substr(0, colon));
            if (name_words.size() != 1 || !is_identifier(name_words[0]))
                throw ParseError("bad identity name", line_no, 1);
            std::size_t eq = line.find('=', colon + 1);
            if (eq == std::string::npos)
                throw ParseError("identity needs '='", line_no, 1);
            Theory& thy = out.theories.back();
            Term lhs = Term::variable("_");
            Term rhs = Term::variable("_");
            try {
                lhs = parse_term(line.substr(colon + 1, eq - colon - 1), thy.signature());
            } catch (const ParseError& e) {
                throw relocate(e, "left side: ", line_no, colon + 2);
            }
            try {
                rhs = parse_term(line.substr(eq + 1), thy.signature());
            } catch (const ParseError& e) {
                throw relocate(e, "right side: ", line_no, eq + 2);
            }
            try {
                thy.add(Identity{name_words[0], std::move(lhs), std::move(rhs)});
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no, 1);
            }
        } else {
            throw ParseError("indented line outside a block", line_no, 1);
        }
    }
    return out;
}

Identity rename_apart(const Identity& i, const std::set<std::string>& avoid) {
    std::set<std::string> vars = variables(i.lhs);
    std::set<std::string> rhs_vars = variables(i.rhs);
    vars.insert(rhs_vars.begin(), rhs_vars.end());

    std::set<std::string> taken = avoid;
    taken.insert(vars.begin(), vars.end());

    Substitution renaming;
    for (const std::string& v : vars) {
        if (!avoid.count(v)) continue;
        for (std::size_t k = 0;; ++k) {
            std::string candidate = v + std::to_string(k);
            if (!taken.count(candidate)) {
                taken.insert(candidate);
                renaming.emplace(v, Term::variable(candidate));
                break;
            }
        }
    }
    if (renaming.empty()) return i;
    return Identity{i.name, substitute(i.lhs, renaming), substitute(i.rhs, renaming)};
}

}  // namespace eqbases
