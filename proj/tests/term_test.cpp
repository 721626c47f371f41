#include "doctest.h"

#include "eqbases/term.hpp"

#include <random>
#include <string>
#include <vector>

using namespace eqbases;

namespace {

Signature mv_sig() {
    return Signature("mv0", {{"plus", 2}, {"neg", 1}, {"zero", 0}});
}

Term v(const std::string& name) { return Term::variable(name); }

// Depth-bounded random term over plus/neg/zero and a small variable pool.
Term random_term(std::mt19937& rng, int depth) {
    int top = depth <= 0 ? 4 : 6;
    std::uniform_int_distribution<int> pick(0, top);
    int choice = pick(rng);
    static const char* vars[] = {"x", "y", "z", "u"};
    if (choice < 4) return v(vars[choice]);
    if (choice == 4) return Term::apply("zero");
    if (choice == 5) return Term::apply("neg", {random_term(rng, depth - 1)});
    return Term::apply("plus", {random_term(rng, depth - 1), random_term(rng, depth - 1)});
}

Substitution random_subst(std::mt19937& rng, int depth) {
    Substitution s;
    static const char* vars[] = {"x", "y", "z", "u"};
    std::uniform_int_distribution<int> coin(0, 1);
    for (const char* name : vars)
        if (coin(rng)) s.emplace(name, random_term(rng, depth));
    return s;
}

}  // namespace

TEST_CASE("parse builds the expected tree") {
    Signature sig = mv_sig();
    Term t = parse_term("neg(plus(x,y))", sig);
    REQUIRE(!t.is_variable());
    CHECK(t.symbol() == "neg");
    REQUIRE(t.args().size() == 1);
    CHECK(t.args()[0].symbol() == "plus");
    CHECK(t.args()[0].args()[0] == v("x"));
    CHECK(t.args()[0].args()[1] == v("y"));
}

TEST_CASE("declared constants parse as applications, not variables") {
    Signature sig = mv_sig();
    Term t = parse_term("zero", sig);
    CHECK(!t.is_variable());
    CHECK(t.symbol() == "zero");
    CHECK(t.args().empty());
    CHECK(t == Term::apply("zero"));
}

TEST_CASE("undeclared identifiers parse as variables") {
    Signature sig = mv_sig();
    CHECK(parse_term("someName_1", sig) == v("someName_1"));
}

TEST_CASE("whitespace and comments are insignificant") {
    Signature sig = mv_sig();
    CHECK(parse_term("  plus ( x , # comment\n y )", sig) ==
          parse_term("plus(x,y)", sig));
}

TEST_CASE("arity mismatches are rejected") {
    Signature sig = mv_sig();
    CHECK_THROWS_AS(parse_term("plus(x)", sig), ArityError);
    CHECK_THROWS_AS(parse_term("neg(x,y)", sig), ArityError);
    // Declared non-constant written bare.
    CHECK_THROWS_AS(parse_term("plus", sig), ArityError);
    // Constants must be written without parentheses: empty argument lists
    // are not in the grammar.
    CHECK_THROWS_AS(parse_term("zero()", sig), ParseError);
}

TEST_CASE("applying an undeclared identifier is an error") {
    Signature sig = mv_sig();
    CHECK_THROWS_WITH_AS(parse_term("f(x)", sig),
                         "line 1, column 1: unknown operator 'f'", ParseError);
}

TEST_CASE("syntax errors carry 1-based positions") {
    Signature sig = mv_sig();
    try {
        parse_term("plus(x", sig);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 7);
    }
    try {
        parse_term("plus(x,\n y))", sig);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 4);
    }
}

TEST_CASE("format produces canonical prefix text") {
    Signature sig = mv_sig();
    CHECK(format_term(parse_term("neg( plus(x, y) )", sig)) == "neg(plus(x,y))");
    CHECK(format_term(v("x")) == "x");
    CHECK(format_term(Term::apply("zero")) == "zero");
}

TEST_CASE("substitute replaces simultaneously") {
    Signature sig = mv_sig();
    Term t = parse_term("plus(x,y)", sig);
    Substitution s;
    s.emplace("x", parse_term("neg(y)", sig));
    CHECK(substitute(t, s) == parse_term("plus(neg(y),y)", sig));
    CHECK(substitute(t, {}) == t);

    Term t2 = parse_term("plus(x,x)", sig);
    Substitution s2;
    s2.emplace("x", parse_term("plus(y,z)", sig));
    CHECK(substitute(t2, s2) == parse_term("plus(plus(y,z),plus(y,z))", sig));

    // No re-substitution into inserted terms: x -> y and y -> zero in one go.
    Term t3 = parse_term("plus(x,y)", sig);
    Substitution s3;
    s3.emplace("x", v("y"));
    s3.emplace("y", Term::apply("zero"));
    CHECK(substitute(t3, s3) == parse_term("plus(y,zero)", sig));
}

TEST_CASE("match finds the unique instance substitution") {
    Signature sig = mv_sig();
    Term pattern = parse_term("plus(x,neg(x))", sig);
    Term subject = parse_term("plus(plus(a,b),neg(plus(a,b)))", sig);
    auto s = match_term(pattern, subject);
    REQUIRE(s.has_value());
    CHECK(s->size() == 1);
    CHECK(s->at("x") == parse_term("plus(a,b)", sig));

    // Nonlinear pattern with unequal arguments.
    CHECK(!match_term(parse_term("plus(x,x)", sig), parse_term("plus(a,b)", sig)));

    // A bare variable matches anything.
    auto s3 = match_term(v("x"), subject);
    REQUIRE(s3.has_value());
    CHECK(s3->at("x") == subject);

    // Matching is one-sided: subject variables are inert.
    CHECK(!match_term(Term::apply("zero"), v("x")));
}

TEST_CASE("match honours seed bindings") {
    Signature sig = mv_sig();
    Substitution seed;
    seed.emplace("x", v("a"));
    auto ok = match_term(parse_term("plus(x,y)", sig), parse_term("plus(a,b)", sig), seed);
    REQUIRE(ok.has_value());
    CHECK(ok->at("y") == v("b"));
    auto clash =
        match_term(parse_term("plus(x,y)", sig), parse_term("plus(c,b)", sig), seed);
    CHECK(!clash.has_value());
}

TEST_CASE("subterm_at and replace_at walk positions") {
    Signature sig = mv_sig();
    Term t = parse_term("plus(neg(x),y)", sig);
    CHECK(subterm_at(t, {0, 0}) == v("x"));
    CHECK(subterm_at(t, {}) == t);
    CHECK(replace_at(t, {}, v("r")) == v("r"));
    CHECK(replace_at(t, {0}, Term::apply("zero")) == parse_term("plus(zero,y)", sig));
    CHECK_THROWS_AS(subterm_at(t, {2}), std::out_of_range);
    CHECK_THROWS_AS(replace_at(t, {0, 0, 0}, v("r")), std::out_of_range);
}

TEST_CASE("variables collects names") {
    Signature sig = mv_sig();
    CHECK(variables(parse_term("plus(neg(x),plus(y,zero))", sig)) ==
          std::set<std::string>{"x", "y"});
    CHECK(variables(Term::apply("zero")).empty());
}

TEST_CASE("all_positions is leftmost-outermost") {
    Signature sig = mv_sig();
    Term t = parse_term("plus(neg(x),y)", sig);
    std::vector<Position> want = {{}, {0}, {0, 0}, {1}};
    CHECK(all_positions(t) == want);
}

TEST_CASE("structural ordering is a strict total order on samples") {
    std::mt19937 rng(20240811);
    std::vector<Term> sample;
    for (int i = 0; i < 40; ++i) sample.push_back(random_term(rng, 3));
    for (const Term& a : sample) {
        CHECK(!(a < a));
        for (const Term& b : sample) {
            int rels = (a < b) + (b < a) + (a == b);
            CHECK(rels == 1);
        }
    }
}

TEST_CASE("property: parse round-trips format") {
    Signature sig = mv_sig();
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        Term t = random_term(rng, 4);
        CHECK(parse_term(format_term(t), sig) == t);
    }
}

TEST_CASE("property: match/substitute adjunction") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        Term pattern = random_term(rng, 3);
        Term subject = substitute(pattern, random_subst(rng, 2));
        auto s = match_term(pattern, subject);
        REQUIRE(s.has_value());
        CHECK(substitute(pattern, *s) == subject);
    }
}

TEST_CASE("property: positional round trip") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        Term t = random_term(rng, 4);
        for (const Position& p : all_positions(t))
            CHECK(replace_at(t, p, subterm_at(t, p)) == t);
    }
}

TEST_CASE("property: substitution composition") {
    std::mt19937 rng(17);
    for (int i = 0; i < 300; ++i) {
        Term t = random_term(rng, 3);
        Substitution sigma = random_subst(rng, 2);
        Substitution tau = random_subst(rng, 2);
        Substitution composite;
        for (const auto& [name, body] : sigma) composite.emplace(name, substitute(body, tau));
        for (const auto& [name, body] : tau) composite.emplace(name, body);
        CHECK(substitute(substitute(t, sigma), tau) == substitute(t, composite));
    }
}
