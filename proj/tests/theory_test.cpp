#include "doctest.h"

#include "eqbases/theory.hpp"

#include <fstream>
#include <sstream>
#include <string>

using namespace eqbases;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("theory file parses signatures and identities") {
    const std::string text =
        "signature bck\n"
        "  op imp 2\n"
        "\n"
        "theory C_axioms over bck\n"
        "  C1: imp(imp(x,x),y) = y\n"
        "  C2: imp(imp(x,y),imp(z,y)) = imp(imp(y,x),imp(z,x))\n";
    TheoryFile file = parse_theory(text);
    REQUIRE(file.signatures.size() == 1);
    REQUIRE(file.theories.size() == 1);
    const Theory* thy = file.find_theory("C_axioms");
    REQUIRE(thy != nullptr);
    CHECK(thy->signature().name() == "bck");
    REQUIRE(thy->identities().size() == 2);
    const Identity* c1 = thy->find("C1");
    REQUIRE(c1 != nullptr);
    CHECK(format_term(c1->lhs) == "imp(imp(x,x),y)");
    CHECK(format_term(c1->rhs) == "y");
    CHECK(thy->find("C3") == nullptr);
}

TEST_CASE("empty theory block is legal") {
    TheoryFile file = parse_theory(
        "signature s\n"
        "  op f 1\n"
        "theory empty over s\n");
    const Theory* thy = file.find_theory("empty");
    REQUIRE(thy != nullptr);
    CHECK(thy->identities().empty());
}

TEST_CASE("comments and blank lines are ignored") {
    TheoryFile file = parse_theory(
        "# leading comment\n"
        "signature s  # trailing\n"
        "  op f 1\n"
        "\n"
        "theory t over s\n"
        "  # a comment between identities\n"
        "  a: f(x) = x\n");
    REQUIRE(file.find_theory("t") != nullptr);
    CHECK(file.find_theory("t")->identities().size() == 1);
}

TEST_CASE("duplicate operator declaration is rejected with location") {
    try {
        parse_theory(
            "signature s\n"
            "  op f 1\n"
            "  op f 2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("duplicate identity name is rejected") {
    CHECK_THROWS_AS(parse_theory(
                        "signature s\n"
                        "  op f 1\n"
                        "theory t over s\n"
                        "  a: f(x) = x\n"
                        "  a: x = f(x)\n"),
                    ParseError);
}

TEST_CASE("undeclared signature reference is rejected") {
    CHECK_THROWS_AS(parse_theory("theory t over missing\n"), ParseError);
}

TEST_CASE("indented line outside any block is rejected") {
    CHECK_THROWS_AS(parse_theory("  op f 1\n"), ParseError);
}

TEST_CASE("term errors inside identities carry file coordinates") {
    try {
        parse_theory(
            "signature s\n"
            "  op f 1\n"
            "theory t over s\n"
            "  a: f(x,y) = x\n");
        FAIL("expected ArityError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("bundled catalog has the advertised shape") {
    const TheoryFile& file = builtin_theories();
    REQUIRE(file.signatures.size() == 4);
    CHECK(file.find_signature("mv0") != nullptr);
    CHECK(file.find_signature("mv") != nullptr);
    CHECK(file.find_signature("bck1") != nullptr);
    CHECK(file.find_signature("bck") != nullptr);
    CHECK(file.find_signature("mv0")->ops().size() == 3);
    CHECK(file.find_signature("bck")->ops().size() == 1);

    auto count = [&](const char* name) -> std::size_t {
        const Theory* t = file.find_theory(name);
        REQUIRE(t != nullptr);
        return t->identities().size();
    };
    CHECK(count("MV_A") == 6);
    CHECK(count("MV_M") == 2);
    CHECK(count("MV_3base") == 3);
    CHECK(count("CBCK_B") == 4);
    CHECK(count("CBCK_B_elim") == 4);
    CHECK(count("CBCK_C") == 2);
    CHECK(count("LBCK_B") == 5);
    CHECK(count("LBCK_B_elim") == 5);
    CHECK(count("LBCK_L") == 2);
    CHECK(count("PR_2base") == 2);
    CHECK(count("MV_derived") == 30);
    CHECK(count("CBCK_derived") == 3);
    CHECK(count("LBCK_derived") == 9);
}

TEST_CASE("every catalog identity survives a format/parse round trip") {
    for (const Theory& thy : builtin_theories().theories) {
        for (const Identity& i : thy.identities()) {
            CAPTURE(thy.name());
            CAPTURE(i.name);
            CHECK(parse_term(format_term(i.lhs), thy.signature()) == i.lhs);
            CHECK(parse_term(format_term(i.rhs), thy.signature()) == i.rhs);
        }
    }
}

TEST_CASE("catalog fixture file matches the embedded text byte for byte") {
    std::string fixture = read_file(std::string(FIXTURES_DIR) + "/theories/catalog.thy");
    CHECK(fixture == builtin_theory_text());
}

TEST_CASE("rename_apart moves clashing variables to suffixed names") {
    const Theory* cbck = builtin_theories().find_theory("CBCK_C");
    REQUIRE(cbck != nullptr);
    const Identity* c1 = cbck->find("C1");
    REQUIRE(c1 != nullptr);

    Identity renamed = rename_apart(*c1, {"x", "y"});
    CHECK(format_term(renamed.lhs) == "imp(imp(x0,x0),y0)");
    CHECK(format_term(renamed.rhs) == "y0");

    SUBCASE("no clash leaves the identity untouched") {
        Identity same = rename_apart(*c1, {"a", "b"});
        CHECK(same == *c1);
    }

    SUBCASE("suffix skips names that are themselves taken") {
        Identity shifted = rename_apart(*c1, {"x", "x0"});
        CHECK(format_term(shifted.lhs) == "imp(imp(x1,x1),y)");
    }

    SUBCASE("renaming preserves matchability") {
        const Signature& sig = cbck->signature();
        Term subject = parse_term("imp(imp(imp(x,y),imp(x,y)),x)", sig);
        auto direct = match_term(c1->lhs, subject);
        auto via_renamed = match_term(renamed.lhs, subject);
        REQUIRE(direct.has_value());
        REQUIRE(via_renamed.has_value());
        CHECK(substitute(renamed.lhs, *via_renamed) == subject);
    }

    SUBCASE("identity without variables is unchanged") {
        Identity ground{"g", Term::apply("one"), Term::apply("one")};
        CHECK(rename_apart(ground, {"x"}) == ground);
    }
}
