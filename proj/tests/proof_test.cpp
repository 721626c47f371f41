#include "doctest.h"

#include "eqbases/proof.hpp"

#include <random>
#include <string>

using namespace eqbases;

namespace {

const Theory& theory(const char* name) {
    const Theory* t = builtin_theories().find_theory(name);
    REQUIRE(t != nullptr);
    return *t;
}

const Identity& axiom(const char* theory_name, const char* id_name) {
    const Identity* i = theory(theory_name).find(id_name);
    REQUIRE(i != nullptr);
    return *i;
}

Term mv(const std::string& text) {
    return parse_term(text, theory("MV_A").signature());
}

Term bk(const std::string& text) {
    return parse_term(text, theory("CBCK_C").signature());
}

// A two-op scratch theory whose single axiom relates terms with disjoint
// variables, which makes every instance of f provably constant.
TheoryFile scratch_theory() {
    return parse_theory(
        "signature s\n"
        "  op f 2\n"
        "theory T over s\n"
        "  collapse: f(x,y) = f(u,v)\n");
}

Term random_term(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 5);
    switch (pick(rng)) {
        case 0: return Term::variable("x");
        case 1: return Term::variable("y");
        case 2: return Term::variable("z");
        case 3: return Term::apply("zero");
        case 4: return Term::apply("neg", {random_term(rng, depth - 1)});
        default:
            return Term::apply("plus",
                               {random_term(rng, depth - 1), random_term(rng, depth - 1)});
    }
}

}  // namespace

TEST_CASE("apply_identity rewrites the addressed redex") {
    const Identity& a3 = axiom("MV_A", "A3");
    Term t = mv("plus(neg(plus(x,zero)),x)");

    Term collapsed = apply_identity(t, a3, Direction::LeftToRight, {0, 0},
                                    {{"x", Term::variable("x")}});
    CHECK(collapsed == mv("plus(neg(x),x)"));

    // The inverse direction at the variable inside rebuilds a redex.
    Term grown = apply_identity(collapsed, a3, Direction::RightToLeft, {0, 0},
                                {{"x", Term::variable("x")}});
    CHECK(grown == t);

    SUBCASE("substitution instantiates both sides") {
        Term u = mv("plus(plus(y,zero),z)");
        CHECK(apply_identity(u, a3, Direction::LeftToRight, {0},
                             {{"x", Term::variable("y")}}) == mv("plus(y,z)"));
    }

    SUBCASE("redex mismatch raises") {
        CHECK_THROWS_AS(apply_identity(t, a3, Direction::LeftToRight, {0, 0},
                                       {{"x", Term::variable("y")}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            apply_identity(t, a3, Direction::LeftToRight, {1}, {{"x", Term::variable("x")}}),
            std::invalid_argument);
    }

    SUBCASE("Either is not an applicable direction") {
        CHECK_THROWS_AS(apply_identity(t, a3, Direction::Either, {0, 0},
                                       {{"x", Term::variable("x")}}),
                        std::invalid_argument);
    }

    SUBCASE("invalid position raises") {
        CHECK_THROWS_AS(apply_identity(t, a3, Direction::LeftToRight, {2},
                                       {{"x", Term::variable("x")}}),
                        std::out_of_range);
    }
}

TEST_CASE("verify_step finds the reassociation witness below the top") {
    Term current = mv("plus(neg(plus(x,plus(neg(x),y))),z)");
    Term target = mv("plus(neg(plus(plus(x,neg(x)),y)),z)");
    ProofStep step{target, "A1", Direction::Either, std::nullopt};

    std::optional<StepWitness> w = verify_step(current, step, axiom("MV_A", "A1"));
    REQUIRE(w);
    CHECK(w->position == Position{0, 0});
    CHECK(w->direction == Direction::RightToLeft);
    CHECK(w->substitution ==
          Substitution{{"x", Term::variable("x")},
                       {"y", Term::apply("neg", {Term::variable("x")})},
                       {"z", Term::variable("y")}});
    CHECK(apply_identity(current, axiom("MV_A", "A1"), w->direction, w->position,
                         w->substitution) == target);

    SUBCASE("explicit annotations that agree still succeed") {
        ProofStep pinned{target, "A1", Direction::RightToLeft, Position{0, 0}};
        std::optional<StepWitness> v = verify_step(current, pinned, axiom("MV_A", "A1"));
        REQUIRE(v);
        CHECK(v->position == Position{0, 0});
    }

    SUBCASE("an explicit wrong position finds nothing") {
        ProofStep pinned{target, "A1", Direction::Either, Position{1}};
        CHECK(!verify_step(current, pinned, axiom("MV_A", "A1")));
    }

    SUBCASE("an explicit wrong direction finds nothing") {
        ProofStep pinned{target, "A1", Direction::LeftToRight, std::nullopt};
        CHECK(!verify_step(current, pinned, axiom("MV_A", "A1")));
    }

    SUBCASE("positions outside the term are skipped") {
        ProofStep pinned{target, "A1", Direction::Either, Position{0, 0, 0, 0, 0, 0}};
        CHECK(!verify_step(current, pinned, axiom("MV_A", "A1")));
    }
}

TEST_CASE("verify_step resolves the whole substitution at the root") {
    Term current = bk("imp(imp(x,x),y)");
    ProofStep step{bk("y"), "C1", Direction::Either, std::nullopt};

    std::optional<StepWitness> w = verify_step(current, step, axiom("CBCK_C", "C1"));
    REQUIRE(w);
    CHECK(w->position == Position{});
    CHECK(w->direction == Direction::LeftToRight);
    CHECK(w->substitution ==
          Substitution{{"x", Term::variable("x")}, {"y", Term::variable("y")}});
}

TEST_CASE("verify_step rejects steps that apply nothing") {
    // A3 matches right-to-left at every position (its right side is a bare
    // variable) yet no application leaves plus(x,y) unchanged.
    Term t = mv("plus(x,y)");
    ProofStep step{t, "A3", Direction::Either, std::nullopt};
    std::vector<NearMiss> misses;
    CHECK(!verify_step(t, step, axiom("MV_A", "A3"), &misses));
    REQUIRE(misses.size() == 3);
    CHECK(misses[0].position == Position{});
    CHECK(misses[1].position == Position{0});
    CHECK(misses[2].position == Position{1});
    for (const NearMiss& m : misses) CHECK(m.direction == Direction::RightToLeft);
}

TEST_CASE("verify_step takes the first witness in pre-order") {
    // Commutativity applies at the root and inside both halves; the root
    // comes first in pre-order.
    Term t = mv("plus(plus(x,x),plus(x,x))");
    ProofStep step{t, "A2", Direction::Either, std::nullopt};
    std::optional<StepWitness> w = verify_step(t, step, axiom("MV_A", "A2"));
    REQUIRE(w);
    CHECK(w->position == Position{});
    CHECK(w->direction == Direction::LeftToRight);

    SUBCASE("repeat calls agree") {
        std::optional<StepWitness> v = verify_step(t, step, axiom("MV_A", "A2"));
        REQUIRE(v);
        CHECK(v->position == w->position);
        CHECK(v->direction == w->direction);
        CHECK(v->substitution == w->substitution);
    }
}

TEST_CASE("verified steps change exactly one subtree") {
    std::mt19937 rng(20260823);
    const std::vector<Identity>& axioms = theory("MV_A").identities();
    std::uniform_int_distribution<std::size_t> pick_axiom(0, axioms.size() - 1);
    std::uniform_int_distribution<int> pick_dir(0, 1);

    int replayed = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        Term t = random_term(rng, 4);
        const Identity& i = axioms[pick_axiom(rng)];
        Direction dir = pick_dir(rng) ? Direction::LeftToRight : Direction::RightToLeft;
        const Term& from = dir == Direction::LeftToRight ? i.lhs : i.rhs;
        const Term& to = dir == Direction::LeftToRight ? i.rhs : i.lhs;

        std::vector<Position> ps = all_positions(t);
        std::uniform_int_distribution<std::size_t> pick_pos(0, ps.size() - 1);
        Position p = ps[pick_pos(rng)];
        std::optional<Substitution> s = match_term(from, subterm_at(t, p));
        if (!s) continue;
        for (const std::string& v : variables(to))
            if (!s->count(v)) s->emplace(v, random_term(rng, 1));

        Term target = apply_identity(t, i, dir, p, *s);
        ProofStep step{target, i.name, Direction::Either, std::nullopt};
        std::optional<StepWitness> w = verify_step(t, step, i);
        REQUIRE(w);
        ++replayed;

        // Soundness: the witness replays to exactly the written target.
        CHECK(apply_identity(t, i, w->direction, w->position, w->substitution) == target);
        // Locality: outside the witness position the terms agree.
        CHECK(replace_at(t, w->position, subterm_at(target, w->position)) == target);
        CHECK(replace_at(target, w->position, subterm_at(t, w->position)) == t);

        std::optional<StepWitness> again = verify_step(t, step, i);
        REQUIRE(again);
        CHECK(again->position == w->position);
        CHECK(again->direction == w->direction);
        CHECK(again->substitution == w->substitution);
    }
    CHECK(replayed > 100);
}

TEST_CASE("check_script replays a chain and registers the lemma") {
    TheoryFile scratch = scratch_theory();
    ProofLibrary lib(scratch);
    const Signature& sig = scratch.theories[0].signature();

    ProofScript cl{"cl", "T",
                   LemmaBody{Identity{"cl", parse_term("f(x,y)", sig),
                                      parse_term("f(a,b)", sig)},
                             parse_term("f(x,y)", sig),
                             {ProofStep{parse_term("f(a,b)", sig), "collapse",
                                        Direction::LeftToRight, std::nullopt}}}};
    CheckReport r = check_script(cl, lib);
    CHECK(r.ok);
    CHECK(!r.is_definition);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].ok);
    CHECK(r.steps[0].witness.position == Position{});
    CHECK(r.dependencies == std::vector<std::string>{"collapse"});
    REQUIRE(lib.find_lemma("T", "cl"));
    CHECK(lib.find_lemma("T", "cl")->rhs == parse_term("f(a,b)", sig));

    SUBCASE("a later script may cite the lemma") {
        ProofScript use{"use", "T",
                        LemmaBody{Identity{"use", parse_term("f(p,q)", sig),
                                           parse_term("f(q,p)", sig)},
                                  parse_term("f(p,q)", sig),
                                  {ProofStep{parse_term("f(q,p)", sig), "cl",
                                             Direction::Either, std::nullopt}}}};
        CheckReport u = check_script(use, lib);
        CHECK(u.ok);
        CHECK(u.dependencies == std::vector<std::string>{"cl"});
    }

    SUBCASE("reusing a registered name fails") {
        CheckReport again = check_script(cl, lib);
        CHECK(!again.ok);
        CHECK(again.failure.find("already in use") != std::string::npos);
    }
}

TEST_CASE("check_script rejects broken chains") {
    TheoryFile scratch = scratch_theory();
    const Signature& sig = scratch.theories[0].signature();

    SUBCASE("start differing from the goal's left side") {
        ProofLibrary lib(scratch);
        ProofScript bad{"bad", "T",
                        LemmaBody{Identity{"bad", parse_term("f(x,y)", sig),
                                           parse_term("f(a,b)", sig)},
                                  parse_term("f(y,x)", sig),
                                  {ProofStep{parse_term("f(a,b)", sig), "collapse",
                                             Direction::Either, std::nullopt}}}};
        CheckReport r = check_script(bad, lib);
        CHECK(!r.ok);
        CHECK(r.failure.find("starts at") != std::string::npos);
        CHECK(!lib.find_lemma("T", "bad"));
    }

    SUBCASE("chain ending short of the goal's right side") {
        ProofLibrary lib(scratch);
        ProofScript bad{"bad", "T",
                        LemmaBody{Identity{"bad", parse_term("f(x,y)", sig),
                                           parse_term("f(a,b)", sig)},
                                  parse_term("f(x,y)", sig),
                                  {}}};
        CheckReport r = check_script(bad, lib);
        CHECK(!r.ok);
        CHECK(r.failure.find("ends at") != std::string::npos);
    }

    SUBCASE("unknown justification") {
        ProofLibrary lib(scratch);
        ProofScript bad{"bad", "T",
                        LemmaBody{Identity{"bad", parse_term("f(x,y)", sig),
                                           parse_term("f(a,b)", sig)},
                                  parse_term("f(x,y)", sig),
                                  {ProofStep{parse_term("f(a,b)", sig), "nonsense",
                                             Direction::Either, std::nullopt}}}};
        CheckReport r = check_script(bad, lib);
        CHECK(!r.ok);
        REQUIRE(r.steps.size() == 1);
        CHECK(r.steps[0].failure.find("unknown justification") != std::string::npos);
    }

    SUBCASE("failing step reports its near misses and later steps still run") {
        ProofLibrary lib(scratch);
        // First step claims a term no collapse application reaches from the
        // start (g is a different head symbol than any rewrite can build).
        ProofScript bad{"bad", "T",
                        LemmaBody{Identity{"bad", parse_term("f(x,y)", sig),
                                           parse_term("f(a,b)", sig)},
                                  parse_term("f(x,y)", sig),
                                  {ProofStep{parse_term("f(f(a,a),b)", sig), "collapse",
                                             Direction::Either, Position{0}},
                                   ProofStep{parse_term("f(a,b)", sig), "collapse",
                                             Direction::Either, std::nullopt}}}};
        CheckReport r = check_script(bad, lib);
        CHECK(!r.ok);
        REQUIRE(r.steps.size() == 2);
        CHECK(!r.steps[0].ok);
        CHECK(r.steps[1].ok);  // replays from the written intermediate
    }
}

TEST_CASE("definitions demand a disjoint constancy lemma matching the body") {
    TheoryFile scratch = scratch_theory();
    const Signature& sig = scratch.theories[0].signature();

    ProofLibrary lib(scratch);
    ProofScript cl{"cl", "T",
                   LemmaBody{Identity{"cl", parse_term("f(x,y)", sig),
                                      parse_term("f(a,b)", sig)},
                             parse_term("f(x,y)", sig),
                             {ProofStep{parse_term("f(a,b)", sig), "collapse",
                                        Direction::LeftToRight, std::nullopt}}}};
    REQUIRE(check_script(cl, lib).ok);

    ProofScript def{"k_definition", "T",
                    DefinitionBody{"k", parse_term("f(x,y)", sig), "cl"}};
    CheckReport r = check_script(def, lib);
    CHECK(r.ok);
    CHECK(r.is_definition);
    CHECK(r.registered == "k_def");
    CHECK(r.dependencies == std::vector<std::string>{"cl"});
    CHECK(lib.working_signature("T").declares("k"));
    REQUIRE(lib.resolve("T", "k_def"));
    CHECK(lib.resolve("T", "k_def")->lhs == Term::apply("k"));

    SUBCASE("the equation rewrites like any identity") {
        Signature grown = lib.working_signature("T");
        ProofScript use{"uk", "T",
                        LemmaBody{Identity{"uk", parse_term("k", grown),
                                           parse_term("f(p,q)", grown)},
                                  parse_term("k", grown),
                                  {ProofStep{parse_term("f(p,q)", grown), "k_def",
                                             Direction::LeftToRight, std::nullopt}}}};
        CheckReport u = check_script(use, lib);
        CHECK(u.ok);
        CHECK(u.dependencies == std::vector<std::string>{"k_def"});
    }

    SUBCASE("redefining the same operator fails") {
        CheckReport again = check_script(def, lib);
        CHECK(!again.ok);
        CHECK(again.failure.find("already in use") != std::string::npos);
        // But the renamed body is accepted under a fresh operator: the
        // rule compares bodies up to injective renaming.
        ProofScript renamed{"k2_definition", "T",
                            DefinitionBody{"k2", parse_term("f(u,w)", sig), "cl"}};
        CHECK(check_script(renamed, lib).ok);
    }

    SUBCASE("a constancy lemma with shared variables is rejected") {
        ProofScript cs{"cs", "T",
                       LemmaBody{Identity{"cs", parse_term("f(x,y)", sig),
                                          parse_term("f(y,b)", sig)},
                                 parse_term("f(x,y)", sig),
                                 {ProofStep{parse_term("f(y,b)", sig), "collapse",
                                            Direction::LeftToRight, std::nullopt}}}};
        REQUIRE(check_script(cs, lib).ok);
        ProofScript bad{"j_definition", "T",
                        DefinitionBody{"j", parse_term("f(x,y)", sig), "cs"}};
        CheckReport b = check_script(bad, lib);
        CHECK(!b.ok);
        CHECK(b.failure.find("sharing variables") != std::string::npos);
        CHECK(!lib.working_signature("T").declares("j"));
    }

    SUBCASE("a body that is no side of the lemma is rejected") {
        ProofScript bad{"m_definition", "T",
                        DefinitionBody{"m", parse_term("f(x,x)", sig), "cl"}};
        CheckReport b = check_script(bad, lib);
        CHECK(!b.ok);
        CHECK(b.failure.find("up to renaming") != std::string::npos);
        CHECK(lib.resolve("T", "m_def") == nullptr);
    }

    SUBCASE("axioms do not serve as constancy lemmas") {
        ProofScript bad{"n_definition", "T",
                        DefinitionBody{"n", parse_term("f(x,y)", sig), "collapse"}};
        CheckReport b = check_script(bad, lib);
        CHECK(!b.ok);
        CHECK(b.failure.find("not a verified lemma") != std::string::npos);
    }

    SUBCASE("unknown constancy lemma") {
        ProofScript bad{"n_definition", "T",
                        DefinitionBody{"n", parse_term("f(x,y)", sig), "ghost"}};
        CHECK(!check_script(bad, lib).ok);
    }
}

TEST_CASE("dependency_closure walks to terminal names") {
    TheoryFile scratch = scratch_theory();
    const Signature& sig = scratch.theories[0].signature();
    ProofLibrary lib(scratch);

    std::vector<CheckReport> reports;
    ProofScript cl{"cl", "T",
                   LemmaBody{Identity{"cl", parse_term("f(x,y)", sig),
                                      parse_term("f(a,b)", sig)},
                             parse_term("f(x,y)", sig),
                             {ProofStep{parse_term("f(a,b)", sig), "collapse",
                                        Direction::LeftToRight, std::nullopt}}}};
    reports.push_back(check_script(cl, lib));
    ProofScript def{"k_definition", "T",
                    DefinitionBody{"k", parse_term("f(x,y)", sig), "cl"}};
    reports.push_back(check_script(def, lib));
    Signature grown = lib.working_signature("T");
    ProofScript use{"uk", "T",
                    LemmaBody{Identity{"uk", parse_term("k", grown),
                                       parse_term("f(p,q)", grown)},
                              parse_term("k", grown),
                              {ProofStep{parse_term("f(p,q)", grown), "k_def",
                                         Direction::LeftToRight, std::nullopt}}}};
    reports.push_back(check_script(use, lib));
    for (const CheckReport& r : reports) REQUIRE(r.ok);

    // An axiom is its own closure.
    CHECK(dependency_closure(reports, lib, "collapse") ==
          std::set<std::string>{"collapse"});
    // A lemma bottoms out in the axioms it rests on.
    CHECK(dependency_closure(reports, lib, "cl") == std::set<std::string>{"collapse"});
    // Definition equations route through their constancy lemma.
    CHECK(dependency_closure(reports, lib, "uk") == std::set<std::string>{"collapse"});
    CHECK(dependency_closure(reports, lib, "k_definition") ==
          std::set<std::string>{"collapse"});
    // Assumed roots terminate the walk early.
    CHECK(dependency_closure(reports, lib, "uk", {"cl"}) == std::set<std::string>{"cl"});
    CHECK(dependency_closure(reports, lib, "uk", {"k_def"}) ==
          std::set<std::string>{"k_def"});
    CHECK(dependency_closure(reports, lib, "cl", {"cl"}) == std::set<std::string>{"cl"});

    CHECK_THROWS_AS(dependency_closure(reports, lib, "ghost"), std::invalid_argument);
}

TEST_CASE("proof files parse into scripts") {
    TheoryFile scratch = scratch_theory();
    std::string text =
        "# walkthrough of the scratch theory\n"
        "proof cl in T\n"
        "  goal: f(x,y) = f(a,b)\n"
        "  chain:\n"
        "    f(x,y)\n"
        "    = f(a,b)  by collapse lr\n"
        "\n"
        "define k := f(x,y) constancy cl\n"
        "\n"
        "proof uk in T\n"
        "  goal: k = f(p,q)\n"
        "  chain:\n"
        "    k\n"
        "    = f(p,q)  by k_def lr at []\n";
    std::vector<ProofScript> scripts = parse_proofs(text, scratch);
    REQUIRE(scripts.size() == 3);

    CHECK(scripts[0].name == "cl");
    CHECK(scripts[0].theory == "T");
    REQUIRE(scripts[0].is_lemma());
    CHECK(scripts[0].lemma().goal.lhs == parse_term("f(x,y)", scratch.signatures[0]));
    REQUIRE(scripts[0].lemma().steps.size() == 1);
    CHECK(scripts[0].lemma().steps[0].direction == Direction::LeftToRight);
    CHECK(!scripts[0].lemma().steps[0].position);

    CHECK(scripts[1].name == "k_definition");
    REQUIRE(!scripts[1].is_lemma());
    CHECK(scripts[1].definition().op == "k");
    CHECK(scripts[1].definition().constancy == "cl");

    CHECK(scripts[2].name == "uk");
    REQUIRE(scripts[2].is_lemma());
    CHECK(scripts[2].lemma().start == Term::apply("k"));
    REQUIRE(scripts[2].lemma().steps.size() == 1);
    CHECK(scripts[2].lemma().steps[0].position == Position{});

    SUBCASE("the parsed scripts verify") {
        ProofLibrary lib(scratch);
        for (const ProofScript& s : scripts) CHECK(check_script(s, lib).ok);
    }
}

TEST_CASE("proof files over the bundled theories parse and verify") {
    std::string text =
        "proof unit_c1 in CBCK_C\n"
        "  goal: imp(imp(x,x),y) = y\n"
        "  chain:\n"
        "    imp(imp(x,x),y)\n"
        "    = y  by C1\n";
    std::vector<ProofScript> scripts = parse_proofs(text, builtin_theories());
    REQUIRE(scripts.size() == 1);
    ProofLibrary lib(builtin_theories());
    CheckReport r = check_script(scripts[0], lib);
    CHECK(r.ok);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].witness.position == Position{});
    CHECK(r.steps[0].witness.substitution ==
          Substitution{{"x", Term::variable("x")}, {"y", Term::variable("y")}});
}

TEST_CASE("proof parser reports malformed input") {
    TheoryFile scratch = scratch_theory();
    auto line_of = [](const std::string& text, const TheoryFile& cat) -> std::size_t {
        try {
            parse_proofs(text, cat);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };

    CHECK(line_of("proof p in\n", scratch) == 1);
    CHECK(line_of("proof p in Ghost\n  goal: f(x,y) = f(a,b)\n", scratch) == 1);
    CHECK(line_of("lemma p in T\n", scratch) == 1);
    CHECK(line_of("  goal: f(x,y) = f(a,b)\n", scratch) == 1);
    CHECK(line_of("proof p in T\n  chain:\n", scratch) == 2);
    CHECK(line_of("proof p in T\n  goal: f(x,y)\n", scratch) == 2);
    CHECK(line_of("proof p in T\n  goal: f(x,y) = f(a,b)\n  f(x,y)\n", scratch) == 3);
    CHECK(line_of("proof p in T\n  goal: f(x,y) = f(a,b)\n  chain:\n    f(x,y)\n"
                  "    = f(a,b)\n",
                  scratch) == 5);
    CHECK(line_of("proof p in T\n  goal: f(x,y) = f(a,b)\n  chain:\n    f(x,y)\n"
                  "    = f(a,b)  by collapse sideways\n",
                  scratch) == 5);
    CHECK(line_of("proof p in T\n  goal: f(x,y) = f(a,b)\n  chain:\n    f(x,y)\n"
                  "    = f(a,b)  by collapse at [x]\n",
                  scratch) == 5);
    CHECK(line_of("proof p in T\n  goal: f(x,y) = f(a,b)\n", scratch) == 2);
    CHECK(line_of("define k := f(x,y) constancy cl\n", scratch) == 1);
    CHECK(line_of("proof p in T\n  goal: f(x,y) = f(a,b)\n  chain:\n    f(x,y)\n"
                  "define k = f(x,y) constancy cl\n",
                  scratch) == 5);

    SUBCASE("incomplete trailing proof") {
        CHECK_THROWS_AS(parse_proofs("proof p in T\n  goal: f(x,y) = f(a,b)\n  chain:\n",
                                     scratch),
                        ParseError);
    }

    SUBCASE("term errors carry file coordinates") {
        try {
            parse_proofs("proof p in T\n  goal: f(x,, = f(a,b)\n", scratch);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("goal left side") != std::string::npos);
        }
    }

    SUBCASE("defined constants are operators only after their define line") {
        std::string text =
            "proof before in T\n"
            "  goal: f(k,k) = f(a,b)\n"
            "  chain:\n"
            "    f(k,k)\n"
            "    = f(a,b)  by collapse lr\n"
            "define k := f(x,y) constancy before\n"
            "proof after in T\n"
            "  goal: k = f(p,q)\n"
            "  chain:\n"
            "    k\n"
            "    = f(p,q)  by k_def lr\n";
        std::vector<ProofScript> scripts = parse_proofs(text, scratch);
        REQUIRE(scripts.size() == 3);
        CHECK(scripts[0].lemma().goal.lhs.args()[0].is_variable());
        CHECK(!scripts[2].lemma().start.is_variable());
    }
}
