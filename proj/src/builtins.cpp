#include "eqbases/search.hpp"
#include "eqbases/theory.hpp"

namespace eqbases {

namespace {

// Canonical catalog text. fixtures/theories/catalog.thy ships this exact
// text; a test pins the two copies together byte for byte.
const char kCatalog[] =
    R"(# Bundled signatures, axiom systems, and derived-identity catalogs.

signature mv0
  op plus 2
  op neg 1
  op zero 0

signature mv
  op plus 2
  op neg 1

signature bck1
  op imp 2
  op one 0

signature bck
  op imp 2

# Sum-negation axioms for MV-algebras, with the constant.
theory MV_A over mv0
  A1: plus(plus(x,y),z) = plus(x,plus(y,z))
  A2: plus(x,y) = plus(y,x)
  A3: plus(x,zero) = x
  A4: neg(neg(x)) = x
  A5: plus(x,neg(zero)) = neg(zero)
  A6: plus(neg(plus(neg(x),y)),y) = plus(neg(plus(neg(y),x)),x)

# Two-identity base for the same variety, constant eliminated.
theory MV_M over mv
  M1: plus(neg(plus(x,plus(neg(x),y))),z) = z
  M2: plus(neg(plus(neg(plus(x,y)),neg(plus(z,u)))),neg(plus(z,plus(u,neg(plus(x,plus(y,plus(z,u)))))))) = plus(x,y)

# Three-identity base: M1 plus the two consequences of M2 that carry the
# whole derivation.
theory MV_3base over mv
  M1: plus(neg(plus(x,plus(neg(x),y))),z) = z
  eq9: plus(neg(plus(neg(y),neg(plus(z,u)))),neg(plus(z,plus(u,neg(plus(y,plus(z,u))))))) = y
  eq13: plus(neg(plus(neg(plus(x,y)),neg(u))),neg(plus(u,neg(plus(x,plus(y,u)))))) = plus(x,y)

# Commutative BCK-algebras, standard four-identity base.
theory CBCK_B over bck1
  B1: imp(imp(x,y),y) = imp(imp(y,x),x)
  B2: imp(x,imp(y,z)) = imp(y,imp(x,z))
  B3: imp(x,x) = one
  B4: imp(one,x) = x

# The same base with the constant eliminated.
theory CBCK_B_elim over bck
  B1: imp(imp(x,y),y) = imp(imp(y,x),x)
  B2: imp(x,imp(y,z)) = imp(y,imp(x,z))
  B3e: imp(x,x) = imp(y,y)
  B4e: imp(imp(x,x),y) = y

# Two-identity base for commutative BCK-algebras.
theory CBCK_C over bck
  C1: imp(imp(x,x),y) = y
  C2: imp(imp(x,y),imp(z,y)) = imp(imp(y,x),imp(z,x))

# Commutative BCK-algebras satisfying the Lukasiewicz identity B5.
theory LBCK_B over bck1
  B1: imp(imp(x,y),y) = imp(imp(y,x),x)
  B2: imp(x,imp(y,z)) = imp(y,imp(x,z))
  B3: imp(x,x) = one
  B4: imp(one,x) = x
  B5: imp(imp(x,y),imp(y,x)) = imp(y,x)

# The same base with the constant eliminated.
theory LBCK_B_elim over bck
  B1: imp(imp(x,y),y) = imp(imp(y,x),x)
  B2: imp(x,imp(y,z)) = imp(y,imp(x,z))
  B3e: imp(x,x) = imp(y,y)
  B4e: imp(imp(x,x),y) = y
  B5: imp(imp(x,y),imp(y,x)) = imp(y,x)

# Two-identity base for the B5 subvariety.
theory LBCK_L over bck
  L1: imp(imp(x,x),y) = y
  L2: imp(imp(imp(x,y),imp(z,x)),imp(y,x)) = imp(imp(x,z),imp(y,z))

# Earlier two-identity base for commutative BCK-algebras, kept for
# comparison runs.
theory PR_2base over bck
  PR1: imp(imp(x,x),y) = y
  PR2: imp(imp(x,imp(y,z)),imp(imp(u,v),v)) = imp(imp(y,imp(x,z)),imp(imp(v,u),u))

# Consequences derived along the way in the MV proofs, in derivation order.
theory MV_derived over mv0
  xnegx1: plus(x,neg(x)) = neg(zero)
  M1a: plus(neg(plus(x,plus(neg(x),y))),z) = z
  eq9: plus(neg(plus(neg(y),neg(plus(z,u)))),neg(plus(z,plus(u,neg(plus(y,plus(z,u))))))) = y
  eq13: plus(neg(plus(neg(plus(x,y)),neg(u))),neg(plus(u,neg(plus(x,plus(y,u)))))) = plus(x,y)
  eq12: plus(neg(plus(neg(y),neg(u))),neg(plus(u,neg(plus(y,u))))) = y
  zero_def: zero = neg(plus(u,neg(u)))
  A3a: plus(zero,x) = x
  new9: plus(neg(plus(neg(y),zero)),zero) = y
  new12: neg(plus(neg(y),zero)) = y
  A5a: plus(neg(zero),x) = neg(zero)
  eq21: plus(plus(x,y),neg(x)) = neg(zero)
  eq30: plus(neg(plus(neg(plus(x,y)),x)),x) = plus(x,y)
  eq33: neg(plus(x,plus(y,neg(plus(x,y))))) = zero
  eq36: plus(neg(plus(x,neg(plus(x,y)))),neg(plus(x,y))) = neg(x)
  eq40: plus(neg(plus(x,y)),neg(plus(x,neg(plus(x,y))))) = neg(x)
  eq46: plus(x,neg(plus(y,neg(plus(neg(x),y))))) = plus(x,neg(y))
  eq50: plus(neg(plus(x,neg(plus(neg(y),x)))),neg(plus(y,neg(x)))) = neg(y)
  eq53: plus(plus(x,neg(plus(neg(y),x))),neg(y)) = neg(zero)
  eq58: plus(plus(x,neg(plus(x,y))),neg(plus(neg(plus(x,y)),x))) = plus(plus(x,neg(plus(x,y))),plus(x,y))
  eq59: plus(plus(x,neg(plus(x,y))),plus(x,y)) = neg(zero)
  eq65: plus(neg(plus(x,y)),x) = plus(x,neg(plus(x,y)))
  eq68: plus(neg(plus(x,neg(plus(neg(y),x)))),y) = plus(y,neg(x))
  eq41: plus(x,neg(plus(neg(y),x))) = plus(y,neg(plus(y,neg(x))))
  eq42: plus(x,plus(y,neg(plus(y,x)))) = neg(zero)
  eq43: plus(neg(plus(neg(plus(x,y)),plus(y,x))),plus(y,x)) = plus(x,y)
  eq44: plus(plus(neg(plus(x,y)),plus(y,x)),neg(plus(y,x))) = plus(neg(plus(x,y)),plus(y,x))
  eq45: plus(plus(x,y),neg(plus(y,x))) = neg(zero)
  eq47: plus(neg(plus(x,y)),plus(y,x)) = neg(zero)
  almass: plus(plus(x,y),plus(z,neg(plus(x,plus(y,z))))) = neg(zero)
  close: plus(plus(plus(x,y),z),neg(plus(x,plus(y,z)))) = neg(zero)

# Consequences derived in the commutative BCK proofs.
theory CBCK_derived over bck1
  x11: imp(x,one) = one
  xyx1: imp(x,imp(y,x)) = one
  near: imp(imp(x,imp(y,z)),imp(y,imp(x,z))) = one

# Consequences derived in the B5-subvariety proofs.
theory LBCK_derived over bck1
  L25: imp(imp(x,y),imp(imp(imp(z,imp(y,x)),x),y)) = one
  Ltmp1: imp(imp(imp(imp(x,y),z),imp(imp(y,x),z)),z) = imp(imp(x,y),z)
  Ltmp2: imp(imp(z,imp(y,x)),imp(imp(imp(imp(imp(x,y),z),imp(imp(y,x),z)),z),imp(y,x))) = one
  Ltmp3: imp(imp(imp(imp(imp(imp(x,y),z),imp(imp(y,x),z)),z),imp(y,x)),imp(z,imp(y,x))) = one
  Ltmp4: imp(imp(imp(x,y),z),imp(y,x)) = imp(z,imp(y,x))
  xxxy: imp(imp(x,imp(x,x)),y) = y
  xyxyyy: imp(imp(x,y),imp(x,y)) = imp(y,y)
  xyyxyx: imp(imp(imp(x,y),y),x) = imp(y,x)
  almostdone: imp(imp(imp(x,y),y),imp(z,x)) = imp(z,imp(y,x))
)";

// Canonical counterexample-model text. The files under fixtures/models
// ship this exact text, one model per file; a test pins the copies
// together byte for byte.
const char kIndependenceModels[] =
    R"(# Two-element sum-negation algebra: x+0 = 0+x = 0, 1+1 = 1, negation
# constantly 1. Satisfies M1 and falsifies M2.
model indep_A over mv
  size 2
  table plus
    0 0
    0 1
  table neg
    1 1
# Two-element sum-negation algebra: every sum is 1, negation constantly 0.
# Satisfies M2 and falsifies M1.
model indep_B over mv
  size 2
  table plus
    1 1
    1 1
  table neg
    0 0
# Two-element implication algebra: x->0 = 0 and x->1 = 1, i.e. the result
# is the second argument. Satisfies C1 and L1, falsifies C2 and L2.
model indep_C over bck
  size 2
  table imp
    0 1
    0 1
# Two-element implication algebra: every implication is 1. Satisfies C2 and
# L2, falsifies C1 and L1.
model indep_D over bck
  size 2
  table imp
    1 1
    1 1
)";

}  // namespace

const std::string& builtin_independence_text() {
    static const std::string text = kIndependenceModels;
    return text;
}

const std::string& builtin_theory_text() {
    static const std::string text = kCatalog;
    return text;
}

const TheoryFile& builtin_theories() {
    static const TheoryFile file = parse_theory(builtin_theory_text());
    return file;
}

}  // namespace eqbases
