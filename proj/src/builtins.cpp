#include "jetcheck/builtins.hpp"

#include "jetcheck/errors.hpp"

namespace jetcheck {

namespace {

const char* kExample47 = R"corpus(# Two partial prolongations of a four-state, three-control chain,
# identified with each other through the base system. Height (3, 2).

[system N1]
states = [x1, x2, x3, x4, u1, u2, u2@1]
controls = [u1@1, u2@2, u3]
dynamics.x1 = "u1"
dynamics.x2 = "x1"
dynamics.x3 = "u2"
dynamics.x4 = "u3"
dynamics.u1 = "u1@1"
dynamics.u2 = "u2@1"
dynamics.u2@1 = "u2@2"

[system N2]
states = [x1, x2, x3, x4, u3, u3@1, u3@2]
controls = [u1, u2, u3@3]
dynamics.x1 = "u1"
dynamics.x2 = "x1"
dynamics.x3 = "u2"
dynamics.x4 = "u3"
dynamics.u3 = "u3@1"
dynamics.u3@1 = "u3@2"
dynamics.u3@2 = "u3@3"

[map phi47]
from = N1
to = N2
order = 3
state.x1 = "x1"
state.x2 = "x2"
state.x3 = "x3"
state.x4 = "x4"
state.u3 = "u3"
state.u3@1 = "u3@1"
state.u3@2 = "u3@2"
control.u1 = "u1"
control.u2 = "u2"
control.u3@3 = "u3@3"

[map psi47]
from = N2
to = N1
order = 2
state.x1 = "x1"
state.x2 = "x2"
state.x3 = "x3"
state.x4 = "x4"
state.u1 = "u1"
state.u2 = "u2"
state.u2@1 = "u2@1"
control.u1@1 = "u1@1"
control.u2@2 = "u2@2"
control.u3 = "u3"

[pair example47]
phi = phi47
psi = psi47
)corpus";

const char* kDoubleChain = R"corpus(# Two copies of a three-state, two-control system exchanged by maps of
# height (2, 2).

[system M]
states = [x1, x2, x3]
controls = [u1, u2]
dynamics.x1 = "u1"
dynamics.x2 = "u2"
dynamics.x3 = "sin(x2) + x3*u2"

[system N]
states = [y1, y2, y3]
controls = [v1, v2]
dynamics.y1 = "v1"
dynamics.y2 = "v2"
dynamics.y3 = "sin(y2) + y3*v2"

[map dc-phi]
from = M
to = N
order = 2
state.y1 = "u2@1 - x1"
state.y2 = "x2"
state.y3 = "x3"
control.v1 = "u2@2 - u1"
control.v2 = "u2"

[map dc-psi]
from = N
to = M
order = 2
state.x1 = "v2@1 - y1"
state.x2 = "y2"
state.x3 = "y3"
control.u1 = "v2@2 - v1"
control.u2 = "v2"

[pair double-chain]
phi = dc-phi
psi = dc-psi
)corpus";

const char* kDoubleChainP3 = R"corpus(# The same two systems as double-chain, exchanged at height (3, 3).

[system M]
states = [x1, x2, x3]
controls = [u1, u2]
dynamics.x1 = "u1"
dynamics.x2 = "u2"
dynamics.x3 = "sin(x2) + x3*u2"

[system N]
states = [y1, y2, y3]
controls = [v1, v2]
dynamics.y1 = "v1"
dynamics.y2 = "v2"
dynamics.y3 = "sin(y2) + y3*v2"

[map dc3-phi]
from = M
to = N
order = 3
state.y1 = "u2@2 - x1"
state.y2 = "x2"
state.y3 = "x3"
control.v1 = "u2@3 - u1"
control.v2 = "u2"

[map dc3-psi]
from = N
to = M
order = 3
state.x1 = "v2@2 - y1"
state.x2 = "y2"
state.x3 = "y3"
control.u1 = "v2@3 - v1"
control.u2 = "v2"

[pair double-chain-p3]
phi = dc3-phi
psi = dc3-psi
)corpus";

// Planar VTOL aircraft against the trivial two-chain system. The flat
// outputs are composed with a height-(1,1) self-identification of the
// trivial system so the inverse genuinely needs fourth-order jets; the
// inversion goes through th = atan2(...) and is valid on the positive
// sampling box, where u1 > e*thd^2.
const char* kPvtol = R"corpus(# Planar VTOL aircraft and the trivial two-chain system: height (0, 4).

[sampler]
box = [1/10, 2]

[constants]
e = 1/100

[system M]
states = [x, z, th, xd, zd, thd]
controls = [u1, u2]
dynamics.x = "xd"
dynamics.z = "zd"
dynamics.th = "thd"
dynamics.xd = "-u1*sin(th) + e*u2*cos(th)"
dynamics.zd = "u1*cos(th) + e*u2*sin(th) - 1"
dynamics.thd = "u2"

[system N]
states = [y1, y2]
controls = [v1, v2]
dynamics.y1 = "v1"
dynamics.y2 = "v2"

[map pvtol-phi]
from = M
to = N
order = 0
state.y1 = "zd - e*thd*sin(th) - x + e*sin(th)"
state.y2 = "z + e*cos(th)"
control.v1 = "(u1 - e*thd^2)*cos(th) - 1 - xd + e*thd*cos(th)"
control.v2 = "zd - e*thd*sin(th)"

[map pvtol-psi]
from = N
to = M
order = 4
state.x = "v2 - y1 + e*sin(atan2(v1@1 - v2@2, v2@1 + 1))"
state.z = "y2 - e*cos(atan2(v1@1 - v2@2, v2@1 + 1))"
state.th = "atan2(v1@1 - v2@2, v2@1 + 1)"
state.xd = "v2@1 - v1 + e*(((v2@2 - v1@1)*v2@2 - (v2@3 - v1@2)*(v2@1 + 1)) / ((v2@2 - v1@1)^2 + (v2@1 + 1)^2))*cos(atan2(v1@1 - v2@2, v2@1 + 1))"
state.zd = "v2 + e*(((v2@2 - v1@1)*v2@2 - (v2@3 - v1@2)*(v2@1 + 1)) / ((v2@2 - v1@1)^2 + (v2@1 + 1)^2))*sin(atan2(v1@1 - v2@2, v2@1 + 1))"
state.thd = "((v2@2 - v1@1)*v2@2 - (v2@3 - v1@2)*(v2@1 + 1)) / ((v2@2 - v1@1)^2 + (v2@1 + 1)^2)"
control.u1 = "(v1@1 - v2@2)*sin(atan2(v1@1 - v2@2, v2@1 + 1)) + (v2@1 + 1)*cos(atan2(v1@1 - v2@2, v2@1 + 1)) + e*(((v2@2 - v1@1)*v2@2 - (v2@3 - v1@2)*(v2@1 + 1)) / ((v2@2 - v1@1)^2 + (v2@1 + 1)^2))^2"
control.u2 = "(((v2@2 - v1@1)*v2@3 - (v2@4 - v1@3)*(v2@1 + 1))*((v2@2 - v1@1)^2 + (v2@1 + 1)^2) - ((v2@2 - v1@1)*v2@2 - (v2@3 - v1@2)*(v2@1 + 1))*(2*(v2@2 - v1@1)*(v2@3 - v1@2) + 2*(v2@1 + 1)*v2@2)) / ((v2@2 - v1@1)^2 + (v2@1 + 1)^2)^2"

[pair pvtol]
phi = pvtol-phi
psi = pvtol-psi
)corpus";

const char* kProlongPair = R"corpus(# A single chain and its first total prolongation: height (1, 0).

[system M]
states = [x1]
controls = [u1]
dynamics.x1 = "u1"

[system N]
states = [x1, u1]
controls = [u1@1]
dynamics.x1 = "u1"
dynamics.u1 = "u1@1"

[map pp-phi]
from = M
to = N
order = 1
state.x1 = "x1"
state.u1 = "u1"
control.u1@1 = "u1@1"

[map pp-psi]
from = N
to = M
order = 0
state.x1 = "x1"
control.u1 = "u1"

[pair prolong-pair]
phi = pp-phi
psi = pp-psi
)corpus";

const char* kSingleControl = R"corpus(# Negative fixture: single-control systems admit no non-static exchange
# of this shape. The candidate replaces the induced control component with
# a raw jet and breaks contact preservation.

[system M]
states = [x1]
controls = [u1]
dynamics.x1 = "u1"

[system N]
states = [y1]
controls = [v1]
dynamics.y1 = "v1"

[map sc-phi]
from = M
to = N
order = 1
state.y1 = "x1"
control.v1 = "u1@1"

[map sc-psi]
from = N
to = M
order = 1
state.x1 = "y1"
control.u1 = "v1@1"

[pair single-control]
phi = sc-phi
psi = sc-psi
)corpus";

}  // namespace

const std::vector<BuiltinExample>& builtin_examples() {
  static const std::vector<BuiltinExample> corpus = {
      {"example47",
       "two partial prolongations of a 4-state/3-control chain, height (3,2)",
       kExample47},
      {"double-chain",
       "3-state/2-control self-exchange through second-order jets, height (2,2)",
       kDoubleChain},
      {"double-chain-p3",
       "the double-chain construction one jet higher, height (3,3)",
       kDoubleChainP3},
      {"pvtol",
       "planar VTOL aircraft against the trivial 2-chain, height (0,4)",
       kPvtol},
      {"prolong-pair",
       "a single chain and its first total prolongation, height (1,0)",
       kProlongPair},
      {"single-control",
       "negative fixture: broken single-control candidate (contact fails)",
       kSingleControl},
  };
  return corpus;
}

const BuiltinExample* find_builtin(const std::string& name) {
  for (const auto& b : builtin_examples())
    if (b.name == name) return &b;
  return nullptr;
}

ProblemFile load_builtin(const std::string& name) {
  const BuiltinExample* b = find_builtin(name);
  if (!b) throw Error("no builtin example named '" + name + "'");
  return parse_problem_file(b->text);
}

}  // namespace jetcheck
