#pragma once

// Small algebras used across the unit tests.

#include <string>

#include "rbsuper/structures/text_format.hpp"

namespace fixtures {

inline const char* kB11 = R"(
[algebra]
name = B_1_1
kind = pre-lie
basis = e1:even, e2:odd

[products]
e2 * e1 = e2
)";

inline const char* kB21 = R"(
[algebra]
name = B_2_1
kind = pre-lie
basis = e1:even, e2:odd
also_associative = true

[products]
e2 * e2 = 1/2 e1
)";

inline const char* kB22 = R"(
[algebra]
name = B_2_2
kind = pre-lie
basis = e1:even, e2:odd
also_associative = true

[products]
e1 * e1 = e1
e1 * e2 = e2
e2 * e1 = e2
e2 * e2 = 1/2 e1
)";

inline const char* kB32 = R"(
[algebra]
name = B_3_2
kind = pre-lie
basis = e1:even, e2:odd
also_associative = true

[products]
e1 * e1 = e1
)";

inline const char* kOsp = R"(
[algebra]
name = osp12
kind = lie
basis = e1:even, e2:even, e3:even, e4:odd, e5:odd

[products]
e1 * e2 = 2 e2
e1 * e3 = -2 e3
e2 * e3 = e1
e3 * e5 = e4
e2 * e4 = e5
e1 * e4 = -e4
e1 * e5 = e5
e5 * e4 = e1
e5 * e5 = -2 e2
e4 * e4 = 2 e3
)";

// Two osp(1,2) families, as operator sections to append to kOsp.
inline const char* kOspR30 = R"(
[operator]
name = R30
R(e1) = -a10 e2
R(e3) = a10/2 e1 + a4 e2
R(e4) = a10 e5
)";

inline const char* kOspR31 = R"(
[operator]
name = R31
R(e1) = a11 e3
R(e2) = -a11/2 e1 + a8 e3
R(e5) = a11 e4
)";

// 2x2 matrices over the rationals, all even: a = E11, b = E12, c = E21, d = E22.
inline const char* kM2 = R"(
[algebra]
name = M2
kind = associative
basis = a:even, b:even, c:even, d:even

[products]
a * a = a
a * b = b
b * c = a
b * d = b
c * a = c
c * b = d
d * c = c
d * d = d
)";

inline rbsuper::SuperAlgebra load(const char* text) { return rbsuper::parse_algebra_text(text).algebra; }

inline rbsuper::AlgebraFile load_file(const std::string& text) { return rbsuper::parse_algebra_text(text); }

}  // namespace fixtures
