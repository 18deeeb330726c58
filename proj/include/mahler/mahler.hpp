#ifndef MAHLER_MAHLER_HPP
#define MAHLER_MAHLER_HPP

// Exact computation of the Hahn-series solutions of linear Mahler equations
// a_n(z) y(z^(ell^n)) + ... + a_0(z) y(z) = 0, truncated to any finite set of
// rational exponents.

#include "mahler/epsilon.hpp"
#include "mahler/hahn_series.hpp"
#include "mahler/json_io.hpp"
#include "mahler/lattice.hpp"
#include "mahler/mahler_operator.hpp"
#include "mahler/maps.hpp"
#include "mahler/newton.hpp"
#include "mahler/parser.hpp"
#include "mahler/rational.hpp"
#include "mahler/rational_set.hpp"
#include "mahler/receptacle.hpp"
#include "mahler/rset.hpp"
#include "mahler/solver.hpp"

#endif
