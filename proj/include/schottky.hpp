#ifndef SCHOTTKY_HPP_
#define SCHOTTKY_HPP_

#include "schottky/errors.hpp"
#include "schottky/moebius.hpp"
#include "schottky/gencircle.hpp"
#include "schottky/geometry.hpp"
#include "schottky/word.hpp"
#include "schottky/structure.hpp"
#include "schottky/finite_groups.hpp"
#include "schottky/quotient.hpp"
#include "schottky/symmetry_count.hpp"
#include "schottky/realize.hpp"
#include "schottky/constructions.hpp"
#include "schottky/search.hpp"
#include "schottky/spec_file.hpp"
#include "schottky/report.hpp"

#endif  // SCHOTTKY_HPP_
