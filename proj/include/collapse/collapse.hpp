#ifndef COLLAPSE_COLLAPSE_HPP_
#define COLLAPSE_COLLAPSE_HPP_

#include "braiding.hpp"
#include "character.hpp"
#include "cocycle.hpp"
#include "conjugation.hpp"
#include "criteria.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_io.hpp"
#include "modular.hpp"
#include "nichols.hpp"
#include "permutation.hpp"
#include "rack.hpp"

#endif  // COLLAPSE_COLLAPSE_HPP_
