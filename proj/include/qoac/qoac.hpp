#ifndef QOAC_QOAC_HPP
#define QOAC_QOAC_HPP

#include "qoac/field.hpp"
#include "qoac/linalg.hpp"
#include "qoac/combinatorics.hpp"
#include "qoac/codes.hpp"
#include "qoac/invariants.hpp"
#include "qoac/equivalence.hpp"
#include "qoac/json_io.hpp"
#include "qoac/verify.hpp"

#endif  // QOAC_QOAC_HPP
