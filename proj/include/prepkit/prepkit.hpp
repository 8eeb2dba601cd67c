#pragma once

/**
 * @file prepkit.hpp
 * @brief Umbrella header for the computational core (no JSON or CLI layer).
 */

#include "prepkit/bigint.hpp"
#include "prepkit/certificate.hpp"
#include "prepkit/error.hpp"
#include "prepkit/fp_poly.hpp"
#include "prepkit/gap_series.hpp"
#include "prepkit/h10.hpp"
#include "prepkit/hensel.hpp"
#include "prepkit/rationality.hpp"
#include "prepkit/resultant.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/series.hpp"
#include "prepkit/weierstrass.hpp"
