#pragma once

// Umbrella header.
#include "hrpks/artifact.hpp"
#include "hrpks/assumption_lab.hpp"
#include "hrpks/bigint.hpp"
#include "hrpks/curve_fp.hpp"
#include "hrpks/curve_q.hpp"
#include "hrpks/encoding.hpp"
#include "hrpks/error.hpp"
#include "hrpks/hierarchy.hpp"
#include "hrpks/join.hpp"
#include "hrpks/linalg_mod.hpp"
#include "hrpks/revocation.hpp"
#include "hrpks/rng.hpp"
#include "hrpks/sigma.hpp"
#include "hrpks/weierstrass.hpp"
#include "hrpks/toy_example.hpp"
