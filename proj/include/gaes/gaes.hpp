#pragma once

#include "bench.hpp"
#include "cbc.hpp"
#include "container.hpp"
#include "gf256.hpp"
#include "hex.hpp"
#include "kat.hpp"
#include "key_schedule.hpp"
#include "parallel.hpp"
#include "sbox.hpp"
#include "selftest.hpp"
#include "state.hpp"
#include "types.hpp"
