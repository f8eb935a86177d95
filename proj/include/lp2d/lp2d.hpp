#pragma once

// Umbrella header for the whole library.

#include "batch.hpp"
#include "core.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "serial.hpp"
