#pragma once

// Umbrella header for the bethelab engine.

#include "bethelab/bethe.hpp"
#include "bethelab/chain.hpp"
#include "bethelab/errors.hpp"
#include "bethelab/kernel.hpp"
#include "bethelab/linalg.hpp"
#include "bethelab/onshell.hpp"
#include "bethelab/partitions.hpp"
#include "bethelab/rmatrix.hpp"
#include "bethelab/scalar.hpp"
#include "bethelab/words.hpp"
