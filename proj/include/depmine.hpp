#pragma once

// Umbrella header for the depmine library.

#include "depmine/axioms.hpp"
#include "depmine/bounds.hpp"
#include "depmine/dataset.hpp"
#include "depmine/errors.hpp"
#include "depmine/format.hpp"
#include "depmine/frequency.hpp"
#include "depmine/measures.hpp"
#include "depmine/miner.hpp"
#include "depmine/oracle.hpp"
#include "depmine/search.hpp"
