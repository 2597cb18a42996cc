#pragma once

#include "elastica/curve.hpp"
#include "elastica/curves.hpp"
#include "elastica/discrete.hpp"
#include "elastica/elliptic.hpp"
#include "elastica/energy.hpp"
#include "elastica/exact_bounds.hpp"
#include "elastica/flow.hpp"
#include "elastica/io.hpp"
#include "elastica/networks.hpp"
#include "elastica/verify.hpp"
