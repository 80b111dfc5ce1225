#pragma once

#include "rootiso/bench.hpp"
#include "rootiso/dyadic.hpp"
#include "rootiso/errors.hpp"
#include "rootiso/families.hpp"
#include "rootiso/interval.hpp"
#include "rootiso/newton.hpp"
#include "rootiso/oracle.hpp"
#include "rootiso/points.hpp"
#include "rootiso/poly.hpp"
#include "rootiso/polyio.hpp"
#include "rootiso/predicates.hpp"
#include "rootiso/solver.hpp"
#include "rootiso/sturm.hpp"
