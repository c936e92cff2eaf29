#pragma once

#include "gsa/error.hpp"
#include "gsa/scalar.hpp"
#include "gsa/space.hpp"
#include "gsa/function.hpp"
#include "gsa/group.hpp"
#include "gsa/linalg.hpp"
#include "gsa/algebra.hpp"
#include "gsa/exel.hpp"
#include "gsa/partial_action.hpp"
#include "gsa/groupoid.hpp"
#include "gsa/steinberg.hpp"
#include "gsa/skew_ring.hpp"
#include "gsa/isomorphisms.hpp"
#include "gsa/ideals.hpp"
#include "gsa/partial_group_ring.hpp"
#include "gsa/graph.hpp"
#include "gsa/graph_groupoid.hpp"
#include "gsa/lpa.hpp"
#include "gsa/graph_claims.hpp"
#include "gsa/random_instances.hpp"
#include "gsa/io.hpp"
#include "gsa/claims.hpp"
