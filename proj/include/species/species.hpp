#pragma once

#include "species/axiom.hpp"
#include "species/calculus.hpp"
#include "species/eval.hpp"
#include "species/expr.hpp"
#include "species/instances.hpp"
#include "species/linear.hpp"
#include "species/localization.hpp"
#include "species/oracle.hpp"
#include "species/poly.hpp"
#include "species/sampling.hpp"
#include "species/series.hpp"
#include "species/tower.hpp"
