#pragma once

#include "groupoid_lab/abelian.hpp"
#include "groupoid_lab/arrow_category.hpp"
#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/functor_classes.hpp"
#include "groupoid_lab/generators.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/groupoid_limits.hpp"
#include "groupoid_lab/homotopy_limits.hpp"
#include "groupoid_lab/invariants.hpp"
#include "groupoid_lab/limits.hpp"
#include "groupoid_lab/morphism.hpp"
#include "groupoid_lab/object.hpp"
#include "groupoid_lab/serialize.hpp"
#include "groupoid_lab/suites.hpp"
