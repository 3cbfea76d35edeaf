#pragma once

#include "lf/syntax.hpp"
#include "lf/erasure.hpp"
#include "lf/reduction.hpp"
#include "lf/quasi_canonical.hpp"
#include "lf/print.hpp"
#include "lf/diagnostic.hpp"
#include "lf/equality.hpp"
#include "lf/typecheck.hpp"
#include "lf/canonical.hpp"
#include "lf/adequacy_fol.hpp"
#include "lf/parse.hpp"
