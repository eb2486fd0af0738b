#pragma once

// Umbrella header for the whole library.

#include "logcert/qfield.hpp"
#include "logcert/polynomial.hpp"
#include "logcert/rational_function.hpp"
#include "logcert/parse.hpp"
#include "logcert/positivity.hpp"
#include "logcert/recurrence.hpp"
#include "logcert/bounds.hpp"
#include "logcert/criteria.hpp"
#include "logcert/seqcheck.hpp"
#include "logcert/report.hpp"
