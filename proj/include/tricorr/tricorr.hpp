#pragma once

#include "tricorr/errors.hpp"
#include "tricorr/qstate.hpp"
#include "tricorr/simplex.hpp"
#include "tricorr/bipartite.hpp"
#include "tricorr/states.hpp"
#include "tricorr/tripartite.hpp"
#include "tricorr/verify.hpp"
#include "tricorr/io.hpp"
