#pragma once

#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/matrix.hpp"
#include "rsl/linalg.hpp"
#include "rsl/random.hpp"
#include "rsl/rankmetric.hpp"
#include "rsl/compress.hpp"
#include "rsl/liealg.hpp"
#include "rsl/verma.hpp"
#include "rsl/rolli.hpp"
